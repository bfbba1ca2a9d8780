"""Integration tests for reading tables from disk."""

from pathlib import Path

import numpy as np
import pytest

from contingency_table import LatentModelError, ZeroLineError, read_dense_csv, read_edge_list


class TestDenseCsv:
    """Test dense CSV tables with optional labels."""

    def test_header_and_label_column(self, tmp_path: Path) -> None:
        """Test a table with corner cell, column header and row labels."""
        path = tmp_path / "table.csv"
        path.write_text(",x,y\na,4,1\nb,1,4\n", encoding="utf-8")

        table = read_dense_csv(path)

        assert table.row_labels == ("a", "b")
        assert table.col_labels == ("x", "y")
        np.testing.assert_allclose(table.values, [[0.4, 0.1], [0.1, 0.4]])

    def test_header_without_corner_cell(self, tmp_path: Path) -> None:
        """Test a header one cell shorter than the labelled rows."""
        path = tmp_path / "table.csv"
        path.write_text("x,y\na,1,3\nb,2,2\n", encoding="utf-8")

        table = read_dense_csv(path)

        assert table.col_labels == ("x", "y")
        assert table.row_labels == ("a", "b")

    def test_bare_numbers(self, tmp_path: Path) -> None:
        """Test a table without any labels."""
        path = tmp_path / "table.csv"
        path.write_text("1,2,3\n4,5,6\n\n", encoding="utf-8")

        table = read_dense_csv(path)

        assert table.shape == (2, 3)
        assert table.row_labels == ("0", "1")
        assert table.values.sum() == pytest.approx(1.0)

    def test_ragged_rows(self, tmp_path: Path) -> None:
        """Test that rows must have the same width."""
        path = tmp_path / "table.csv"
        path.write_text("1,2\n3\n", encoding="utf-8")

        with pytest.raises(LatentModelError, match="row 1"):
            read_dense_csv(path)

    def test_empty_row_rejected(self, tmp_path: Path) -> None:
        """Test that dense tables may not have empty lines of mass."""
        path = tmp_path / "table.csv"
        path.write_text("a,1,2\nb,0,0\n", encoding="utf-8")

        with pytest.raises(ZeroLineError, match="'b'"):
            read_dense_csv(path)

    def test_empty_file(self, tmp_path: Path) -> None:
        """Test that a file without data is rejected."""
        path = tmp_path / "table.csv"
        path.write_text("\n", encoding="utf-8")

        with pytest.raises(LatentModelError, match="no data rows"):
            read_dense_csv(path)


class TestEdgeList:
    """Test weighted edge lists."""

    def test_aggregation(self, tmp_path: Path) -> None:
        """Test first-appearance order, repeated pairs and default weights."""
        path = tmp_path / "graph.txt"
        path.write_text(
            "# flows\nb a 2\na b 1\n\nb a 1\na a\n", encoding="utf-8"
        )

        table = read_edge_list(path)

        assert table.row_labels == ("b", "a")
        np.testing.assert_allclose(table.values * 5, [[0.0, 3.0], [1.0, 1.0]])

    def test_sink_vertex_needs_permission(self, tmp_path: Path) -> None:
        """Test a vertex without outgoing edges."""
        path = tmp_path / "graph.txt"
        path.write_text("a b 1\n", encoding="utf-8")

        with pytest.raises(ZeroLineError):
            read_edge_list(path)
        assert read_edge_list(path, allow_zero_lines=True).shape == (2, 2)

    def test_malformed_line(self, tmp_path: Path) -> None:
        """Test that lines need two or three fields."""
        path = tmp_path / "graph.txt"
        path.write_text("a b 1 extra\n", encoding="utf-8")

        with pytest.raises(LatentModelError, match=":1:"):
            read_edge_list(path)

    def test_bad_weight(self, tmp_path: Path) -> None:
        """Test that weights must be numbers."""
        path = tmp_path / "graph.txt"
        path.write_text("a b heavy\n", encoding="utf-8")

        with pytest.raises(LatentModelError, match="bad weight"):
            read_edge_list(path)
