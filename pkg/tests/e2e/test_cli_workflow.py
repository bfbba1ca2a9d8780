"""End-to-end tests for the latentem command line."""

import json
import logging
from collections.abc import Generator
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from contingency_table import ContingencyTable
from latentem.cli import EXIT_FAILURE, main


def _write_edge_list(path: Path, table: ContingencyTable) -> Path:
    labels = table.row_labels
    lines = [
        f"{labels[i]} {labels[j]} {float(table.values[i, j])!r}"
        for i, j in zip(*np.nonzero(table.values), strict=True)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.mark.e2e
class TestCliWorkflow:
    """End-to-end tests for complete command-line workflows."""

    @pytest.fixture(autouse=True)
    def no_dotenv(self) -> Generator[None, None, None]:
        """Ignore any .env file of the working directory."""
        with patch("latentem.config.load_dotenv"):
            yield

    def test_fit_network_recovers_blocks(
        self, tmp_path: Path, two_block_network: tuple[ContingencyTable, np.ndarray]
    ) -> None:
        """Test fit-network on an edge list of two disconnected cliques."""
        table, blocks = two_block_network
        edges = _write_edge_list(tmp_path / "graph.txt", table)
        out = tmp_path / "out"

        code = main(
            [
                "fit-network",
                "--input", str(edges),
                "--format", "edgelist",
                "--m", "2",
                "--restarts", "10",
                "--seed", "0",
                "--out", str(out),
            ]
        )

        assert code == 0
        report = json.loads((out / "report.json").read_text())
        groups = np.array([report["hard_assignments"][label] for label in table.row_labels])
        assert len(set(groups[blocks == 0])) == 1
        assert len(set(groups[blocks == 1])) == 1
        assert groups[0] != groups[-1]
        assert report["best_kl"] < 1e-8
        assert len(list((out / "traces").glob("restart_*.jsonl"))) == 10

    def test_fit_latent_from_csv(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test fit-latent on a labelled CSV table."""
        path = tmp_path / "table.csv"
        path.write_text(",x,y,z\na,10,2,1\nb,2,10,1\nc,1,1,8\n", encoding="utf-8")
        out = tmp_path / "out"

        code = main(
            ["fit-latent", "--input", str(path), "--m", "3", "--restarts", "3",
             "--max-iter", "500", "--out", str(out)]
        )

        assert code == 0
        assert "fit-latent: best restart" in capsys.readouterr().out
        report = json.loads((out / "report.json").read_text())
        assert set(report["hard_assignments"]) == {"a", "b", "c"}
        assert set(report["column_assignments"]) == {"x", "y", "z"}
        assert json.loads((out / "model.json").read_text())["kind"] == "latent"

    def test_fit_network_co_on_text(self, tmp_path: Path) -> None:
        """Test the MH variant with periodic projection on a text file."""
        path = tmp_path / "book.txt"
        path.write_text("Là où la mer s'étend, le vent se lève. " * 30, encoding="utf-8")
        out = tmp_path / "out"

        code = main(
            ["fit-network-co", "--input", str(path), "--format", "text", "--m", "2",
             "--variant", "mh", "--mh-projection", "5", "--restarts", "2",
             "--max-iter", "200", "--out", str(out)]
        )

        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["diagnostics"]["variant"] == "marginally_homogeneous"
        first = (out / "traces" / "restart_000.jsonl").read_text().splitlines()[0]
        assert "mh_deviation" in json.loads(first)

    def test_inspect_prints_diagnostics(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test the inspect command on the 2 x 2 exchange matrix."""
        path = tmp_path / "t.csv"
        path.write_text("45,5\n5,45\n", encoding="utf-8")

        assert main(["inspect", "--input", str(path)]) == 0

        info = json.loads(capsys.readouterr().out)
        assert info["lambda_bounds"]["nonneg"] == pytest.approx(10.0)
        assert info["lambda_bounds"]["psd"] == pytest.approx(5.0, abs=1e-6)
        assert info["spectral"]["is_diffusive"]

    def test_invalid_input_exits_with_error(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that model errors are logged and give a failure status."""
        path = tmp_path / "bad.csv"
        path.write_text("1,0\n1,0\n", encoding="utf-8")

        with caplog.at_level(logging.ERROR):
            code = main(["fit-latent", "--input", str(path), "--m", "2", "--out", str(tmp_path)])

        assert code == EXIT_FAILURE
        assert "bad.csv" in caplog.text

    def test_missing_file_exits_with_error(self, tmp_path: Path) -> None:
        """Test that unreadable inputs give a failure status."""
        code = main(["inspect", "--input", str(tmp_path / "absent.csv")])

        assert code == EXIT_FAILURE

    def test_invalid_lambda(self, tmp_path: Path) -> None:
        """Test that configuration errors give a failure status."""
        path = tmp_path / "t.csv"
        path.write_text("1,1\n1,1\n", encoding="utf-8")

        code = main(
            ["fit-network", "--input", str(path), "--m", "2", "--lambda", "0.5",
             "--out", str(tmp_path / "out")]
        )

        assert code == EXIT_FAILURE

    def test_usage_error(self) -> None:
        """Test that argparse rejects a missing group count."""
        with pytest.raises(SystemExit) as excinfo:
            main(["fit-latent", "--input", "x.csv", "--out", "o"])

        assert excinfo.value.code == 2
