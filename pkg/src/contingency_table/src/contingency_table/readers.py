"""Readers for dense CSV tables and weighted edge lists."""

import csv
from pathlib import Path

import numpy as np

from contingency_table.errors import LatentModelError
from contingency_table.table import ContingencyTable


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_dense_csv(
    path: str | Path, *, allow_zero_lines: bool = False
) -> ContingencyTable:
    """Read a dense table with an optional header row and label column.

    The first row is a header when one of its cells after the first is not
    a number; the first column holds labels when one of its data cells is
    not a number. A header one cell shorter than the data rows labels the
    columns only.

    Args:
        path: CSV file of non-negative numbers.
        allow_zero_lines: Accept empty rows or columns.

    Returns:
        ContingencyTable: The normalized table.
    """
    with Path(path).open(newline="", encoding="utf-8") as handle:
        rows = [
            [cell.strip() for cell in row]
            for row in csv.reader(handle)
            if any(cell.strip() for cell in row)
        ]
    if not rows:
        raise LatentModelError(f"{path}: no data rows")

    first = rows[0]
    header: list[str] | None = None
    if not all(_is_number(cell) for cell in (first[1:] or first)):
        header = first
        rows = rows[1:]
    if not rows:
        raise LatentModelError(f"{path}: header without data rows")

    has_row_labels = any(not _is_number(row[0]) for row in rows)
    row_labels = [row[0] for row in rows] if has_row_labels else None
    cells = [row[1:] if has_row_labels else row for row in rows]

    width = len(cells[0])
    data: list[list[float]] = []
    for index, row in enumerate(cells):
        if len(row) != width:
            raise LatentModelError(
                f"{path}: data row {index} has {len(row)} cells, expected {width}"
            )
        try:
            data.append([float(cell) for cell in row])
        except ValueError as exc:
            raise LatentModelError(f"{path}: data row {index}: {exc}") from exc

    col_labels = None
    if header is not None:
        col_labels = header[1:] if len(header) == width + 1 else header
        if len(col_labels) != width:
            raise LatentModelError(
                f"{path}: header has {len(header)} cells for {width} columns"
            )
    return ContingencyTable(
        data, row_labels, col_labels, allow_zero_lines=allow_zero_lines
    )


def read_edge_list(
    path: str | Path, *, allow_zero_lines: bool = False
) -> ContingencyTable:
    """Aggregate `src dst weight` lines into a square table.

    Vertices are indexed in order of first appearance; repeated pairs add
    up, absent pairs are zero and a missing weight counts as one. Blank
    lines and lines starting with `#` are skipped.
    """
    index: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) not in (2, 3):
            raise LatentModelError(f"{path}:{lineno}: expected 'src dst [weight]'")
        try:
            weight = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise LatentModelError(f"{path}:{lineno}: bad weight {parts[2]!r}") from exc
        src = index.setdefault(parts[0], len(index))
        dst = index.setdefault(parts[1], len(index))
        weights[src, dst] = weights.get((src, dst), 0.0) + weight
    if not index:
        raise LatentModelError(f"{path}: no edges")

    counts = np.zeros((len(index), len(index)))
    for (src, dst), weight in weights.items():
        counts[src, dst] = weight
    labels = list(index)
    return ContingencyTable(counts, labels, labels, allow_zero_lines=allow_zero_lines)


__all__ = ["read_dense_csv", "read_edge_list"]
