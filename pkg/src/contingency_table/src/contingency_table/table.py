"""Normalized contingency tables."""

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from contingency_table.errors import (
    LatentModelError,
    NegativeEntryError,
    NotSquareError,
    ZeroLineError,
    ZeroTableError,
)

FloatArray = NDArray[np.float64]

# Tables summing to one within this slack are left unscaled.
TOTAL_TOLERANCE = 1e-13
SYMMETRY_TOLERANCE = 1e-12


class ContingencyTable:
    """Immutable n x p table of relative frequencies summing to one.

    A square table doubles as the weighted adjacency matrix of a directed
    network; its row and column margins are then the out- and in-weights.
    """

    __slots__ = ("_col_labels", "_col_margins", "_row_labels", "_row_margins", "_values")

    def __init__(
        self,
        values: ArrayLike,
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
        *,
        allow_zero_lines: bool = False,
    ) -> None:
        """Validate and normalize a non-negative matrix.

        Args:
            values: Raw counts or frequencies, any positive scale.
            row_labels: Optional identifiers of the rows.
            col_labels: Optional identifiers of the columns.
            allow_zero_lines: Accept rows or columns summing to zero, as
                bigram tables of a single sequence may have.

        Raises:
            NegativeEntryError: Some entry is negative.
            ZeroTableError: No entry is positive.
            ZeroLineError: A row or column is empty and not allowed to be.
        """
        array = np.array(values, dtype=np.float64)
        if array.ndim != 2 or 0 in array.shape:
            raise LatentModelError(f"expected a non-empty 2-D table, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise LatentModelError("table contains non-finite entries")
        if np.any(array < 0):
            i, k = np.argwhere(array < 0)[0]
            raise NegativeEntryError(f"entry ({i}, {k}) is negative: {array[i, k]}")
        total = float(array.sum())
        if total <= 0:
            raise ZeroTableError("table has no positive entry")
        if abs(total - 1.0) > TOTAL_TOLERANCE:
            array = array / total

        n, p = array.shape
        self._row_labels = _labels(row_labels, n, "row")
        self._col_labels = _labels(col_labels, p, "column")
        self._row_margins = array.sum(axis=1)
        self._col_margins = array.sum(axis=0)
        if not allow_zero_lines:
            _check_lines(self._row_margins, "row", self._row_labels)
            _check_lines(self._col_margins, "column", self._col_labels)

        for part in (array, self._row_margins, self._col_margins):
            part.setflags(write=False)
        self._values = array

    @property
    def values(self) -> FloatArray:
        """Read-only matrix of relative frequencies F."""
        return self._values

    @property
    def row_margins(self) -> FloatArray:
        """Row sums F(i, .)."""
        return self._row_margins

    @property
    def col_margins(self) -> FloatArray:
        """Column sums F(., k)."""
        return self._col_margins

    @property
    def row_labels(self) -> tuple[str, ...]:
        """Identifiers of the rows."""
        return self._row_labels

    @property
    def col_labels(self) -> tuple[str, ...]:
        """Identifiers of the columns."""
        return self._col_labels

    @property
    def shape(self) -> tuple[int, int]:
        """Number of rows and columns."""
        n, p = self._values.shape
        return n, p

    @property
    def is_square(self) -> bool:
        """Whether the table has as many rows as columns."""
        n, p = self.shape
        return n == p

    def transpose(self) -> "ContingencyTable":
        """Table with rows and columns exchanged."""
        return ContingencyTable(
            self._values.T,
            self._col_labels,
            self._row_labels,
            allow_zero_lines=True,
        )

    def __repr__(self) -> str:
        n, p = self.shape
        return f"ContingencyTable(shape=({n}, {p}))"


def _labels(labels: Sequence[str] | None, size: int, axis: str) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(size))
    result = tuple(str(label) for label in labels)
    if len(result) != size:
        raise LatentModelError(f"expected {size} {axis} labels, got {len(result)}")
    return result


def _check_lines(margins: FloatArray, axis: str, labels: tuple[str, ...]) -> None:
    empty = np.flatnonzero(margins <= 0)
    if empty.size:
        index = int(empty[0])
        raise ZeroLineError(axis, index, labels[index])


def normalize(
    raw_counts: ArrayLike,
    row_labels: Sequence[str] | None = None,
    col_labels: Sequence[str] | None = None,
    *,
    allow_zero_lines: bool = False,
) -> ContingencyTable:
    """Turn counts n(i, k) into relative frequencies n(i, k) / n(., .).

    Args:
        raw_counts: Non-negative n x p matrix with some positive entry.
        row_labels: Optional row identifiers.
        col_labels: Optional column identifiers.
        allow_zero_lines: Accept empty rows or columns.

    Returns:
        ContingencyTable: Table proportional to the input and summing to one.
    """
    return ContingencyTable(
        raw_counts, row_labels, col_labels, allow_zero_lines=allow_zero_lines
    )


def is_symmetric(values: ArrayLike, tol: float = SYMMETRY_TOLERANCE) -> bool:
    """Whether a matrix is square and equal to its transpose within tol."""
    array = np.asarray(values, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        return False
    return bool(np.max(np.abs(array - array.T)) <= tol)


def symmetrize(table: ContingencyTable) -> ContingencyTable:
    """Exchange matrix (F + F') / 2 of a square table.

    Raises:
        NotSquareError: The table is not square.
    """
    if not table.is_square:
        raise NotSquareError(f"cannot symmetrize a {table.shape} table")
    values = table.values
    return ContingencyTable(
        (values + values.T) / 2.0,
        table.row_labels,
        table.row_labels,
        allow_zero_lines=True,
    )


__all__ = [
    "SYMMETRY_TOLERANCE",
    "ContingencyTable",
    "FloatArray",
    "is_symmetric",
    "normalize",
    "symmetrize",
]
