"""Array helpers shared by the multiplicative EM updates."""

import numpy as np
from numpy.typing import NDArray

from contingency_table import ContingencyTable, FloatArray, SupportMismatchError


def data_model_ratio(table: ContingencyTable, model: FloatArray) -> FloatArray:
    """F / P on the support of F and 0 elsewhere.

    Raises:
        SupportMismatchError: P vanishes where F is positive.
    """
    observed = table.values
    support = observed > 0
    if np.any(model[support] <= 0):
        raise SupportMismatchError("model assigns zero probability to an observed cell")
    ratio = np.zeros_like(observed)
    ratio[support] = observed[support] / model[support]
    return ratio


def normalize_columns(matrix: FloatArray) -> FloatArray:
    """Rescale columns to sum to one; empty columns become uniform."""
    sums = matrix.sum(axis=0)
    uniform = np.full_like(matrix, 1.0 / matrix.shape[0])
    return np.divide(matrix, sums, out=uniform, where=sums > 0)


def normalize_rows(matrix: FloatArray) -> FloatArray:
    """Rescale rows to sum to one; empty rows become uniform."""
    return normalize_columns(matrix.T).T


def smooth_columns(matrix: FloatArray, epsilon: float) -> FloatArray:
    """Add epsilon everywhere and renormalize the columns."""
    return normalize_columns(matrix + epsilon)


def random_partition(rng: np.random.Generator, size: int, groups: int) -> NDArray[np.intp]:
    """Assign each of size items to one of groups uniformly at random."""
    return rng.integers(groups, size=size).astype(np.intp)


def indicator(partition: NDArray[np.intp], groups: int) -> FloatArray:
    """size x groups 0/1 matrix of a hard partition."""
    matrix = np.zeros((partition.size, groups))
    matrix[np.arange(partition.size), partition] = 1.0
    return matrix


def hard_assignments(memberships: FloatArray) -> NDArray[np.intp]:
    """Group of largest membership per row, lowest index on ties."""
    return np.argmax(memberships, axis=1).astype(np.intp)


__all__ = [
    "data_model_ratio",
    "hard_assignments",
    "indicator",
    "normalize_columns",
    "normalize_rows",
    "random_partition",
    "smooth_columns",
]
