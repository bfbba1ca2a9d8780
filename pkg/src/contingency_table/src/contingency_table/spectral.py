"""Diffusivity diagnostics and diagonal inflation of exchange matrices."""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from contingency_table.errors import (
    LambdaOutOfRangeError,
    NotSquareError,
    NotSymmetricError,
)
from contingency_table.table import ContingencyTable, FloatArray, is_symmetric

logger = logging.getLogger(__name__)

PSD_TOLERANCE = 1e-10
RANK_TOLERANCE = 1e-10
_LAMBDA_SEARCH_LIMIT = 1e12
_BISECTION_STEPS = 200


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalue and marginal homogeneity summary of a square table."""

    min_eigenvalue: float
    is_diffusive: bool
    is_symmetric: bool
    mh_deviation: float


class LambdaBounds(NamedTuple):
    """Largest inflation factors keeping the inflated table valid."""

    nonneg: float
    psd: float


def smallest_eigenvalue(values: ArrayLike) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    matrix = np.asarray(values, dtype=np.float64)
    return float(scipy.linalg.eigvalsh(matrix, subset_by_index=[0, 0])[0])


def _require_symmetric(table: ContingencyTable) -> None:
    if not table.is_square:
        raise NotSquareError(f"expected a square table, got {table.shape}")
    if not is_symmetric(table.values):
        raise NotSymmetricError("expected a symmetric exchange matrix")


def _inflate(table: ContingencyTable, lam: float) -> FloatArray:
    return lam * table.values + (1.0 - lam) * np.diag(table.row_margins)


def _nonneg_bound(table: ContingencyTable) -> float:
    f = table.row_margins
    gap = f - np.diag(table.values)
    moving = gap > 0
    if not np.any(moving):
        return math.inf
    return float(np.min(f[moving] / gap[moving]))


def lambda_bounds(table: ContingencyTable) -> LambdaBounds:
    """Inflation factors bounding non-negativity and positive semi-definiteness.

    The inflated table is D - lam L with D the diagonal of vertex weights
    and L the Laplacian of F, so its smallest eigenvalue does not increase
    with lam and the PSD bound can be found by bisection.

    Raises:
        NotSymmetricError: The table is not a symmetric square table.
    """
    _require_symmetric(table)

    def psd_at(lam: float) -> bool:
        return smallest_eigenvalue(_inflate(table, lam)) >= -PSD_TOLERANCE

    lo, hi = 0.0, 1.0
    while psd_at(hi):
        lo, hi = hi, 2.0 * hi
        if hi > _LAMBDA_SEARCH_LIMIT:
            return LambdaBounds(_nonneg_bound(table), math.inf)
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if psd_at(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * hi:
            break
    return LambdaBounds(_nonneg_bound(table), lo)


def diagonal_inflation(table: ContingencyTable, lam: float) -> ContingencyTable:
    """Modified flow lam F + (1 - lam) diag(f).

    Off-diagonal entries are multiplied by lam while vertex weights stay
    unchanged. Exceeding the PSD bound is allowed but logged.

    Raises:
        NotSymmetricError: The table is not symmetric.
        LambdaOutOfRangeError: lam < 1 or some diagonal entry turns negative.
    """
    _require_symmetric(table)
    bound = _nonneg_bound(table)
    if lam < 1.0 or lam > bound * (1.0 + 1e-12):
        raise LambdaOutOfRangeError(lam, bound)
    if lam == 1.0:
        return table
    values = np.maximum(_inflate(table, lam), 0.0)
    min_eig = smallest_eigenvalue(values)
    if min_eig < -PSD_TOLERANCE:
        logger.warning(
            "Inflation factor %.6g breaks positive semi-definiteness "
            "(smallest eigenvalue %.3g)",
            lam,
            min_eig,
        )
    return ContingencyTable(
        values, table.row_labels, table.col_labels, allow_zero_lines=True
    )


def spectral_report(table: ContingencyTable) -> SpectralReport:
    """Smallest eigenvalue, diffusivity and marginal inhomogeneity.

    Eigenvalues of an asymmetric table are taken on (F + F') / 2; such a
    table is never reported as diffusive.
    """
    if not table.is_square:
        raise NotSquareError(f"expected a square table, got {table.shape}")
    values = table.values
    symmetric = is_symmetric(values)
    matrix = values if symmetric else (values + values.T) / 2.0
    min_eig = smallest_eigenvalue(matrix)
    return SpectralReport(
        min_eigenvalue=min_eig,
        is_diffusive=symmetric and min_eig >= -PSD_TOLERANCE,
        is_symmetric=symmetric,
        mh_deviation=float(np.max(np.abs(table.row_margins - table.col_margins))),
    )


def rank_estimate(table: ContingencyTable) -> int:
    """Number of singular values above RANK_TOLERANCE times the largest."""
    singular = np.linalg.svd(table.values, compute_uv=False)
    return int(np.sum(singular > RANK_TOLERANCE * singular.max()))


__all__ = [
    "PSD_TOLERANCE",
    "LambdaBounds",
    "SpectralReport",
    "diagonal_inflation",
    "lambda_bounds",
    "rank_estimate",
    "smallest_eigenvalue",
    "spectral_report",
]
