"""Memberships from emissions for marginally homogeneous tables."""

from dataclasses import dataclass

import numpy as np
import scipy.optimize
from numpy.typing import ArrayLike

from contingency_table import FloatArray, InfeasibleWeightsError, LatentModelError

INFEASIBLE_RESIDUAL = 1e-3
_TIE_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class MembershipRecovery:
    """Group weights rho solving A rho = f, memberships Z and the residual."""

    rho: FloatArray
    Z: FloatArray
    residual: float
    non_unique: bool = False


def mh_membership_recovery(emissions: ArrayLike, f: ArrayLike) -> MembershipRecovery:
    """Solve sum_g rho_g a_i^g = f_i for rho on the simplex, then z_ig = rho_g a_i^g / f_i.

    The system is solved by non-negative least squares with the constraint
    sum rho = 1 appended as an extra equation. When A is rank deficient the
    uniform rho is preferred if it fits as well.

    Raises:
        InfeasibleWeightsError: max_i |(A rho)_i - f_i| exceeds INFEASIBLE_RESIDUAL.
    """
    a = np.asarray(emissions, dtype=np.float64)
    freq = np.asarray(f, dtype=np.float64)
    if a.ndim != 2 or freq.shape != (a.shape[0],):
        raise LatentModelError(f"emissions {a.shape} and frequencies {freq.shape} disagree")
    if np.any(freq <= 0):
        raise LatentModelError("letter frequencies must be positive")
    m = a.shape[1]

    system = np.vstack([a, np.ones((1, m))])
    rho, _ = scipy.optimize.nnls(system, np.append(freq, 1.0))

    def residual(weights: FloatArray) -> float:
        return float(np.max(np.abs(a @ weights - freq)))

    non_unique = bool(np.linalg.matrix_rank(a) < m)
    if non_unique:
        uniform = np.full(m, 1.0 / m)
        if residual(uniform) <= residual(rho) + _TIE_SLACK:
            rho = uniform
    if rho.sum() <= 0:
        raise InfeasibleWeightsError(residual(rho), INFEASIBLE_RESIDUAL)
    rho = rho / rho.sum()

    error = residual(rho)
    if error > INFEASIBLE_RESIDUAL:
        raise InfeasibleWeightsError(error, INFEASIBLE_RESIDUAL)
    return MembershipRecovery(
        rho=rho,
        Z=a * rho / freq[:, None],
        residual=error,
        non_unique=non_unique,
    )


__all__ = ["INFEASIBLE_RESIDUAL", "MembershipRecovery", "mh_membership_recovery"]
