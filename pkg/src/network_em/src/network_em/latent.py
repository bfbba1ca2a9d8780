"""Membership form of the latent network model P_ij = f_i f_j sum_g z_ig z_jg / rho_g."""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from contingency_table import (
    ContingencyTable,
    FloatArray,
    LatentModelError,
    MarginMismatchError,
    NotSquareError,
    NotSymmetricError,
    diagonal_inflation,
    is_symmetric,
    kl_divergence,
    symmetrize,
)
from em_model import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    SMOOTHING,
    FitTrace,
    data_model_ratio,
    indicator,
    normalize_rows,
    random_partition,
    run_em,
)

logger = logging.getLogger(__name__)

MEMBERSHIP_TOLERANCE = 1e-12


def _safe_divide(numerator: FloatArray, denominator: FloatArray) -> FloatArray:
    return np.divide(
        numerator,
        denominator,
        out=np.zeros(np.broadcast(numerator, denominator).shape),
        where=denominator > 0,
    )


@dataclass(frozen=True, eq=False)
class NetworkLatentModel:
    """Memberships Z = p(i | g) per vertex, group weights rho and vertex weights f.

    Rows of Z are probability vectors over groups.
    """

    Z: FloatArray
    rho: FloatArray
    f: FloatArray

    def __post_init__(self) -> None:
        z = np.array(self.Z, dtype=np.float64)
        rho = np.array(self.rho, dtype=np.float64)
        f = np.array(self.f, dtype=np.float64)
        if z.ndim != 2 or f.shape != (z.shape[0],) or rho.shape != (z.shape[1],):
            raise LatentModelError(
                f"inconsistent shapes: Z {z.shape}, rho {rho.shape}, f {f.shape}"
            )
        if np.any(z < 0) or np.any(f < 0):
            raise LatentModelError("memberships and vertex weights must be non-negative")
        if np.any(np.abs(z.sum(axis=1) - 1.0) > MEMBERSHIP_TOLERANCE):
            raise LatentModelError("every row of Z must sum to one")
        if np.any(np.abs(rho - f @ z) > MEMBERSHIP_TOLERANCE) or abs(rho.sum() - 1.0) > MEMBERSHIP_TOLERANCE:
            raise LatentModelError("rho must equal f'Z and sum to one")
        for array in (z, rho, f):
            array.setflags(write=False)
        object.__setattr__(self, "Z", z)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "f", f)

    @classmethod
    def from_memberships(cls, memberships: ArrayLike, f: ArrayLike) -> "NetworkLatentModel":
        """Model with rho_g = sum_i f_i z_ig."""
        z = np.asarray(memberships, dtype=np.float64)
        weights = np.asarray(f, dtype=np.float64)
        return cls(Z=z, rho=weights @ z, f=weights)

    @property
    def m(self) -> int:
        return int(self.rho.size)

    def reconstruct(self) -> FloatArray:
        weighted = self.f[:, None] * self.Z
        return _safe_divide(weighted, self.rho) @ weighted.T

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "network-latent",
            "Z": self.Z.T.tolist(),
            "rho": self.rho.tolist(),
            "f": self.f.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NetworkLatentModel":
        return cls(
            Z=np.asarray(data["Z"], dtype=np.float64).T,
            rho=np.asarray(data["rho"], dtype=np.float64),
            f=np.asarray(data["f"], dtype=np.float64),
        )


def reconstruct_latent(model: NetworkLatentModel) -> FloatArray:
    """Symmetric, positive semi-definite model table P."""
    return model.reconstruct()


def random_latent_init(
    table: ContingencyTable,
    m: int,
    rng: np.random.Generator,
    epsilon: float = SMOOTHING,
) -> NetworkLatentModel:
    """Random hard assignment of vertices to m groups, smoothed by epsilon."""
    if m < 1:
        raise LatentModelError(f"number of groups must be at least 1, got {m}")
    n = table.shape[0]
    z = normalize_rows(indicator(random_partition(rng, n, m), m) + epsilon)
    return NetworkLatentModel.from_memberships(z, table.row_margins)


def _check_network(table: ContingencyTable, model: NetworkLatentModel) -> None:
    if not is_symmetric(table.values):
        raise NotSymmetricError("network latent model needs a symmetric table")
    if table.shape[0] != model.f.size:
        raise LatentModelError(f"table has {table.shape[0]} vertices, model {model.f.size}")
    gap = float(np.max(np.abs(table.row_margins - model.f)))
    if gap > MEMBERSHIP_TOLERANCE:
        raise MarginMismatchError(f"vertex weights differ from table margins by {gap:.3g}")


def network_em_step(
    table: ContingencyTable, model: NetworkLatentModel
) -> NetworkLatentModel:
    """z_ig <- z_ig sum_j (F_ij / P_ij) f_j z_jg / rho_g, then rho_g = sum_i f_i z_ig.

    Raises:
        NotSymmetricError: F is not symmetric.
        MarginMismatchError: model.f differs from the margins of F.
        SupportMismatchError: P vanishes where F is positive.
    """
    _check_network(table, model)
    ratio = data_model_ratio(table, model.reconstruct())
    weighted = model.f[:, None] * model.Z
    z = normalize_rows(model.Z * _safe_divide(ratio @ weighted, model.rho))
    return NetworkLatentModel.from_memberships(z, model.f)


def prepare_network_table(table: ContingencyTable, lam: float = 1.0) -> ContingencyTable:
    """Symmetrize an oriented table (with a warning) and apply diagonal inflation."""
    if not table.is_square:
        raise NotSquareError(f"network tables must be square, got {table.shape}")
    if not is_symmetric(table.values):
        logger.warning("Asymmetric network table symmetrized as (F + F') / 2")
        table = symmetrize(table)
    return diagonal_inflation(table, lam)


def fit_network(
    table: ContingencyTable,
    m: int,
    lam: float = 1.0,
    init: NetworkLatentModel | None = None,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int | None = None,
) -> tuple[NetworkLatentModel, FitTrace]:
    """Soft clustering of an unoriented weighted network.

    Args:
        table: Square table; symmetrized first when asymmetric.
        m: Number of groups.
        lam: Diagonal inflation factor, 1 for none.
        init: Starting memberships; random hard assignment when omitted.
        max_iter: Maximal number of EM cycles.
        tol: Relative change of K below which iteration stops.
        seed: Seed of the random initialization.

    Raises:
        LambdaOutOfRangeError: lam breaks non-negativity of the inflated table.
    """
    fitted = prepare_network_table(table, lam)
    if init is None:
        init = random_latent_init(fitted, m, np.random.default_rng(seed))
    if init.m != m:
        raise LatentModelError(f"initial model has {init.m} groups, expected {m}")
    _check_network(fitted, init)

    def step(model: NetworkLatentModel) -> tuple[NetworkLatentModel, float]:
        updated = network_em_step(fitted, model)
        return updated, kl_divergence(fitted, updated.reconstruct())

    initial_kl = kl_divergence(fitted, init.reconstruct())
    return run_em(step, init, initial_kl, max_iter=max_iter, tol=tol)


__all__ = [
    "NetworkLatentModel",
    "fit_network",
    "network_em_step",
    "prepare_network_table",
    "random_latent_init",
    "reconstruct_latent",
]
