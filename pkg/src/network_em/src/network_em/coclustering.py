"""Shared-emission co-latent network models P_ij = sum_uv c_uv a_i^u a_j^v."""

import itertools
import logging
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

import numpy as np

from colatent_em import CoLatentModel, LatentMarkovSummary, latent_markov_summary
from contingency_table import (
    ContingencyTable,
    FloatArray,
    LatentModelError,
    NotSquareError,
    SymmetryViolationError,
    is_symmetric,
    kl_divergence,
)
from em_model import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DEGENERATE_WEIGHT,
    SMOOTHING,
    FitTrace,
    data_model_ratio,
    indicator,
    normalize_columns,
    normalize_rows,
    random_partition,
    run_em,
    smooth_columns,
)
from latent_em import check_distribution

logger = logging.getLogger(__name__)

MH_TOLERANCE = 1e-10
_PROJECTION_ROUNDS = 1000


class Variant(StrEnum):
    GENERAL = "general"
    SYMMETRIC = "symmetric"
    MARGINALLY_HOMOGENEOUS = "marginally_homogeneous"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        """Accept the enum values and the short name `mh`."""
        if text == "mh":
            return cls.MARGINALLY_HOMOGENEOUS
        return cls(text)


def mh_deviation(joint: FloatArray) -> float:
    """max_u |c_u. - c_.u|."""
    return float(np.max(np.abs(joint.sum(axis=1) - joint.sum(axis=0))))


@dataclass(frozen=True, eq=False)
class NetworkCoModel:
    """Joint latent distribution C (m x m) and shared emissions A (n x m).

    The symmetric variant requires C = C'. Marginal homogeneity of C is
    monitored rather than enforced.
    """

    C: FloatArray
    A: FloatArray
    variant: Variant = Variant.GENERAL

    def __post_init__(self) -> None:
        c = np.array(self.C, dtype=np.float64)
        a = np.array(self.A, dtype=np.float64)
        if c.ndim != 2 or a.ndim != 2 or not c.shape[0] == c.shape[1] == a.shape[1]:
            raise LatentModelError(f"C {c.shape} and A {a.shape} disagree on m")
        if np.any(c < 0) or np.any(a < 0):
            raise LatentModelError("C and A must be non-negative")
        check_distribution(c, "C")
        check_distribution(a, "columns of A", axis=0)
        variant = Variant(self.variant)
        if variant is Variant.SYMMETRIC and not is_symmetric(c):
            raise SymmetryViolationError("symmetric variant needs a symmetric C")
        for array in (c, a):
            array.setflags(write=False)
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "variant", variant)

    @property
    def m(self) -> int:
        return int(self.C.shape[0])

    @property
    def mh_deviation(self) -> float:
        return mh_deviation(self.C)

    def reconstruct(self) -> FloatArray:
        return self.A @ self.C @ self.A.T

    def as_colatent(self) -> CoLatentModel:
        """The same model with row and column emissions both equal to A."""
        return CoLatentModel(C=self.C, A=self.A, B=self.A)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "network-co",
            "variant": self.variant.value,
            "C": self.C.tolist(),
            "A": self.A.T.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NetworkCoModel":
        return cls(
            C=np.asarray(data["C"], dtype=np.float64),
            A=np.asarray(data["A"], dtype=np.float64).T,
            variant=Variant(data["variant"]),
        )


def _check_table(table: ContingencyTable, variant: Variant) -> None:
    if not table.is_square:
        raise NotSquareError(f"network tables must be square, got {table.shape}")
    if variant is Variant.SYMMETRIC and not is_symmetric(table.values):
        raise SymmetryViolationError("symmetric variant needs a symmetric table")


def random_co_init(
    table: ContingencyTable,
    m: int,
    variant: Variant = Variant.GENERAL,
    rng: np.random.Generator | None = None,
    epsilon: float = SMOOTHING,
) -> NetworkCoModel:
    """Random hard vertex groups; C from the induced blocks, all smoothed."""
    if m < 1:
        raise LatentModelError(f"number of groups must be at least 1, got {m}")
    rng = rng if rng is not None else np.random.default_rng()
    n = table.shape[0]
    groups = indicator(random_partition(rng, n, m), m)
    weights = (table.row_margins + table.col_margins) / 2.0
    blocks = groups.T @ table.values @ groups + epsilon
    if variant is Variant.SYMMETRIC:
        blocks = (blocks + blocks.T) / 2.0
    return NetworkCoModel(
        C=blocks / blocks.sum(),
        A=smooth_columns(normalize_columns(groups * weights[:, None]), epsilon),
        variant=variant,
    )


def project_marginal_homogeneity(
    joint: FloatArray, tol: float = MH_TOLERANCE
) -> FloatArray:
    """Scale rows and columns of C alternately to their average margins."""
    target = (joint.sum(axis=1) + joint.sum(axis=0)) / 2.0
    projected = joint.copy()
    for _ in range(_PROJECTION_ROUNDS):
        rows = projected.sum(axis=1)
        projected *= np.divide(target, rows, out=np.ones_like(rows), where=rows > 0)[:, None]
        cols = projected.sum(axis=0)
        projected *= np.divide(target, cols, out=np.ones_like(cols), where=cols > 0)[None, :]
        if mh_deviation(projected) <= tol:
            break
    else:
        logger.warning(
            "Marginal homogeneity projection stopped at deviation %.3g",
            mh_deviation(projected),
        )
    return projected / projected.sum()


def network_co_em_step(
    table: ContingencyTable, model: NetworkCoModel
) -> NetworkCoModel:
    """One EM cycle under the common emission constraint b = a.

    c_uv <- c_uv sum_ij (F_ij / P_ij) a_i^u a_j^v; a_i^u is rescaled by the
    outgoing and incoming flow of group u. With symmetric F and C the two
    flows coincide and only the outgoing one is used.

    Raises:
        SupportMismatchError: P vanishes where F is positive.
        SymmetryViolationError: Symmetric variant with asymmetric F or C.
    """
    _check_table(table, model.variant)
    ratio = data_model_ratio(table, model.reconstruct())
    a, c = model.A, model.C

    joint = c * (a.T @ ratio @ a)
    if model.variant is Variant.SYMMETRIC:
        joint = (joint + joint.T) / 2.0
        flow = ratio @ a @ c.T
        mass = joint.sum(axis=1)
    else:
        flow = ratio @ a @ c.T + ratio.T @ a @ c
        mass = joint.sum(axis=1) + joint.sum(axis=0)

    frozen = mass < DEGENERATE_WEIGHT
    new_a = np.where(frozen, a, a * flow / np.where(frozen, 1.0, mass))
    return NetworkCoModel(
        C=joint / joint.sum(),
        A=normalize_columns(new_a),
        variant=model.variant,
    )


def co_memberships(model: NetworkCoModel) -> FloatArray:
    """p(u | i) with group weights (c_u. + c_.u) / 2."""
    weights = (model.C.sum(axis=1) + model.C.sum(axis=0)) / 2.0
    return normalize_rows(model.A * weights)


def _model_mh_deviation(model: NetworkCoModel) -> float:
    return model.mh_deviation


def fit_network_co(
    table: ContingencyTable,
    m: int,
    variant: Variant = Variant.GENERAL,
    init: NetworkCoModel | None = None,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int | None = None,
    mh_projection_interval: int | None = None,
) -> tuple[NetworkCoModel, FitTrace, LatentMarkovSummary]:
    """Co-cluster an oriented or unoriented network with shared emissions.

    Args:
        table: Square table.
        m: Number of hidden states.
        variant: General, symmetric or marginally homogeneous family.
        init: Starting model; random hard assignment when omitted.
        max_iter: Maximal number of EM cycles.
        tol: Relative change of K below which iteration stops.
        seed: Seed of the random initialization.
        mh_projection_interval: For the MH variant, project C onto equal
            margins every that many steps; None only monitors the deviation.

    Returns:
        tuple: Model, trace (with per-iteration MH deviation for the MH
        variant) and the latent Markov summary W, pi.
    """
    variant = Variant(variant)
    _check_table(table, variant)
    if init is None:
        init = random_co_init(table, m, variant, np.random.default_rng(seed))
    if init.m != m or init.variant is not variant:
        raise LatentModelError(
            f"initial model is a {init.variant.value} model with {init.m} groups, "
            f"expected {variant.value} with {m}"
        )
    if init.A.shape[0] != table.shape[0]:
        raise LatentModelError(f"initial model does not match table shape {table.shape}")
    if mh_projection_interval is not None and mh_projection_interval < 1:
        raise LatentModelError("projection interval must be positive")

    project = variant is Variant.MARGINALLY_HOMOGENEOUS and mh_projection_interval is not None
    counter = itertools.count(1)

    def step(model: NetworkCoModel) -> tuple[NetworkCoModel, float]:
        updated = network_co_em_step(table, model)
        if project and next(counter) % (mh_projection_interval or 1) == 0:
            updated = NetworkCoModel(
                C=project_marginal_homogeneity(updated.C),
                A=updated.A,
                variant=updated.variant,
            )
        return updated, kl_divergence(table, updated.reconstruct())

    monitor = _model_mh_deviation if variant is Variant.MARGINALLY_HOMOGENEOUS else None
    initial_kl = kl_divergence(table, init.reconstruct())
    model, trace = run_em(
        step, init, initial_kl, max_iter=max_iter, tol=tol, monitor=monitor
    )
    return model, trace, latent_markov_summary(model.as_colatent())


__all__ = [
    "MH_TOLERANCE",
    "NetworkCoModel",
    "Variant",
    "co_memberships",
    "fit_network_co",
    "mh_deviation",
    "network_co_em_step",
    "project_marginal_homogeneity",
    "random_co_init",
]
