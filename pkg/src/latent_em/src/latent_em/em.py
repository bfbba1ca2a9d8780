"""Multiplicative EM iteration for the latent model."""

import logging
from dataclasses import dataclass, field

import numpy as np

from contingency_table import ContingencyTable, FloatArray, LatentModelError, kl_divergence
from em_model import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DEGENERATE_WEIGHT,
    FitTrace,
    data_model_ratio,
    normalize_columns,
    run_em,
)
from latent_em.model import LatentModel, random_init

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StepDiagnostics:
    """Correction factors kappa_g and the divergence around one step."""

    kappa: FloatArray
    kl_before: float
    kl_after: float
    frozen_groups: tuple[int, ...] = field(default=())


def em_step(
    table: ContingencyTable, model: LatentModel
) -> tuple[LatentModel, StepDiagnostics]:
    """One E-step plus M-step on (rho, A, B).

    All three factors are updated from the same model P:
    rho_g <- rho_g kappa_g, a_i^g <- a_i^g (sum_l b_l^g F_il / P_il) / kappa_g
    and symmetrically for b. Groups whose new weight falls below
    DEGENERATE_WEIGHT keep their emissions.

    Raises:
        SupportMismatchError: P vanishes where F is positive.
    """
    predicted = model.reconstruct()
    kl_before = kl_divergence(table, predicted)
    ratio = data_model_ratio(table, predicted)

    row_factor = ratio @ model.B
    col_factor = ratio.T @ model.A
    kappa = np.sum(model.A * row_factor, axis=0)
    rho = model.rho * kappa

    frozen = rho < DEGENERATE_WEIGHT
    divisor = np.where(frozen, 1.0, kappa)
    a = np.where(frozen, model.A, model.A * row_factor / divisor)
    b = np.where(frozen, model.B, model.B * col_factor / divisor)
    frozen_groups = tuple(int(g) for g in np.flatnonzero(frozen))
    if frozen_groups:
        logger.debug("groups %s are degenerate and kept frozen", frozen_groups)

    updated = LatentModel(
        rho=rho / rho.sum(),
        A=normalize_columns(a),
        B=normalize_columns(b),
    )
    kl_after = kl_divergence(table, updated.reconstruct())
    return updated, StepDiagnostics(kappa, kl_before, kl_after, frozen_groups)


def fit(
    table: ContingencyTable,
    m: int,
    init: LatentModel | None = None,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int | None = None,
) -> tuple[LatentModel, FitTrace]:
    """Iterate em_step to a local minimum of K(F || P).

    Args:
        table: Observed table F.
        m: Number of latent groups.
        init: Starting model; drawn by random_init from seed when omitted.
        max_iter: Maximal number of EM cycles.
        tol: Relative change of K below which iteration stops.
        seed: Seed of the random initialization.

    Returns:
        tuple: Fitted model and convergence trace.
    """
    if m < 1:
        raise LatentModelError(f"number of groups must be at least 1, got {m}")
    if init is None:
        init = random_init(table, m, np.random.default_rng(seed))
    if init.m != m:
        raise LatentModelError(f"initial model has {init.m} groups, expected {m}")
    if (init.A.shape[0], init.B.shape[0]) != table.shape:
        raise LatentModelError(f"initial model does not match table shape {table.shape}")

    def step(model: LatentModel) -> tuple[LatentModel, float]:
        updated, diagnostics = em_step(table, model)
        return updated, diagnostics.kl_after

    initial_kl = kl_divergence(table, init.reconstruct())
    return run_em(step, init, initial_kl, max_iter=max_iter, tol=tol)


__all__ = ["StepDiagnostics", "em_step", "fit"]
