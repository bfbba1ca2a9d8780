"""EM iteration for the co-latent model."""

import numpy as np

from colatent_em.model import CoLatentModel, random_init
from contingency_table import ContingencyTable, LatentModelError, kl_divergence
from em_model import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DEGENERATE_WEIGHT,
    FitTrace,
    data_model_ratio,
    normalize_columns,
    run_em,
)


def em_step(table: ContingencyTable, model: CoLatentModel) -> CoLatentModel:
    """One E-step plus M-step on (C, A, B).

    c_uv <- c_uv sum_jl (F_jl / P_jl) a_j^u b_l^v, and the emissions are
    rescaled by their share of the new row or column group mass. Groups
    whose new mass falls below DEGENERATE_WEIGHT keep their emissions.

    Raises:
        SupportMismatchError: P vanishes where F is positive.
    """
    ratio = data_model_ratio(table, model.reconstruct())
    a, b, c = model.A, model.B, model.C

    joint = c * (a.T @ ratio @ b)
    row_mass = joint.sum(axis=1)
    col_mass = joint.sum(axis=0)
    row_frozen = row_mass < DEGENERATE_WEIGHT
    col_frozen = col_mass < DEGENERATE_WEIGHT

    new_a = np.where(
        row_frozen, a, a * (ratio @ b @ c.T) / np.where(row_frozen, 1.0, row_mass)
    )
    new_b = np.where(
        col_frozen, b, b * (ratio.T @ a @ c) / np.where(col_frozen, 1.0, col_mass)
    )
    return CoLatentModel(
        C=joint / joint.sum(),
        A=normalize_columns(new_a),
        B=normalize_columns(new_b),
    )


def fit(
    table: ContingencyTable,
    m1: int,
    m2: int,
    init: CoLatentModel | None = None,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int | None = None,
) -> tuple[CoLatentModel, FitTrace]:
    """Iterate em_step to a local minimum of K(F || P).

    Args:
        table: Observed table F.
        m1: Number of row groups.
        m2: Number of column groups.
        init: Starting model; drawn by random_init from seed when omitted.
        max_iter: Maximal number of EM cycles.
        tol: Relative change of K below which iteration stops.
        seed: Seed of the random initialization.
    """
    if init is None:
        init = random_init(table, m1, m2, np.random.default_rng(seed))
    if (init.m1, init.m2) != (m1, m2):
        raise LatentModelError(
            f"initial model has ({init.m1}, {init.m2}) groups, expected ({m1}, {m2})"
        )
    if (init.A.shape[0], init.B.shape[0]) != table.shape:
        raise LatentModelError(f"initial model does not match table shape {table.shape}")

    def step(model: CoLatentModel) -> tuple[CoLatentModel, float]:
        updated = em_step(table, model)
        return updated, kl_divergence(table, updated.reconstruct())

    initial_kl = kl_divergence(table, init.reconstruct())
    return run_em(step, init, initial_kl, max_iter=max_iter, tol=tol)


__all__ = ["em_step", "fit"]
