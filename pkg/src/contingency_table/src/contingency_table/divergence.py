"""Kullback-Leibler divergence and mutual information in nats."""

import numpy as np
from numpy.typing import ArrayLike

from contingency_table.errors import LatentModelError, SupportMismatchError
from contingency_table.table import ContingencyTable, FloatArray


def kl_divergence(table: ContingencyTable | ArrayLike, model: ArrayLike) -> float:
    """K(F || P) = sum F ln(F / P), with 0 ln 0 taken as 0.

    Args:
        table: Observed distribution F.
        model: Model distribution P of the same shape.

    Raises:
        SupportMismatchError: P vanishes where F is positive.
    """
    observed = table.values if isinstance(table, ContingencyTable) else np.asarray(table, dtype=np.float64)
    predicted = np.asarray(model, dtype=np.float64)
    if observed.shape != predicted.shape:
        raise LatentModelError(
            f"shape mismatch: table {observed.shape} vs model {predicted.shape}"
        )
    support = observed > 0
    f = observed[support]
    p = predicted[support]
    if np.any(p <= 0):
        raise SupportMismatchError("model assigns zero probability to an observed cell")
    # Non-negative in exact arithmetic; rounding may leave a tiny negative sum.
    return max(0.0, float(np.sum(f * np.log(f / p))))


def independence_model(table: ContingencyTable) -> FloatArray:
    """Product of the margins, the closest independence model to F."""
    return np.outer(table.row_margins, table.col_margins)


def mutual_information(table: ContingencyTable) -> float:
    """I(X:Y) = K(F || f_row f_col')."""
    return kl_divergence(table, independence_model(table))


__all__ = ["independence_model", "kl_divergence", "mutual_information"]
