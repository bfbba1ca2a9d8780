"""Latent model P_ik = sum_g rho_g a_i^g b_k^g and its initializations."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from contingency_table import ContingencyTable, FloatArray, LatentModelError
from em_model import (
    SMOOTHING,
    indicator,
    normalize_columns,
    normalize_rows,
    random_partition,
    smooth_columns,
)

NORMALIZATION_TOLERANCE = 1e-12


def _frozen_array(values: ArrayLike, ndim: int, name: str) -> FloatArray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != ndim:
        raise LatentModelError(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    if np.any(array < 0) or not np.all(np.isfinite(array)):
        raise LatentModelError(f"{name} must be finite and non-negative")
    array.setflags(write=False)
    return array


def check_distribution(values: FloatArray, name: str, axis: int | None = None) -> None:
    """Raise unless values sum to one along axis within tolerance."""
    sums = values.sum(axis=axis)
    if np.any(np.abs(sums - 1.0) > NORMALIZATION_TOLERANCE):
        raise LatentModelError(f"{name} must sum to one, got {sums}")


@dataclass(frozen=True, eq=False)
class LatentModel:
    """Group weights rho, row emissions A (n x m) and column emissions B (p x m)."""

    rho: FloatArray
    A: FloatArray
    B: FloatArray

    def __post_init__(self) -> None:
        rho = _frozen_array(self.rho, 1, "rho")
        a = _frozen_array(self.A, 2, "A")
        b = _frozen_array(self.B, 2, "B")
        if not a.shape[1] == b.shape[1] == rho.size:
            raise LatentModelError(
                f"group counts disagree: rho {rho.size}, A {a.shape[1]}, B {b.shape[1]}"
            )
        check_distribution(rho, "rho")
        check_distribution(a, "columns of A", axis=0)
        check_distribution(b, "columns of B", axis=0)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def m(self) -> int:
        return int(self.rho.size)

    def reconstruct(self) -> FloatArray:
        return (self.A * self.rho) @ self.B.T

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "latent",
            "rho": self.rho.tolist(),
            "A": self.A.T.tolist(),
            "B": self.B.T.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LatentModel":
        return cls(
            rho=np.asarray(data["rho"], dtype=np.float64),
            A=np.asarray(data["A"], dtype=np.float64).T,
            B=np.asarray(data["B"], dtype=np.float64).T,
        )


def reconstruct(model: LatentModel) -> FloatArray:
    """Model distribution P_ik = sum_g rho_g a_i^g b_k^g."""
    return model.reconstruct()


def saturated_init(table: ContingencyTable) -> LatentModel:
    """Model with min(n, p) groups reproducing the table exactly.

    With p <= n, a_i^g = F_ig / F_.g, b_k^g = delta_kg and rho_g = F_.g;
    wider tables get the transposed construction.
    """
    values = table.values
    n, p = table.shape
    if p <= n:
        return LatentModel(
            rho=table.col_margins.copy(),
            A=normalize_columns(values),
            B=np.eye(p),
        )
    return LatentModel(
        rho=table.row_margins.copy(),
        A=np.eye(n),
        B=normalize_columns(values.T),
    )


def random_init(
    table: ContingencyTable,
    m: int,
    rng: np.random.Generator,
    epsilon: float = SMOOTHING,
) -> LatentModel:
    """Random hard assignment of rows and columns to m groups, then smoothing.

    Emissions are the group-conditional margins and rho the row mass of
    each group; epsilon keeps every entry positive since multiplicative
    updates never leave zero.
    """
    if m < 1:
        raise LatentModelError(f"number of groups must be at least 1, got {m}")
    n, p = table.shape
    rows = indicator(random_partition(rng, n, m), m)
    cols = indicator(random_partition(rng, p, m), m)
    a = rows * table.row_margins[:, None]
    b = cols * table.col_margins[:, None]
    rho = a.sum(axis=0) + epsilon
    return LatentModel(
        rho=rho / rho.sum(),
        A=smooth_columns(normalize_columns(a), epsilon),
        B=smooth_columns(normalize_columns(b), epsilon),
    )


def memberships(
    table: ContingencyTable, model: LatentModel
) -> tuple[FloatArray, FloatArray]:
    """Posterior group probabilities p(g | i) and p(g | k).

    Returns:
        tuple: n x m row memberships and p x m column memberships, rows
        summing to one.
    """
    if table.shape != (model.A.shape[0], model.B.shape[0]):
        raise LatentModelError(
            f"table shape {table.shape} does not match model "
            f"({model.A.shape[0]}, {model.B.shape[0]})"
        )
    return normalize_rows(model.A * model.rho), normalize_rows(model.B * model.rho)


__all__ = [
    "LatentModel",
    "check_distribution",
    "memberships",
    "random_init",
    "reconstruct",
    "saturated_init",
]
