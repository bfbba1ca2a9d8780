"""Co-latent model P_ik = sum_uv c_uv a_i^u b_k^v."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from contingency_table import (
    ContingencyTable,
    EmptyGroupError,
    FloatArray,
    LatentModelError,
    kl_divergence,
    mutual_information,
)
from em_model import (
    SMOOTHING,
    indicator,
    normalize_columns,
    normalize_rows,
    random_partition,
    smooth_columns,
)
from latent_em import LatentModel, check_distribution


def _frozen(values: ArrayLike, name: str) -> FloatArray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != 2:
        raise LatentModelError(f"{name} must be a matrix, got shape {array.shape}")
    if np.any(array < 0) or not np.all(np.isfinite(array)):
        raise LatentModelError(f"{name} must be finite and non-negative")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class CoLatentModel:
    """Joint latent distribution C (m1 x m2) with emissions A (n x m1), B (p x m2)."""

    C: FloatArray
    A: FloatArray
    B: FloatArray

    def __post_init__(self) -> None:
        c = _frozen(self.C, "C")
        a = _frozen(self.A, "A")
        b = _frozen(self.B, "B")
        if a.shape[1] != c.shape[0] or b.shape[1] != c.shape[1]:
            raise LatentModelError(
                f"C is {c.shape} but A has {a.shape[1]} and B {b.shape[1]} groups"
            )
        check_distribution(c, "C")
        check_distribution(a, "columns of A", axis=0)
        check_distribution(b, "columns of B", axis=0)
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def m1(self) -> int:
        return int(self.C.shape[0])

    @property
    def m2(self) -> int:
        return int(self.C.shape[1])

    def reconstruct(self) -> FloatArray:
        return self.A @ self.C @ self.B.T

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "colatent",
            "C": self.C.tolist(),
            "A": self.A.T.tolist(),
            "B": self.B.T.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CoLatentModel":
        return cls(
            C=np.asarray(data["C"], dtype=np.float64),
            A=np.asarray(data["A"], dtype=np.float64).T,
            B=np.asarray(data["B"], dtype=np.float64).T,
        )


def reconstruct(model: CoLatentModel) -> FloatArray:
    """Model distribution P_ik = sum_uv c_uv a_i^u b_k^v."""
    return model.reconstruct()


def from_latent(model: LatentModel) -> CoLatentModel:
    """Embed a latent model as the co-latent model with C = diag(rho)."""
    return CoLatentModel(C=np.diag(model.rho), A=model.A, B=model.B)


def latent_mutual_information(model: CoLatentModel) -> float:
    """I(U:V) of the joint latent distribution C."""
    return mutual_information(ContingencyTable(model.C, allow_zero_lines=True))


def memberships(model: CoLatentModel) -> tuple[FloatArray, FloatArray]:
    """Posterior row groups p(u | i) and column groups p(v | k)."""
    return (
        normalize_rows(model.A * model.C.sum(axis=1)),
        normalize_rows(model.B * model.C.sum(axis=0)),
    )


def random_init(
    table: ContingencyTable,
    m1: int,
    m2: int,
    rng: np.random.Generator,
    epsilon: float = SMOOTHING,
) -> CoLatentModel:
    """Random hard row and column groups, C from the induced blocks, smoothed."""
    if m1 < 1 or m2 < 1:
        raise LatentModelError(f"group counts must be at least 1, got ({m1}, {m2})")
    n, p = table.shape
    rows = indicator(random_partition(rng, n, m1), m1)
    cols = indicator(random_partition(rng, p, m2), m2)
    blocks = rows.T @ table.values @ cols + epsilon
    return CoLatentModel(
        C=blocks / blocks.sum(),
        A=smooth_columns(normalize_columns(rows * table.row_margins[:, None]), epsilon),
        B=smooth_columns(normalize_columns(cols * table.col_margins[:, None]), epsilon),
    )


def _partition(values: ArrayLike, size: int, axis: str) -> tuple[NDArray[np.intp], int]:
    partition = np.asarray(values, dtype=np.intp)
    if partition.shape != (size,):
        raise LatentModelError(f"{axis} partition must have {size} entries")
    if np.any(partition < 0):
        raise LatentModelError(f"{axis} partition ids must be non-negative")
    groups = int(partition.max()) + 1
    sizes = np.bincount(partition, minlength=groups)
    if np.any(sizes == 0):
        empty = [int(g) for g in np.flatnonzero(sizes == 0)]
        raise EmptyGroupError(f"{axis} groups {empty} have no members")
    return partition, groups


def hard_block_model(
    table: ContingencyTable,
    row_partition: ArrayLike,
    col_partition: ArrayLike,
) -> tuple[CoLatentModel, float]:
    """Best hard co-clustering model for given partitions and its divergence.

    Group ids are 0-based. The divergence equals I(X:Y) - I(U:V).

    Raises:
        EmptyGroupError: Some group id below the maximum is unused.
    """
    n, p = table.shape
    rows, m1 = _partition(row_partition, n, "row")
    cols, m2 = _partition(col_partition, p, "column")
    row_groups = indicator(rows, m1)
    col_groups = indicator(cols, m2)
    model = CoLatentModel(
        C=row_groups.T @ table.values @ col_groups,
        A=normalize_columns(row_groups * table.row_margins[:, None]),
        B=normalize_columns(col_groups * table.col_margins[:, None]),
    )
    return model, kl_divergence(table, model.reconstruct())


__all__ = [
    "CoLatentModel",
    "from_latent",
    "hard_block_model",
    "latent_mutual_information",
    "memberships",
    "random_init",
    "reconstruct",
]
