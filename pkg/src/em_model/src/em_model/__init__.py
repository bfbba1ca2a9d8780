"""Fitter protocol definition and fitter registry."""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Protocol, runtime_checkable

import numpy as np
from numpy.typing import NDArray

from contingency_table import ContingencyTable, FloatArray
from em_model.convergence import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    KL_NOISE_FLOOR,
    MONOTONE_SLACK,
    FitTrace,
    StopReason,
    run_em,
)
from em_model.updates import (
    data_model_ratio,
    hard_assignments,
    indicator,
    normalize_columns,
    normalize_rows,
    random_partition,
    smooth_columns,
)

SMOOTHING = 1e-8
DEGENERATE_WEIGHT = 1e-12


@runtime_checkable
class LatentStructure(Protocol):
    """Protocol for fitted models that reproduce a table."""

    def reconstruct(self) -> FloatArray:
        """Model distribution P, same shape as the fitted table."""
        ...

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation, arrays stored group-major."""
        ...


@dataclass(frozen=True)
class FitOutcome:
    """Result of one seeded fit."""

    model: LatentStructure
    trace: FitTrace
    row_assignments: NDArray[np.intp]
    col_assignments: NDArray[np.intp] | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class FitterOptions:
    """Settings forwarded from the run configuration to a fitter."""

    m: int
    m2: int | None = None
    variant: str = "general"
    lam: float = 1.0
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL
    mh_projection_interval: int | None = None


@runtime_checkable
class Fitter(Protocol):
    """Protocol for seeded, single-start model fitters."""

    def fit(self, table: ContingencyTable, seed: int) -> FitOutcome:
        """Fit the model from a random start drawn with the given seed.

        Args:
            table: Observed contingency table.
            seed: Seed of the random hard initialization.

        Returns:
            FitOutcome: Fitted model, trace and hard assignments.
        """
        ...


FitterFactory = Callable[[FitterOptions], Fitter]

_FACTORIES: dict[str, FitterFactory] = {}


def register_fitter(command: str, factory: FitterFactory) -> None:
    """Make an implementation available under a command name."""
    _FACTORIES[command] = factory


def available_fitters() -> list[str]:
    return sorted(_FACTORIES)


def get_fitter(command: str, options: FitterOptions) -> Fitter:
    """Factory function for creating Fitter instances.

    Implementations register themselves on import.

    Raises:
        NotImplementedError: When no implementation is registered for command.
    """
    factory = _FACTORIES.get(command)
    if factory is None:
        raise NotImplementedError(f"No fitter implementation available for {command!r}")
    return factory(options)


__all__ = [
    "DEFAULT_MAX_ITER",
    "DEFAULT_TOL",
    "DEGENERATE_WEIGHT",
    "KL_NOISE_FLOOR",
    "MONOTONE_SLACK",
    "SMOOTHING",
    "FitOutcome",
    "FitTrace",
    "Fitter",
    "FitterFactory",
    "FitterOptions",
    "LatentStructure",
    "StopReason",
    "available_fitters",
    "data_model_ratio",
    "get_fitter",
    "hard_assignments",
    "indicator",
    "normalize_columns",
    "normalize_rows",
    "random_partition",
    "register_fitter",
    "run_em",
    "smooth_columns",
]
