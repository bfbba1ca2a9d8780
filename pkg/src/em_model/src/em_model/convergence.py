"""Convergence driver shared by the EM fitters."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        __str__ = str.__str__
        __format__ = str.__format__
from typing import TypeVar

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 5000
DEFAULT_TOL = 1e-10
MONOTONE_SLACK = 1e-10
# Changes of K below this are rounding noise, as when a fit reproduces F exactly.
KL_NOISE_FLOOR = 1e-15
_KL_FLOOR = 1e-30

ModelT = TypeVar("ModelT")


class StopReason(StrEnum):
    TOLERANCE = "tolerance"
    MAX_ITER = "max_iter"


@dataclass
class FitTrace:
    """Divergence K(F || P) before the first step and after every step."""

    kl_per_iteration: list[float]
    iterations_run: int
    converged: bool
    stop_reason: StopReason
    mh_deviation_per_iteration: list[float] = field(default_factory=list)

    @property
    def final_kl(self) -> float:
        return self.kl_per_iteration[-1]

    def records(self) -> list[dict[str, float | int]]:
        """One {"iter", "kl"} record per entry, as written to JSONL traces."""
        rows: list[dict[str, float | int]] = []
        for t, kl in enumerate(self.kl_per_iteration):
            row: dict[str, float | int] = {"iter": t, "kl": kl}
            if self.mh_deviation_per_iteration:
                row["mh_deviation"] = self.mh_deviation_per_iteration[t]
            rows.append(row)
        return rows


def run_em(
    step: Callable[[ModelT], tuple[ModelT, float]],
    init: ModelT,
    init_kl: float,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    monitor: Callable[[ModelT], float] | None = None,
) -> tuple[ModelT, FitTrace]:
    """Iterate an EM step until K stops changing.

    A run converges once the relative change of K drops below tol or the
    absolute change drops below KL_NOISE_FLOOR.

    Args:
        step: Maps a model to the next model and its divergence.
        init: Starting model.
        init_kl: Divergence of the starting model.
        max_iter: Maximal number of steps.
        tol: Threshold on |K_t - K_t+1| / max(K_t, 1e-30).
        monitor: Optional per-iteration diagnostic, recorded in the trace.

    Returns:
        tuple: Final model and its trace.
    """
    model = init
    kl = init_kl
    kls = [kl]
    monitored = [monitor(model)] if monitor is not None else []

    for t in range(1, max_iter + 1):
        model, new_kl = step(model)
        kls.append(new_kl)
        if monitor is not None:
            monitored.append(monitor(model))
        if new_kl > kl + MONOTONE_SLACK:
            logger.warning("K increased at step %d: %.12g -> %.12g", t, kl, new_kl)
        delta = abs(kl - new_kl)
        change = delta / max(kl, _KL_FLOOR)
        kl = new_kl
        logger.debug("step %d: K=%.12g", t, kl)
        if change < tol or delta < KL_NOISE_FLOOR:
            logger.debug("converged after %d steps", t)
            return model, FitTrace(kls, t, True, StopReason.TOLERANCE, monitored)

    logger.debug("stopped after %d steps without converging", max_iter)
    return model, FitTrace(kls, max_iter, False, StopReason.MAX_ITER, monitored)


__all__ = [
    "DEFAULT_MAX_ITER",
    "DEFAULT_TOL",
    "KL_NOISE_FLOOR",
    "MONOTONE_SLACK",
    "FitTrace",
    "StopReason",
    "run_em",
]
