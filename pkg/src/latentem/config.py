"""Run configuration and environment settings."""

import os
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        __str__ = str.__str__
        __format__ = str.__format__
from pathlib import Path

from dotenv import load_dotenv

from contingency_table import ConfigError
from em_model import DEFAULT_MAX_ITER, DEFAULT_TOL, FitterOptions
from latentem.text import AlphabetPolicy
from network_em import Variant

THREADS_ENV = "LATENTEM_THREADS"


class Command(StrEnum):
    FIT_LATENT = "fit-latent"
    FIT_COLATENT = "fit-colatent"
    FIT_NETWORK = "fit-network"
    FIT_NETWORK_CO = "fit-network-co"
    INSPECT = "inspect"


class InputFormat(StrEnum):
    CSV = "csv"
    EDGELIST = "edgelist"
    TEXT = "text"


@dataclass(frozen=True)
class RunConfig:
    """Settings of one multi-restart fitting run."""

    command: Command
    input_path: Path
    input_format: InputFormat = InputFormat.CSV
    m: int = 2
    m2: int | None = None
    variant: str = Variant.GENERAL.value
    lam: float = 1.0
    restarts: int = 10
    seed: int = 0
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL
    output_dir: Path | None = None
    mh_projection_interval: int | None = None
    alphabet_policy: AlphabetPolicy = AlphabetPolicy.OBSERVED

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "command", Command(self.command))
            object.__setattr__(self, "input_format", InputFormat(self.input_format))
            object.__setattr__(self, "alphabet_policy", AlphabetPolicy(self.alphabet_policy))
            Variant.parse(self.variant)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        object.__setattr__(self, "input_path", Path(self.input_path))
        if self.output_dir is not None:
            object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.m < 1 or (self.m2 is not None and self.m2 < 1):
            raise ConfigError("group counts must be at least 1")
        if self.restarts < 1:
            raise ConfigError("restarts must be at least 1")
        if self.lam < 1:
            raise ConfigError("lambda must be at least 1")
        if self.max_iter < 0 or self.tol < 0:
            raise ConfigError("max_iter and tol must be non-negative")
        if self.mh_projection_interval is not None and self.mh_projection_interval < 1:
            raise ConfigError("MH projection interval must be positive")

    def fitter_options(self) -> FitterOptions:
        return FitterOptions(
            m=self.m,
            m2=self.m2,
            variant=Variant.parse(self.variant).value,
            lam=self.lam,
            max_iter=self.max_iter,
            tol=self.tol,
            mh_projection_interval=self.mh_projection_interval,
        )


def thread_limit(restarts: int) -> int:
    """Worker count for restarts, capped by LATENTEM_THREADS (read from .env too)."""
    load_dotenv()
    raw = os.environ.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return max(1, min(restarts, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be positive, got {value}")
    return min(value, restarts)


__all__ = ["THREADS_ENV", "Command", "InputFormat", "RunConfig", "thread_limit"]
