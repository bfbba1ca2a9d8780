"""Multi-restart fitting runs and table inspection."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray

from contingency_table import (
    ConfigError,
    ContingencyTable,
    LatentModelError,
    lambda_bounds,
    mutual_information,
    rank_estimate,
    read_dense_csv,
    read_edge_list,
    spectral_report,
    symmetrize,
)
from em_model import FitOutcome, get_fitter
from latentem.config import Command, InputFormat, RunConfig, thread_limit
from latentem.persistence import dump_json, save_model, write_trace
from latentem.text import AlphabetPolicy, ingest_text

logger = logging.getLogger(__name__)


class PipelineError(LatentModelError):
    """A run failed; the message names the command and the input."""


@dataclass(frozen=True)
class FitReport:
    """Best restart of a run and per-restart divergences."""

    command: str
    best_restart: int
    best_kl: float
    per_restart_kl: list[float]
    best_model: dict[str, Any]
    hard_assignments: dict[str, int]
    column_assignments: dict[str, int] | None
    diagnostics: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def load_table(
    path: str | Path,
    input_format: InputFormat | str = InputFormat.CSV,
    alphabet_policy: AlphabetPolicy | str = AlphabetPolicy.OBSERVED,
) -> ContingencyTable:
    """Read a table in one of the supported input formats.

    Dense CSV tables must have no empty line; edge lists and bigram tables
    keep vertices or letters that only appear on one side.
    """
    fmt = InputFormat(input_format)
    if fmt is InputFormat.CSV:
        return read_dense_csv(path)
    if fmt is InputFormat.EDGELIST:
        return read_edge_list(path, allow_zero_lines=True)
    return ingest_text(path, AlphabetPolicy(alphabet_policy))


def inspect_table(table: ContingencyTable) -> dict[str, Any]:
    """Margins, dependence and, for square tables, spectral diagnostics."""
    info: dict[str, Any] = {
        "shape": list(table.shape),
        "row_labels": list(table.row_labels),
        "col_labels": list(table.col_labels),
        "row_margins": table.row_margins.tolist(),
        "col_margins": table.col_margins.tolist(),
        "mutual_information": mutual_information(table),
        "rank_estimate": rank_estimate(table),
    }
    if table.is_square:
        report = spectral_report(table)
        info["spectral"] = asdict(report)
        symmetric = table if report.is_symmetric else symmetrize(table)
        bounds = lambda_bounds(symmetric)
        info["lambda_bounds"] = {"nonneg": bounds.nonneg, "psd": bounds.psd}
    return info


def inspect(
    path: str | Path,
    input_format: InputFormat | str = InputFormat.CSV,
    alphabet_policy: AlphabetPolicy | str = AlphabetPolicy.OBSERVED,
) -> dict[str, Any]:
    """Diagnostics of the table stored at path.

    Raises:
        PipelineError: The table cannot be read or analysed.
    """
    try:
        return inspect_table(load_table(path, input_format, alphabet_policy))
    except LatentModelError as exc:
        raise PipelineError(f"inspect on {path}: {exc}") from exc


def _labelled(
    labels: tuple[str, ...], groups: NDArray[np.intp] | None
) -> dict[str, int] | None:
    if groups is None:
        return None
    return {label: int(g) for label, g in zip(labels, groups, strict=True)}


def _fit_restarts(config: RunConfig, table: ContingencyTable) -> list[FitOutcome]:
    fitter = get_fitter(config.command.value, config.fitter_options())
    seeds = [config.seed + r for r in range(config.restarts)]
    workers = thread_limit(config.restarts)
    logger.info(
        "Running %s with %d restart(s) on %d thread(s)",
        config.command.value,
        config.restarts,
        workers,
    )
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda seed: fitter.fit(table, seed), seeds))


def _write_outputs(out_dir: Path, report: FitReport, outcomes: list[FitOutcome]) -> None:
    traces = out_dir / "traces"
    traces.mkdir(parents=True, exist_ok=True)
    save_model(outcomes[report.best_restart].model, out_dir / "model.json")
    for r, outcome in enumerate(outcomes):
        write_trace(outcome.trace, traces / f"restart_{r:03d}.jsonl")
    dump_json(out_dir / "report.json", report.to_dict())
    logger.info("Wrote model, traces and report to %s", out_dir)


def run(config: RunConfig) -> FitReport:
    """Fit the configured model from several seeded random starts.

    Restart r uses seed + r; the restart with the smallest final divergence
    wins, the lowest index on ties. Outputs go to config.output_dir when set.

    Raises:
        ConfigError: The command is not a fitting command.
        PipelineError: Reading the table or fitting failed.
    """
    if config.command is Command.INSPECT:
        raise ConfigError("inspect does not fit a model, call inspect() instead")
    try:
        table = load_table(config.input_path, config.input_format, config.alphabet_policy)
        outcomes = _fit_restarts(config, table)
        table_info = inspect_table(table)
    except LatentModelError as exc:
        raise PipelineError(f"{config.command.value} on {config.input_path}: {exc}") from exc

    per_restart = [outcome.trace.final_kl for outcome in outcomes]
    best = int(np.argmin(per_restart))
    winner = outcomes[best]
    logger.info("Best restart %d with K = %.6g", best, per_restart[best])

    diagnostics = dict(winner.diagnostics)
    diagnostics["trace"] = {
        "iterations_run": winner.trace.iterations_run,
        "converged": winner.trace.converged,
        "stop_reason": winner.trace.stop_reason.value,
    }
    diagnostics["table"] = table_info
    report = FitReport(
        command=config.command.value,
        best_restart=best,
        best_kl=per_restart[best],
        per_restart_kl=per_restart,
        best_model=winner.model.to_dict(),
        hard_assignments=_labelled(table.row_labels, winner.row_assignments) or {},
        column_assignments=_labelled(table.col_labels, winner.col_assignments),
        diagnostics=diagnostics,
    )
    if config.output_dir is not None:
        _write_outputs(config.output_dir, report, outcomes)
    return report


__all__ = ["FitReport", "PipelineError", "inspect", "inspect_table", "load_table", "run"]
