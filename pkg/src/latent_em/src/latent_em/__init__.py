"""Latent model fitting by alternating minimization of K(F || P)."""

from dataclasses import dataclass

import em_model
from contingency_table import ContingencyTable
from em_model import FitOutcome, Fitter, FitterOptions, hard_assignments
from latent_em.em import StepDiagnostics, em_step, fit
from latent_em.model import (
    LatentModel,
    check_distribution,
    memberships,
    random_init,
    reconstruct,
    saturated_init,
)


@dataclass(frozen=True)
class LatentFitter:
    """Latent implementation of the Fitter protocol."""

    options: FitterOptions

    def fit(self, table: ContingencyTable, seed: int) -> FitOutcome:
        model, trace = fit(
            table,
            self.options.m,
            max_iter=self.options.max_iter,
            tol=self.options.tol,
            seed=seed,
        )
        rows, cols = memberships(table, model)
        return FitOutcome(
            model=model,
            trace=trace,
            row_assignments=hard_assignments(rows),
            col_assignments=hard_assignments(cols),
            diagnostics={"rho": model.rho.tolist()},
        )


def get_fitter_impl(options: FitterOptions) -> Fitter:
    """Create a LatentFitter conforming to the Fitter protocol."""
    return LatentFitter(options)


em_model.register_fitter("fit-latent", get_fitter_impl)


__all__ = [
    "LatentFitter",
    "LatentModel",
    "StepDiagnostics",
    "check_distribution",
    "em_step",
    "fit",
    "get_fitter_impl",
    "memberships",
    "random_init",
    "reconstruct",
    "saturated_init",
]
