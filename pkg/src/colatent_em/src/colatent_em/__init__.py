"""Co-clustering of contingency tables by alternating minimization."""

import logging
from dataclasses import dataclass
from typing import Any

import em_model
from colatent_em.em import em_step, fit
from colatent_em.markov import (
    LatentMarkovSummary,
    latent_markov_summary,
    stationary_distribution,
)
from colatent_em.model import (
    CoLatentModel,
    from_latent,
    hard_block_model,
    latent_mutual_information,
    memberships,
    random_init,
    reconstruct,
)
from contingency_table import ContingencyTable, ZeroRowGroupError
from em_model import FitOutcome, Fitter, FitterOptions, hard_assignments

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoLatentFitter:
    """Co-latent implementation of the Fitter protocol."""

    options: FitterOptions

    def fit(self, table: ContingencyTable, seed: int) -> FitOutcome:
        m1 = self.options.m
        m2 = self.options.m2 if self.options.m2 is not None else m1
        model, trace = fit(
            table,
            m1,
            m2,
            max_iter=self.options.max_iter,
            tol=self.options.tol,
            seed=seed,
        )
        rows, cols = memberships(model)
        diagnostics: dict[str, Any] = {
            "C": model.C.tolist(),
            "latent_mutual_information": latent_mutual_information(model),
        }
        if m1 == m2:
            try:
                diagnostics["markov"] = latent_markov_summary(model).to_dict()
            except ZeroRowGroupError as exc:
                logger.info("No latent Markov summary: %s", exc)
        return FitOutcome(
            model=model,
            trace=trace,
            row_assignments=hard_assignments(rows),
            col_assignments=hard_assignments(cols),
            diagnostics=diagnostics,
        )


def get_fitter_impl(options: FitterOptions) -> Fitter:
    """Create a CoLatentFitter conforming to the Fitter protocol."""
    return CoLatentFitter(options)


em_model.register_fitter("fit-colatent", get_fitter_impl)


__all__ = [
    "CoLatentFitter",
    "CoLatentModel",
    "LatentMarkovSummary",
    "em_step",
    "fit",
    "from_latent",
    "get_fitter_impl",
    "hard_block_model",
    "latent_markov_summary",
    "latent_mutual_information",
    "memberships",
    "random_init",
    "reconstruct",
    "stationary_distribution",
]
