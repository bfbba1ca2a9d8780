"""Soft clustering of weighted networks by latent and co-latent EM."""

import logging
from dataclasses import dataclass
from typing import Any

import em_model
from contingency_table import ContingencyTable, LatentModelError
from em_model import FitOutcome, Fitter, FitterOptions, hard_assignments
from network_em.coclustering import (
    MH_TOLERANCE,
    NetworkCoModel,
    Variant,
    co_memberships,
    fit_network_co,
    mh_deviation,
    network_co_em_step,
    project_marginal_homogeneity,
    random_co_init,
)
from network_em.latent import (
    NetworkLatentModel,
    fit_network,
    network_em_step,
    prepare_network_table,
    random_latent_init,
    reconstruct_latent,
)
from network_em.recovery import (
    INFEASIBLE_RESIDUAL,
    MembershipRecovery,
    mh_membership_recovery,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NetworkFitter:
    """Network latent (membership) implementation of the Fitter protocol."""

    options: FitterOptions

    def fit(self, table: ContingencyTable, seed: int) -> FitOutcome:
        model, trace = fit_network(
            table,
            self.options.m,
            self.options.lam,
            max_iter=self.options.max_iter,
            tol=self.options.tol,
            seed=seed,
        )
        return FitOutcome(
            model=model,
            trace=trace,
            row_assignments=hard_assignments(model.Z),
            diagnostics={"rho": model.rho.tolist(), "lambda": self.options.lam},
        )


@dataclass(frozen=True)
class NetworkCoFitter:
    """Shared-emission co-latent implementation of the Fitter protocol."""

    options: FitterOptions

    def fit(self, table: ContingencyTable, seed: int) -> FitOutcome:
        variant = Variant.parse(self.options.variant)
        model, trace, summary = fit_network_co(
            table,
            self.options.m,
            variant,
            max_iter=self.options.max_iter,
            tol=self.options.tol,
            seed=seed,
            mh_projection_interval=self.options.mh_projection_interval,
        )
        diagnostics: dict[str, Any] = {
            "variant": variant.value,
            "C": model.C.tolist(),
            "mh_deviation": model.mh_deviation,
            "markov": summary.to_dict(),
        }
        if variant is Variant.MARGINALLY_HOMOGENEOUS:
            weights = (table.row_margins + table.col_margins) / 2.0
            try:
                recovery = mh_membership_recovery(model.A, weights)
            except LatentModelError as exc:
                logger.warning("Membership recovery failed: %s", exc)
            else:
                diagnostics["recovery"] = {
                    "rho": recovery.rho.tolist(),
                    "Z": recovery.Z.T.tolist(),
                    "residual": recovery.residual,
                    "non_unique": recovery.non_unique,
                }
        return FitOutcome(
            model=model,
            trace=trace,
            row_assignments=hard_assignments(co_memberships(model)),
            diagnostics=diagnostics,
        )


def get_network_fitter_impl(options: FitterOptions) -> Fitter:
    """Create a NetworkFitter conforming to the Fitter protocol."""
    return NetworkFitter(options)


def get_network_co_fitter_impl(options: FitterOptions) -> Fitter:
    """Create a NetworkCoFitter conforming to the Fitter protocol."""
    return NetworkCoFitter(options)


em_model.register_fitter("fit-network", get_network_fitter_impl)
em_model.register_fitter("fit-network-co", get_network_co_fitter_impl)


__all__ = [
    "INFEASIBLE_RESIDUAL",
    "MH_TOLERANCE",
    "MembershipRecovery",
    "NetworkCoFitter",
    "NetworkCoModel",
    "NetworkFitter",
    "NetworkLatentModel",
    "Variant",
    "co_memberships",
    "fit_network",
    "fit_network_co",
    "get_network_co_fitter_impl",
    "get_network_fitter_impl",
    "mh_deviation",
    "mh_membership_recovery",
    "network_co_em_step",
    "network_em_step",
    "prepare_network_table",
    "project_marginal_homogeneity",
    "random_co_init",
    "random_latent_init",
    "reconstruct_latent",
]
