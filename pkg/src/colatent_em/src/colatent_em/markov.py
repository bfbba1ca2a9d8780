"""Latent Markov chain p(v | u) = c_uv / c_u. of a square joint distribution."""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.linalg

from colatent_em.model import CoLatentModel
from contingency_table import FloatArray, SquareOnlyError, ZeroRowGroupError

logger = logging.getLogger(__name__)

UNIT_EIGENVALUE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class LatentMarkovSummary:
    """Transition matrix W, its stationary distribution and MH deviation of C.

    multiple_stationary flags a reducible chain, for which pi falls back
    to the row margins of C.
    """

    W: FloatArray
    pi: FloatArray
    mh_deviation: float
    multiple_stationary: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "W": self.W.tolist(),
            "pi": self.pi.tolist(),
            "mh_deviation": self.mh_deviation,
            "multiple_stationary": self.multiple_stationary,
        }


def stationary_distribution(transition: FloatArray) -> tuple[FloatArray, bool]:
    """Left fixed probability vector of a row-stochastic matrix.

    Returns:
        tuple: The distribution (zeros when the unit eigenvalue is
        repeated) and the repetition flag.
    """
    eigenvalues, left = scipy.linalg.eig(transition, left=True, right=False)
    distance = np.abs(eigenvalues - 1.0)
    if np.sum(distance < UNIT_EIGENVALUE_TOLERANCE) > 1:
        return np.zeros(transition.shape[0]), True
    vector = left[:, int(np.argmin(distance))]
    vector = np.real(vector / vector.sum())
    vector = np.clip(vector, 0.0, None)
    return vector / vector.sum(), False


def latent_markov_summary(model: CoLatentModel) -> LatentMarkovSummary:
    """Markov reading of C: hidden states with transitions c_uv / c_u.

    Raises:
        SquareOnlyError: m1 != m2.
        ZeroRowGroupError: Some row group has zero mass.
    """
    c = model.C
    if model.m1 != model.m2:
        raise SquareOnlyError(f"transition matrix needs m1 == m2, got {c.shape}")
    out_mass = c.sum(axis=1)
    if np.any(out_mass <= 0):
        empty = [int(u) for u in np.flatnonzero(out_mass <= 0)]
        raise ZeroRowGroupError(f"latent groups {empty} have no outgoing mass")

    transition = c / out_mass[:, None]
    pi, multiple = stationary_distribution(transition)
    if multiple:
        logger.warning("Latent chain is reducible; reporting row margins of C as pi")
        pi = out_mass / out_mass.sum()
    return LatentMarkovSummary(
        W=transition,
        pi=pi,
        mh_deviation=float(np.max(np.abs(out_mass - c.sum(axis=0)))),
        multiple_stationary=multiple,
    )


__all__ = [
    "LatentMarkovSummary",
    "latent_markov_summary",
    "stationary_distribution",
]
