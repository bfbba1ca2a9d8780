"""End-to-end recovery of planted structure in synthetic data."""

import numpy as np
import pytest

from colatent_em import latent_markov_summary
from contingency_table import ContingencyTable, normalize
from em_model import hard_assignments
from network_em import fit_network, fit_network_co

HIDDEN_TRANSITIONS = np.array([[0.02, 0.98], [0.97, 0.03]])
EMISSIONS = np.array([[0.6, 0.4, 0.0, 0.0], [0.0, 0.0, 0.3, 0.7]])
TOKENS = 50_000


def _simulate_chain(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    states = np.empty(TOKENS, dtype=np.intp)
    states[0] = 0
    draws = rng.random(TOKENS)
    for t in range(1, TOKENS):
        stay = HIDDEN_TRANSITIONS[states[t - 1], states[t - 1]]
        states[t] = states[t - 1] if draws[t] < stay else 1 - states[t - 1]
    symbols = np.where(
        states == 0,
        rng.choice(4, size=TOKENS, p=EMISSIONS[0]),
        rng.choice(4, size=TOKENS, p=EMISSIONS[1]),
    )
    return states, symbols


@pytest.mark.e2e
class TestSyntheticRecovery:
    """Planted partitions and hidden chains are found again."""

    def test_two_block_network(
        self, two_block_network: tuple[ContingencyTable, np.ndarray]
    ) -> None:
        """Test exact recovery of two cliques with the best of ten restarts."""
        table, blocks = two_block_network
        fits = [fit_network(table, 2, seed=seed) for seed in range(10)]
        model, trace = min(fits, key=lambda fitted: fitted[1].final_kl)

        groups = hard_assignments(model.Z)
        assert trace.final_kl < 1e-8
        assert len(set(groups[blocks == 0])) == 1
        assert len(set(groups[blocks == 1])) == 1
        assert groups[0] != groups[-1]

    def test_alternating_chain(self, rng: np.random.Generator) -> None:
        """Test the hidden transition matrix behind alternating bigrams."""
        states, symbols = _simulate_chain(rng)
        counts = np.zeros((4, 4))
        np.add.at(counts, (symbols[:-1], symbols[1:]), 1.0)
        table = normalize(counts)

        fits = [fit_network_co(table, 2, max_iter=3000, seed=seed) for seed in range(5)]
        model, _, _ = min(fits, key=lambda fitted: fitted[1].final_kl)
        summary = latent_markov_summary(model.as_colatent())

        # group emitting symbols 0 and 1 plays hidden state 0
        order = np.argsort(-(model.A[0] + model.A[1]))
        transitions = summary.W[np.ix_(order, order)]
        stationary = summary.pi[order]
        empirical = np.bincount(states, minlength=2) / TOKENS

        assert np.all(np.diag(transitions) < 0.05)
        np.testing.assert_allclose(stationary, empirical, atol=0.02)
