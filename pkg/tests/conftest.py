"""Pytest configuration and shared fixtures."""

import sys
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

# Add src and workspace members to path for imports
_SRC = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(_SRC))
for _member in ("contingency_table", "em_model", "latent_em", "colatent_em", "network_em"):
    sys.path.insert(0, str(_SRC / _member / "src"))

# Import main module to register every fitter
import latentem  # noqa: E402, F401
from contingency_table import ContingencyTable, normalize  # noqa: E402


def pytest_configure(config: pytest.Config) -> None:
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests (may be slow)"
    )
    config.addinivalue_line("markers", "e2e: marks tests as end-to-end tests")


def pytest_collection_modifyitems(
    config: pytest.Config, items: list[pytest.Item]
) -> None:
    """Automatically mark tests based on their location."""
    for item in items:
        # Mark tests in unit/ directory as unit tests
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)

        # Mark tests in integration/ directory as integration tests
        elif "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)

        # Mark tests in e2e/ directory as e2e tests
        elif "e2e" in str(item.fspath):
            item.add_marker(pytest.mark.e2e)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so random instances are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def dependent_table() -> ContingencyTable:
    """[[0.4, 0.1], [0.1, 0.4]], mutual information 0.8 ln 1.6 + 0.2 ln 0.4."""
    return normalize([[4, 1], [1, 4]])


@pytest.fixture
def random_table(rng: np.random.Generator) -> Callable[[int, int], ContingencyTable]:
    """Factory of strictly positive random tables."""

    def make(n: int, p: int) -> ContingencyTable:
        return normalize(rng.random((n, p)) + 0.01)

    return make


@pytest.fixture
def random_symmetric_table(
    rng: np.random.Generator,
) -> Callable[[int], ContingencyTable]:
    """Factory of strictly positive symmetric tables."""

    def make(n: int) -> ContingencyTable:
        values = rng.random((n, n)) + 0.01
        return normalize(values + values.T)

    return make


@pytest.fixture
def two_block_network(rng: np.random.Generator) -> tuple[ContingencyTable, np.ndarray]:
    """Two disconnected cliques of 10 vertices, each exactly independent inside.

    F_ij = f_i f_j / w_b when i and j share block b of weight w_b, else 0.
    """
    n = 20
    blocks = np.repeat([0, 1], n // 2)
    f = rng.uniform(1.0, 2.0, n)
    f /= f.sum()
    values = np.zeros((n, n))
    for b in (0, 1):
        members = blocks == b
        weight = f[members].sum()
        values[np.ix_(members, members)] = np.outer(f[members], f[members]) / weight
    labels = [f"v{i}" for i in range(n)]
    return ContingencyTable(values, labels, labels), blocks
