"""Unit tests for the fitter protocol, registry and convergence driver."""

import logging
from unittest.mock import Mock

import numpy as np
import pytest

import em_model
from contingency_table import ContingencyTable, SupportMismatchError, normalize
from em_model import (
    KL_NOISE_FLOOR,
    FitOutcome,
    Fitter,
    FitterOptions,
    FitTrace,
    StopReason,
    available_fitters,
    data_model_ratio,
    get_fitter,
    hard_assignments,
    indicator,
    normalize_columns,
    normalize_rows,
    random_partition,
    register_fitter,
    run_em,
)


class TestRunEm:
    """Test the relative-change stopping rule and trace bookkeeping."""

    def test_stops_on_tolerance(self) -> None:
        """Test that an unchanged divergence stops after one step."""
        model, trace = run_em(lambda m: (m + 1, 0.5), 0, 0.5, max_iter=10, tol=1e-10)

        assert model == 1
        assert trace.converged
        assert trace.stop_reason is StopReason.TOLERANCE
        assert trace.iterations_run == 1
        assert trace.kl_per_iteration == [0.5, 0.5]

    def test_stops_on_max_iter(self) -> None:
        """Test that a steadily halving divergence runs out of steps."""
        model, trace = run_em(lambda m: (m + 1, 0.5**(m + 1)), 0, 1.0, max_iter=5)

        assert model == 5
        assert not trace.converged
        assert trace.stop_reason is StopReason.MAX_ITER
        assert len(trace.kl_per_iteration) == 6
        assert trace.final_kl == pytest.approx(1 / 32)

    def test_noise_level_divergence_stops(self) -> None:
        """Test that K jittering at rounding level stops on tolerance."""
        values = [9.6e-17, -1.9e-18, 5.2e-17]
        _, trace = run_em(lambda m: (m + 1, values[m % 3]), 0, 5.2e-17, max_iter=100)

        assert trace.converged
        assert trace.stop_reason is StopReason.TOLERANCE
        assert trace.iterations_run == 1
        assert abs(trace.kl_per_iteration[1] - trace.kl_per_iteration[0]) < KL_NOISE_FLOOR

    def test_zero_steps(self) -> None:
        """Test that max_iter = 0 returns the starting model."""
        model, trace = run_em(lambda m: (m + 1, 0.0), 7, 0.3, max_iter=0)

        assert model == 7
        assert trace.kl_per_iteration == [0.3]
        assert trace.iterations_run == 0

    def test_monitor_is_recorded(self) -> None:
        """Test per-iteration monitoring in the trace records."""
        _, trace = run_em(
            lambda m: (m + 1, 1.0 / (m + 2)),
            0,
            1.0,
            max_iter=2,
            monitor=lambda m: float(m),
        )

        assert trace.mh_deviation_per_iteration == [0.0, 1.0, 2.0]
        assert trace.records()[1] == {"iter": 1, "kl": 0.5, "mh_deviation": 1.0}

    def test_records_without_monitor(self) -> None:
        """Test JSONL records of a plain trace."""
        trace = FitTrace([0.2, 0.1], 1, True, StopReason.TOLERANCE)

        assert trace.records() == [{"iter": 0, "kl": 0.2}, {"iter": 1, "kl": 0.1}]

    def test_increase_is_logged(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that a divergence increase is reported."""
        with caplog.at_level(logging.WARNING, logger="em_model.convergence"):
            run_em(lambda m: (m + 1, 2.0), 0, 1.0, max_iter=1)

        assert "K increased at step 1" in caplog.text


class TestUpdates:
    """Test the array helpers of the multiplicative updates."""

    def test_normalize_columns_with_empty_column(self) -> None:
        """Test that empty columns become uniform."""
        result = normalize_columns(np.array([[1.0, 0.0], [3.0, 0.0]]))

        np.testing.assert_allclose(result, [[0.25, 0.5], [0.75, 0.5]])

    def test_normalize_rows(self) -> None:
        """Test row normalization."""
        result = normalize_rows(np.array([[1.0, 3.0], [0.0, 0.0]]))

        np.testing.assert_allclose(result, [[0.25, 0.75], [0.5, 0.5]])

    def test_ratio_on_support(self) -> None:
        """Test F / P with zero outside the support of F."""
        table = normalize([[1, 0], [0, 1]])
        ratio = data_model_ratio(table, np.full((2, 2), 0.25))

        np.testing.assert_allclose(ratio, [[2.0, 0.0], [0.0, 2.0]])

    def test_ratio_support_mismatch(self) -> None:
        """Test that a vanishing model cell under data mass is an error."""
        table = normalize([[1, 0], [0, 1]])

        with pytest.raises(SupportMismatchError):
            data_model_ratio(table, np.array([[0.0, 0.5], [0.0, 0.5]]))

    def test_indicator_and_hard_assignments(self) -> None:
        """Test 0/1 matrices and argmax with ties to the lowest group."""
        partition = np.array([1, 0, 1], dtype=np.intp)

        np.testing.assert_array_equal(
            indicator(partition, 2), [[0, 1], [1, 0], [0, 1]]
        )
        memberships = np.array([[0.5, 0.5], [0.2, 0.8]])
        np.testing.assert_array_equal(hard_assignments(memberships), [0, 1])

    def test_random_partition_is_seeded(self) -> None:
        """Test that the same seed gives the same partition."""
        first = random_partition(np.random.default_rng(3), 10, 3)
        second = random_partition(np.random.default_rng(3), 10, 3)

        np.testing.assert_array_equal(first, second)
        assert first.min() >= 0
        assert first.max() < 3


class TestFitterRegistry:
    """Test the fitter factory and implementation registry."""

    def test_builtin_commands_registered(self) -> None:
        """Test that importing latentem registers every fitter."""
        assert available_fitters() == [
            "fit-colatent",
            "fit-latent",
            "fit-network",
            "fit-network-co",
        ]

    def test_unknown_command(self) -> None:
        """Test the factory without an implementation."""
        with pytest.raises(NotImplementedError, match="fit-nothing"):
            get_fitter("fit-nothing", FitterOptions(m=2))

    def test_registered_factory_receives_options(self) -> None:
        """Test that a registered factory builds the fitter."""
        fitter = Mock(spec=Fitter)
        factory = Mock(return_value=fitter)
        register_fitter("fit-mock", factory)
        try:
            options = FitterOptions(m=3, tol=1e-6)
            assert get_fitter("fit-mock", options) is fitter
            factory.assert_called_once_with(options)
        finally:
            em_model._FACTORIES.pop("fit-mock")

    def test_fitters_follow_protocol(self, dependent_table: ContingencyTable) -> None:
        """Test that every registered fitter returns a FitOutcome."""
        for command in available_fitters():
            fitter = get_fitter(command, FitterOptions(m=2, max_iter=20))
            assert isinstance(fitter, Fitter)
            outcome = fitter.fit(dependent_table, seed=0)
            assert isinstance(outcome, FitOutcome)
            assert outcome.row_assignments.shape == (2,)
