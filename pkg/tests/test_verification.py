"""Tests for the verification suites and check tracing."""

import pytest

from src.exceptions import BellFdbError
from src.services.bell import BellCache
from src.services.fdb import FaaDiBrunoService
from src.services.tracing import TracingService
from src.services.verification import (
    VerificationService,
    check_agrees_with_classical,
    check_block_type_counts,
    check_set_partition_counts,
    check_zero_index,
)


@pytest.fixture
def verifier() -> VerificationService:
    engine = FaaDiBrunoService(cache=BellCache(enabled=True), workers=1)
    return VerificationService(fdb=engine, concurrency=2, order=3)


class TestSuites:
    """Every suite passes on small runs."""

    @pytest.mark.asyncio
    @pytest.mark.parametrize("suite,per_trial", [("oracle", 4), ("genfun", 3)])
    async def test_randomized_suites_pass(self, verifier, suite, per_trial):
        """No failures and one batch of checks per trial."""
        report = await verifier.run_suite(suite, seed=7, trials=4)
        assert report.failed == []
        assert report.passed
        assert report.checks == 4 * per_trial

    @pytest.mark.asyncio
    async def test_props_suite_includes_exhaustive_checks(self, verifier):
        """Trial checks plus the fixed structural checks."""
        report = await verifier.run_suite("props", seed=3, trials=3)
        assert report.failures == 0
        assert report.checks == 3 * 2 + len(verifier.props_exhaustive())
        assert verifier.last_trace["suite"] == "props"
        assert verifier.last_trace["event_count"] == report.checks

    @pytest.mark.asyncio
    async def test_same_seed_same_report(self, verifier):
        """Reports are reproducible regardless of thread scheduling."""
        first = await verifier.run_suite("oracle", seed=11, trials=3)
        second = await verifier.run_suite("oracle", seed=11, trials=3)
        assert first.model_dump() == second.model_dump()
        assert first.seed == 11 and first.trials == 3

    @pytest.mark.asyncio
    async def test_unknown_suite(self, verifier):
        """Only the three named suites exist."""
        with pytest.raises(BellFdbError):
            await verifier.run_suite("nope", seed=1, trials=1)

    def test_failed_check_is_reported(self, verifier):
        """A check returning a message becomes a failure with its trial."""
        tracer = TracingService("oracle")
        count, failures = verifier._run_checks(
            tracer, [("always_fails", lambda: "boom"), ("holds", lambda: None)], trial=5
        )
        assert count == 2
        assert [(f.name, f.detail) for f in failures] == [("always_fails", "trial 5: boom")]

    def test_raising_check_is_a_failure(self, verifier):
        """Exceptions inside a check are recorded, not propagated."""
        tracer = TracingService("props")

        def broken():
            raise ValueError("bad input")

        _, failures = verifier._run_checks(tracer, [("broken", broken)], trial=None)
        assert failures[0].detail == "exhaustive: ValueError: bad input"
        assert tracer.failures()[0].name == "broken"


class TestExhaustiveChecks:
    """A sample of the structural checks, run directly."""

    def test_checks_hold(self):
        """Each returns None."""
        assert check_zero_index() is None
        assert check_agrees_with_classical() is None
        assert check_set_partition_counts() is None
        assert check_block_type_counts() is None


class TestTracingService:
    """Event collection and summary statistics."""

    def test_summary(self):
        """Counts per name, failures and latency statistics."""
        tracer = TracingService("genfun")
        tracer.log_check("a", True, 1.0, trial=0)
        tracer.log_check("a", True, 3.0, trial=1)
        tracer.log_check("b", False, 2.0, trial=1, detail="mismatch")
        summary = tracer.get_summary()
        assert summary["suite"] == "genfun"
        assert summary["event_count"] == 3
        assert summary["check_counts"] == {"a": 2, "b": 1}
        assert summary["failures"] == 1
        assert summary["failed_checks"] == [{"name": "b", "trial": 1, "detail": "mismatch"}]
        assert summary["total_duration_ms"] == pytest.approx(6.0)
        assert 2.0 <= summary["latency_p95_ms"] <= 3.0

    def test_empty_summary(self):
        """No events means zero latency."""
        summary = TracingService("oracle").get_summary()
        assert summary["event_count"] == 0
        assert summary["latency_p95_ms"] == 0.0

    def test_log_error(self):
        """Errors are recorded as failed events with the exception type."""
        tracer = TracingService("oracle")
        tracer.log_error("x", RuntimeError("oops"), trial=2)
        [event] = tracer.failures()
        assert event.detail == "RuntimeError: oops"
        assert event.trial == 2
