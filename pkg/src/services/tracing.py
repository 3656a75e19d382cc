"""Tracing of verification checks."""

import logging
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class CheckEvent:
    """One executed check."""

    name: str
    trial: Optional[int]
    passed: bool
    duration_ms: float
    detail: str = ""
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))


class TracingService:
    """Collects check events for one suite run.

    Trials run on worker threads, so recording is guarded by a lock. Events
    carry wall-clock timings and stay out of the deterministic report.
    """

    def __init__(self, suite: str):
        self.suite = suite
        self.trace_id = str(uuid.uuid4())
        self.events: list[CheckEvent] = []
        self._lock = threading.Lock()

    def log_check(
        self,
        name: str,
        passed: bool,
        duration_ms: float,
        trial: Optional[int] = None,
        detail: str = "",
    ) -> None:
        event = CheckEvent(
            name=name, trial=trial, passed=passed, duration_ms=duration_ms, detail=detail
        )
        with self._lock:
            self.events.append(event)
        if not passed:
            logger.warning(f"[{self.suite}] check {name} failed (trial={trial}): {detail}")

    def log_error(self, name: str, error: Exception, trial: Optional[int] = None) -> None:
        """A check that raised instead of returning a verdict."""
        self.log_check(
            name, passed=False, duration_ms=0.0, trial=trial,
            detail=f"{type(error).__name__}: {error}",
        )

    def failures(self) -> list[CheckEvent]:
        with self._lock:
            return [e for e in self.events if not e.passed]

    def get_summary(self) -> dict:
        """Counts per check name plus latency statistics."""
        with self._lock:
            events = list(self.events)
        failed = self.failures()
        durations = [e.duration_ms for e in events]

        check_counts: dict[str, int] = {}
        for event in events:
            check_counts[event.name] = check_counts.get(event.name, 0) + 1

        return {
            "trace_id": self.trace_id,
            "suite": self.suite,
            "event_count": len(events),
            "check_counts": check_counts,
            "failures": len(failed),
            "failed_checks": [
                {"name": e.name, "trial": e.trial, "detail": e.detail} for e in failed
            ],
            "total_duration_ms": float(np.sum(durations)) if durations else 0.0,
            "latency_p95_ms": float(np.percentile(durations, 95)) if durations else 0.0,
        }
