"""
Soft wall-clock budget for one CLI computation; feeds the report's timing block.
"""
from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict

logger = logging.getLogger(__name__)


@dataclass
class TimeBudget:
    total_seconds: float
    start_monotonic: float

    @property
    def deadline_monotonic(self) -> float:
        return self.start_monotonic + self.total_seconds

    def remaining_seconds(self) -> float:
        now = time.monotonic()
        return max(0.0, self.deadline_monotonic - now)

    def elapsed_seconds(self) -> float:
        return max(0.0, time.monotonic() - self.start_monotonic)

    def time_exhausted(self, buffer_seconds: float = 0.0) -> bool:
        return self.remaining_seconds() <= max(0.0, buffer_seconds)

    def as_timing(self) -> Dict[str, float]:
        return {"elapsed_sec": round(self.elapsed_seconds(), 3), "remaining_sec": round(self.remaining_seconds(), 3)}


@contextmanager
def with_time_budget(total_seconds: float = 300.0):
    budget = TimeBudget(total_seconds=total_seconds, start_monotonic=time.monotonic())
    try:
        yield budget
    finally:
        if budget.time_exhausted():
            logger.warning(f"time budget of {total_seconds:.0f}s exhausted after {budget.elapsed_seconds():.1f}s")
