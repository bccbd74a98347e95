"""Token-bucket rate limiter, shared by concurrent callers."""

from __future__ import annotations

import threading
import time


class TokenBucket:
    """Allows bursts up to ``capacity`` and refills at ``rate_per_minute``.

    ``clock`` and ``sleep`` are injectable so tests never wait on wall time.
    """

    def __init__(
        self,
        rate_per_minute: float,
        capacity: int | None = None,
        *,
        clock=time.monotonic,
        sleep=time.sleep,
    ):
        if rate_per_minute <= 0:
            raise ValueError("rate_per_minute must be positive")
        self._rate = rate_per_minute / 60.0
        self._capacity = float(capacity if capacity is not None else max(1, int(rate_per_minute)))
        self._tokens = self._capacity
        self._clock = clock
        self._sleep = sleep
        self._last = clock()
        self._lock = threading.Lock()

    def acquire(self) -> float:
        """Block until a token is available; returns seconds waited."""
        waited = 0.0
        while True:
            with self._lock:
                self._refill()
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return waited
                deficit = (1.0 - self._tokens) / self._rate
            self._sleep(deficit)
            waited += deficit

    def _refill(self) -> None:
        now = self._clock()
        self._tokens = min(self._capacity, self._tokens + (now - self._last) * self._rate)
        self._last = now
