"""Sliding-window rate limiter; the single serialization point for clients."""

import threading
from collections import deque

from novelscope.clock import SYSTEM_CLOCK, Clock

WINDOW = 1.0  # seconds


class RateLimiter:
    """Allows at most ``rate`` grants inside any sliding 1-second window.

    ``acquire`` blocks (sleeping on the injected clock) until a slot opens.
    The lock is held across the sleep on purpose: callers are serialized
    through this point, which is the documented concurrency model.
    """

    def __init__(self, rate: int, clock: Clock = SYSTEM_CLOCK):
        if rate < 1:
            raise ValueError("rate must be >= 1")
        self._rate = rate
        self._clock = clock
        self._grants: deque[float] = deque()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            while True:
                now = self._clock.now()
                while self._grants and self._grants[0] <= now - WINDOW:
                    self._grants.popleft()
                if len(self._grants) < self._rate:
                    self._grants.append(now)
                    return
                self._clock.sleep(self._grants[0] + WINDOW - now)
