import threading

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


class FakeClock:
    """Manual clock: sleep() advances time instead of blocking."""

    def __init__(self, start: float = 1_000_000.0):
        self._now = start
        self._lock = threading.Lock()

    def now(self) -> float:
        with self._lock:
            return self._now

    def sleep(self, seconds: float) -> None:
        with self._lock:
            if seconds > 0:
                self._now += seconds

    def advance(self, seconds: float) -> None:
        self.sleep(seconds)


@pytest.fixture
def fake_clock() -> FakeClock:
    return FakeClock()
