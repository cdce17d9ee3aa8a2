"""HTTP transport abstraction so every client is testable with fixtures.

All network access in the package goes through a :class:`Transport`; tests
inject :class:`FixtureTransport` (optionally wrapped in
:class:`CountingTransport`) and never touch the network.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Mapping, Protocol

from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import RetryPolicy
from novelscope.errors import NotFound, RateLimited, UpstreamUnavailable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransportResponse:
    status: int
    body: bytes
    headers: Mapping[str, str] = field(default_factory=dict)


class TransportError(Exception):
    """Connection-level failure (DNS, refused, reset); always retriable."""


class Transport(Protocol):
    def request(
        self,
        method: str,
        url: str,
        params: Mapping[str, str] | None = None,
        headers: Mapping[str, str] | None = None,
    ) -> TransportResponse: ...


class HttpxTransport:
    """Real transport backed by httpx; imported lazily to keep tests light."""

    def __init__(self, timeout: float = 30.0):
        import httpx

        self._client = httpx.Client(timeout=timeout, follow_redirects=True)
        self._exceptions = (httpx.TransportError, httpx.TimeoutException)

    def request(self, method, url, params=None, headers=None):  # pragma: no cover
        try:
            response = self._client.request(method, url, params=params, headers=headers)
        except self._exceptions as exc:
            raise TransportError(str(exc)) from exc
        return TransportResponse(
            status=response.status_code,
            body=response.content,
            headers=dict(response.headers),
        )


def canonical_url(url: str, params: Mapping[str, str] | None) -> str:
    if not params:
        return url
    query = "&".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{url}?{query}"


class FixtureTransport:
    """Serves recorded responses keyed by method and canonical URL."""

    def __init__(self) -> None:
        self._responses: dict[tuple[str, str], TransportResponse] = {}

    def add(
        self,
        method: str,
        url: str,
        params: Mapping[str, str] | None = None,
        *,
        status: int = 200,
        body: bytes | str = b"",
        headers: Mapping[str, str] | None = None,
    ) -> None:
        if isinstance(body, str):
            body = body.encode("utf-8")
        key = (method.upper(), canonical_url(url, params))
        self._responses[key] = TransportResponse(status, body, headers or {})

    def request(self, method, url, params=None, headers=None):
        key = (method.upper(), canonical_url(url, params))
        if key not in self._responses:
            raise LookupError(f"no fixture for {key[0]} {key[1]}")
        return self._responses[key]


class CountingTransport:
    """Wrapper that counts upstream calls; used to verify cache idempotence."""

    def __init__(self, inner: Transport):
        self._inner = inner
        self.calls = 0

    def request(self, method, url, params=None, headers=None):
        self.calls += 1
        return self._inner.request(method, url, params=params, headers=headers)


class FailingTransport:
    """Fails a fixed number of times before delegating; for retry tests."""

    def __init__(self, inner: Transport, failures: int, status: int | None = None):
        self._inner = inner
        self._failures = failures
        self._status = status  # None -> raise TransportError instead

    def request(self, method, url, params=None, headers=None):
        if self._failures > 0:
            self._failures -= 1
            if self._status is None:
                raise TransportError("injected connection failure")
            return TransportResponse(self._status, b"")
        return self._inner.request(method, url, params=params, headers=headers)


def request_with_retries(
    transport: Transport,
    method: str,
    url: str,
    params: Mapping[str, str] | None = None,
    headers: Mapping[str, str] | None = None,
    *,
    policy: RetryPolicy = RetryPolicy(),
    clock: Clock = SYSTEM_CLOCK,
    rng: random.Random | None = None,
) -> TransportResponse:
    """One upstream request with bounded retries on transient failures.

    Transient means a connection error or a 5xx status. 404 raises
    :class:`NotFound` and 429 :class:`RateLimited`, neither retried. Backoff
    is exponential from ``policy.backoff_base`` with multiplicative jitter.
    """
    rng = rng or random.Random()
    last_error: Exception | None = None
    for attempt in range(policy.attempts):
        try:
            response = transport.request(method, url, params=params, headers=headers)
        except TransportError as exc:
            last_error = UpstreamUnavailable(f"{method} {url}: {exc}")
        else:
            if response.status == 404:
                raise NotFound(f"{method} {url} -> 404")
            if response.status == 429:
                raise RateLimited(f"{method} {url} -> 429")
            if response.status >= 500:
                last_error = UpstreamUnavailable(f"{method} {url} -> {response.status}")
            elif response.status >= 400:
                raise UpstreamUnavailable(f"{method} {url} -> {response.status}")
            else:
                return response
        if attempt + 1 < policy.attempts:
            delay = policy.backoff_base * 2**attempt
            delay *= 1.0 + policy.jitter * rng.random()
            logger.debug("retrying %s %s in %.2fs", method, url, delay)
            clock.sleep(delay)
    assert last_error is not None
    raise last_error
