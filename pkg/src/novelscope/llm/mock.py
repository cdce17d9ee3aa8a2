"""Deterministic mock provider: the backbone of every golden-file test."""

import hashlib
import json
import math
from collections import deque
from typing import Any, Callable

from novelscope.llm.gateway import ModelRequest, RawCompletion

Handler = Callable[[ModelRequest], Any]


def user_digest(user: str) -> str:
    return hashlib.sha256(user.encode("utf-8")).hexdigest()[:16]


def approx_tokens(text: str) -> int:
    # Rough 4-chars-per-token accounting, matching typical tokenizer density.
    return max(1, math.ceil(len(text) / 4))


class MockProvider:
    """In-memory provider with three lookup layers.

    1. ``script``: a per-(schema_id, digest) FIFO of steps, for retry tests.
       Exception steps are raised; the final step repeats forever.
    2. ``register``: exact fixture value for (schema_id, digest of user text).
    3. ``register_handler``: deterministic fallback per schema_id, computed
       from the request content.

    Identical requests resolved through layers 2-3 always yield identical
    completions, which is what keeps pipeline outputs byte-stable.
    """

    def __init__(self) -> None:
        self._exact: dict[tuple[str | None, str], Any] = {}
        self._handlers: dict[str | None, Handler] = {}
        self._scripts: dict[tuple[str | None, str], deque[Any]] = {}
        self.calls = 0

    def register(self, schema_id: str | None, user: str, value: Any) -> None:
        """Fixture value for requests whose user text equals ``user``."""
        self._exact[(schema_id, user_digest(user))] = value

    def register_digest(self, schema_id: str | None, digest: str, value: Any) -> None:
        self._exact[(schema_id, digest)] = value

    def register_handler(self, schema_id: str | None, handler: Handler) -> None:
        self._handlers[schema_id] = handler

    def script(self, schema_id: str | None, user: str, steps: list[Any]) -> None:
        """Queue stateful steps for one request key; last step repeats."""
        self._scripts[(schema_id, user_digest(user))] = deque(steps)

    def generate(self, request: ModelRequest, timeout: float) -> RawCompletion:
        self.calls += 1
        value = self._resolve(request)
        if isinstance(value, Exception):
            raise value
        if isinstance(value, type) and issubclass(value, Exception):
            raise value("scripted failure")
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        return RawCompletion(
            text=text,
            input_tokens=approx_tokens(request.system + request.user),
            output_tokens=approx_tokens(text),
        )

    def _resolve(self, request: ModelRequest) -> Any:
        key = (request.schema_id, user_digest(request.user))
        script = self._scripts.get(key)
        if script:
            return script.popleft() if len(script) > 1 else script[0]
        if key in self._exact:
            return self._exact[key]
        handler = self._handlers.get(request.schema_id)
        if handler is not None:
            return handler(request)
        raise LookupError(
            f"no mock registered for schema={request.schema_id!r} "
            f"digest={key[1]} user[:120]={request.user[:120]!r}"
        )
