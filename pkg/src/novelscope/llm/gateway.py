"""Gateway that owns every model request made by the pipeline.

No module outside ``novelscope.llm`` constructs provider requests; everything
funnels through :meth:`Gateway.complete`, which enforces structured-output
schemas, bounded retries, a per-provider concurrency cap, and cost recording.
"""

import json
import logging
import threading
from dataclasses import dataclass, replace
from typing import Any, Protocol

from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import RetryPolicy
from novelscope.errors import ProviderUnavailable, SchemaFailure, Timeout
from novelscope.llm.cost import CostLedger
from novelscope.llm.schemas import SchemaRegistry, load_default_registry

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 120.0


@dataclass(frozen=True)
class ModelRequest:
    model_id: str
    system: str
    user: str
    schema_id: str | None = None
    temperature: float = 0.0
    max_output_tokens: int = 4096

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")


@dataclass(frozen=True)
class RawCompletion:
    """What a provider returns for one call, before schema handling."""

    text: str
    input_tokens: int
    output_tokens: int


@dataclass(frozen=True)
class ModelResponse:
    content: Any
    input_tokens: int
    output_tokens: int
    latency: float
    attempts: int = 1


class Provider(Protocol):
    def generate(self, request: ModelRequest, timeout: float) -> RawCompletion: ...


class Gateway:
    """Schema-enforcing front door for one provider.

    Transient provider failures are retried with exponential backoff; replies
    violating the requested schema trigger up to ``schema_retries`` re-prompts
    with the validation errors appended, then :class:`SchemaFailure`.
    """

    def __init__(
        self,
        provider: Provider,
        registry: SchemaRegistry | None = None,
        roster: list[str] | None = None,
        *,
        ledger: CostLedger | None = None,
        schema_retries: int = 2,
        retry_policy: RetryPolicy = RetryPolicy(),
        timeout: float = DEFAULT_TIMEOUT,
        max_concurrency: int = 8,
        clock: Clock = SYSTEM_CLOCK,
    ):
        self._provider = provider
        self._registry = registry if registry is not None else load_default_registry()
        self._roster = roster
        self._ledger = ledger
        self._schema_retries = schema_retries
        self._retry_policy = retry_policy
        self._timeout = timeout
        self._slots = threading.BoundedSemaphore(max_concurrency)
        self._clock = clock

    @property
    def registry(self) -> SchemaRegistry:
        return self._registry

    @property
    def ledger(self) -> CostLedger | None:
        return self._ledger

    def with_ledger(self, ledger: CostLedger) -> "Gateway":
        """A view of this gateway recording costs into ``ledger``.

        Shares the provider, registry, and the concurrency slots; used to give
        each evaluation its own cost accounting.
        """
        clone = Gateway.__new__(Gateway)
        clone.__dict__.update(self.__dict__)
        clone._ledger = ledger
        return clone

    def complete(self, request: ModelRequest, stage: str = "") -> ModelResponse:
        self._check_request(request)
        started = self._clock.now()
        attempts = 0
        in_tokens = 0
        out_tokens = 0
        user = request.user
        validation_errors: list[str] = []

        for _round in range(self._schema_retries + 1):
            raw, calls = self._generate_with_retries(replace(request, user=user), stage)
            attempts += calls
            in_tokens += raw.input_tokens
            out_tokens += raw.output_tokens

            if request.schema_id is None:
                return ModelResponse(
                    raw.text, in_tokens, out_tokens, self._clock.now() - started, attempts
                )

            value, errors = self._parse_structured(request.schema_id, raw.text)
            if not errors:
                return ModelResponse(
                    value, in_tokens, out_tokens, self._clock.now() - started, attempts
                )
            validation_errors = errors
            logger.debug("schema %s failed validation: %s", request.schema_id, errors)
            user = _reprompt(request.user, raw.text, errors)

        raise SchemaFailure(
            f"output for schema {request.schema_id!r} still invalid after "
            f"{self._schema_retries} re-prompts: {validation_errors}"
        )

    def _check_request(self, request: ModelRequest) -> None:
        if self._roster is not None and request.model_id not in self._roster:
            raise ValueError(f"model {request.model_id!r} is not in the configured roster")
        if request.schema_id is not None and request.schema_id not in self._registry:
            raise ValueError(f"unknown schema id {request.schema_id!r}")

    def _generate_with_retries(
        self, request: ModelRequest, stage: str
    ) -> tuple[RawCompletion, int]:
        policy = self._retry_policy
        last: Exception | None = None
        for attempt in range(policy.attempts):
            try:
                with self._slots:
                    raw = self._provider.generate(request, self._timeout)
                if self._ledger is not None:
                    self._ledger.record(
                        request.model_id, raw.input_tokens, raw.output_tokens, stage
                    )
                return raw, attempt + 1
            except (ProviderUnavailable, Timeout) as exc:
                last = exc
                if attempt + 1 < policy.attempts:
                    self._clock.sleep(policy.backoff_base * 2**attempt)
        assert last is not None
        raise last

    def _parse_structured(self, schema_id: str, text: str) -> tuple[Any, list[str]]:
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            return None, [f"reply is not valid JSON: {exc}"]
        errors = self._registry.validate(schema_id, value)
        return (value, []) if not errors else (None, errors)


def _reprompt(original_user: str, bad_reply: str, errors: list[str]) -> str:
    listed = "\n".join(f"- {e}" for e in errors)
    return (
        f"{original_user}\n\n"
        f"Your previous reply was:\n{bad_reply}\n\n"
        f"It failed validation with these errors:\n{listed}\n"
        f"Reply again with corrected JSON only."
    )
