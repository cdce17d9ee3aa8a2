"""Token usage and USD cost accounting across pipeline stages."""

import math
import threading
from dataclasses import dataclass

from novelscope.config import load_pricing
from novelscope.errors import UnknownModel


@dataclass(frozen=True)
class CostEntry:
    model_id: str
    input_tokens: int
    output_tokens: int
    usd: float
    stage: str = ""


class CostLedger:
    """Append-only record of model usage.

    Totals are recomputed from the entries with :func:`math.fsum`, so they are
    exact in the order-invariant sense: permuting entry insertion order never
    changes a total.
    """

    def __init__(self, pricing: dict[str, dict[str, float]] | None = None):
        self._pricing = pricing if pricing is not None else load_pricing()
        self._entries: list[CostEntry] = []
        self._lock = threading.Lock()

    @property
    def pricing(self) -> dict[str, dict[str, float]]:
        return self._pricing

    @property
    def entries(self) -> list[CostEntry]:
        with self._lock:
            return list(self._entries)

    def record(
        self, model_id: str, input_tokens: int, output_tokens: int, stage: str = ""
    ) -> CostEntry:
        if model_id not in self._pricing:
            raise UnknownModel(f"no pricing for model {model_id!r}")
        price = self._pricing[model_id]
        usd = (
            input_tokens * price["input_per_1m"] / 1e6
            + output_tokens * price["output_per_1m"] / 1e6
        )
        entry = CostEntry(model_id, input_tokens, output_tokens, usd, stage)
        with self._lock:
            self._entries.append(entry)
        return entry

    def totals(self) -> dict[str, dict[str, float]]:
        """Per-model totals: input_tokens, output_tokens, usd."""
        entries = self.entries
        out: dict[str, dict[str, float]] = {}
        for model_id in sorted({e.model_id for e in entries}):
            own = [e for e in entries if e.model_id == model_id]
            out[model_id] = {
                "input_tokens": sum(e.input_tokens for e in own),
                "output_tokens": sum(e.output_tokens for e in own),
                "usd": math.fsum(e.usd for e in own),
            }
        return out

    def total_usd(self) -> float:
        return math.fsum(e.usd for e in self.entries)

    def to_dict(self) -> dict:
        # Entries sort canonically: concurrent stages append in completion
        # order, which must not leak into serialized (golden) output.
        ordered = sorted(
            self.entries,
            key=lambda e: (e.stage, e.model_id, e.input_tokens, e.output_tokens),
        )
        return {
            "entries": [
                {
                    "model_id": e.model_id,
                    "input_tokens": e.input_tokens,
                    "output_tokens": e.output_tokens,
                    "usd": e.usd,
                    "stage": e.stage,
                }
                for e in ordered
            ],
            "totals": self.totals(),
            "total_usd": self.total_usd(),
        }


def record_cost(
    ledger: CostLedger,
    model_id: str,
    usage: tuple[int, int],
    stage: str = "",
) -> CostEntry:
    """Append a usage entry; ``usage`` is (input_tokens, output_tokens)."""
    return ledger.record(model_id, usage[0], usage[1], stage)
