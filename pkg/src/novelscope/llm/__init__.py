"""Provider-agnostic gateway for schema-constrained model requests."""

from novelscope.llm.cost import CostEntry, CostLedger, record_cost
from novelscope.llm.gateway import Gateway, ModelRequest, ModelResponse, RawCompletion
from novelscope.llm.mock import MockProvider
from novelscope.llm.schemas import SchemaRegistry, load_default_registry

__all__ = [
    "CostEntry",
    "CostLedger",
    "Gateway",
    "MockProvider",
    "ModelRequest",
    "ModelResponse",
    "RawCompletion",
    "SchemaRegistry",
    "load_default_registry",
    "record_cost",
]
