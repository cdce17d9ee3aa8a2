"""External-service clients with on-disk caching and rate limiting."""

from novelscope.ingest.arxiv import ArxivClient, valid_arxiv_id
from novelscope.ingest.cache import ResponseCache, canonical_key
from novelscope.ingest.ratelimit import RateLimiter
from novelscope.ingest.semantic_scholar import SemanticScholarClient, record_from_s2
from novelscope.ingest.transport import (
    CountingTransport,
    FailingTransport,
    FixtureTransport,
    HttpxTransport,
    Transport,
    TransportResponse,
    request_with_retries,
)

__all__ = [
    "ArxivClient",
    "CountingTransport",
    "FailingTransport",
    "FixtureTransport",
    "HttpxTransport",
    "RateLimiter",
    "ResponseCache",
    "SemanticScholarClient",
    "Transport",
    "TransportResponse",
    "canonical_key",
    "record_from_s2",
    "request_with_retries",
    "valid_arxiv_id",
]
