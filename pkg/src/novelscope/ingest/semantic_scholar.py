"""Semantic Scholar client: paper metadata, citations, and recommendations."""

import json
import logging
import random

from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import RetryPolicy
from novelscope.errors import BadRequest
from novelscope.ingest.cache import ResponseCache, canonical_key
from novelscope.ingest.ratelimit import RateLimiter
from novelscope.ingest.transport import Transport, request_with_retries
from novelscope.records import PaperRecord, RecommendationBatch, dedupe_records

logger = logging.getLogger(__name__)

BASE_URL = "https://api.semanticscholar.org"
PAPER_URL = BASE_URL + "/graph/v1/paper/{paper_id}"
RECOMMEND_URL = BASE_URL + "/recommendations/v1/papers/forpaper/{paper_id}"

PAPER_FIELDS = [
    "paperId",
    "title",
    "abstract",
    "year",
    "authors",
    "venue",
    "url",
    "citationCount",
    "externalIds",
]
METADATA_FIELDS = PAPER_FIELDS + [f"references.{f}" for f in PAPER_FIELDS]
MAX_RECOMMENDATIONS = 100


def record_from_s2(data: dict, fallback_id: str) -> PaperRecord | None:
    """Best-effort conversion; returns None when there is no usable title."""
    title = (data.get("title") or "").strip()
    if not title:
        return None
    paper_id = data.get("paperId")
    year = data.get("year")
    if year is not None and not 1900 <= year <= 2100:
        year = None
    citation_count = data.get("citationCount")
    if citation_count is not None and citation_count < 0:
        citation_count = None
    external = data.get("externalIds") or {}
    return PaperRecord(
        id=f"s2:{paper_id}" if paper_id else fallback_id,
        title=title,
        abstract=(data.get("abstract") or "").strip(),
        authors=tuple(a.get("name", "") for a in data.get("authors") or ()),
        year=year,
        arxiv_id=external.get("ArXiv"),
        venue=data.get("venue") or None,
        url=data.get("url") or None,
        citation_count=citation_count,
    )


class SemanticScholarClient:
    """Metadata and recommendation lookups with caching and rate limiting."""

    def __init__(
        self,
        transport: Transport,
        cache: ResponseCache | None = None,
        limiter: RateLimiter | None = None,
        *,
        api_key: str | None = None,
        retry_policy: RetryPolicy = RetryPolicy(),
        clock: Clock = SYSTEM_CLOCK,
        rng: random.Random | None = None,
    ):
        self._transport = transport
        self._cache = cache
        self._limiter = limiter
        self._headers = {"x-api-key": api_key} if api_key else {}
        self._retry_policy = retry_policy
        self._clock = clock
        self._rng = rng or random.Random()

    def _fetch_json(self, endpoint: str, url: str, params: dict[str, str]) -> dict:
        key = canonical_key(endpoint, {"url": url, **params})
        if self._cache is not None:
            hit = self._cache.get(key)
            if hit is not None:
                return json.loads(hit)
        if self._limiter is not None:
            self._limiter.acquire()
        response = request_with_retries(
            self._transport,
            "GET",
            url,
            params=params,
            headers=self._headers,
            policy=self._retry_policy,
            clock=self._clock,
            rng=self._rng,
        )
        if self._cache is not None:
            self._cache.put(key, response.body)
        return json.loads(response.body)

    def fetch_metadata(self, paper_id: str) -> tuple[PaperRecord, list[PaperRecord]]:
        """Main record plus one record per reference that carries a title."""
        url = PAPER_URL.format(paper_id=paper_id)
        data = self._fetch_json(
            "s2.paper", url, {"fields": ",".join(METADATA_FIELDS)}
        )
        main = record_from_s2(data, fallback_id=f"s2:{paper_id}")
        if main is None:
            raise BadRequest(f"paper {paper_id} has no title in the metadata response")
        cited: list[PaperRecord] = []
        for i, ref in enumerate(data.get("references") or ()):
            record = record_from_s2(ref, fallback_id=f"ref:{paper_id}:{i}")
            if record is not None:
                cited.append(record)
        return main, dedupe_records(cited)

    def fetch_recommendations(self, seed: str, n: int) -> RecommendationBatch:
        """Up to ``n`` recommended papers, deduplicated, seed excluded."""
        if not 1 <= n <= MAX_RECOMMENDATIONS:
            raise BadRequest(f"n must be in [1, {MAX_RECOMMENDATIONS}]")
        url = RECOMMEND_URL.format(paper_id=seed)
        data = self._fetch_json(
            "s2.recommendations",
            url,
            {"limit": str(n), "fields": ",".join(PAPER_FIELDS)},
        )
        seed_id = seed if seed.startswith("s2:") else f"s2:{seed}"
        records = []
        for i, row in enumerate(data.get("recommendedPapers") or ()):
            record = record_from_s2(row, fallback_id=f"rec:{seed}:{i}")
            if record is not None and record.id != seed_id:
                records.append(record)
        return RecommendationBatch(
            seed_id=seed_id,
            papers=tuple(dedupe_records(records)[:n]),
            requested=n,
        )
