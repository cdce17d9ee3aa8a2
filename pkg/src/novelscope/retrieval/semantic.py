"""Semantic-side retrieval: abstract decomposition and background/target matching."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from novelscope.config import DEFAULT_PARALLELISM, load_asset_text
from novelscope.errors import ExtractionFailed, SchemaFailure
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.records import PaperRecord, RecommendationBatch
from novelscope.retrieval.embedding import Embedder, clamp_display, cosine
from novelscope.retrieval.related import RelatedPaper, TermDecomposition

logger = logging.getLogger(__name__)


def decompose_abstract(
    abstract: str,
    gateway: Gateway,
    model_id: str,
    stage: str = "classify",
) -> TermDecomposition:
    """Split an abstract into background and target via a schema-constrained call."""
    if not abstract.strip():
        raise ValueError("abstract must be nonempty")
    system = load_asset_text("prompts", "decompose_system.txt")
    user = load_asset_text("prompts", "decompose_user.txt").format(abstract=abstract)
    try:
        response = gateway.complete(
            ModelRequest(model_id=model_id, system=system, user=user, schema_id="decompose"),
            stage=stage,
        )
    except SchemaFailure as exc:
        raise ExtractionFailed(f"abstract decomposition failed: {exc}") from exc
    payload = response.content
    return TermDecomposition(
        background=payload["background"].strip(), target=payload["target"].strip()
    )


@dataclass(frozen=True)
class _Match:
    record: PaperRecord
    relation_class: str
    similarity_raw: float
    matched_text: str


def match_semantic(
    main_terms: TermDecomposition,
    batch: RecommendationBatch,
    k: int,
    gateway: Gateway,
    model_id: str,
    embedder: Embedder,
    cutoff_year: int | None = None,
    parallelism: int = DEFAULT_PARALLELISM,
) -> list[RelatedPaper]:
    """Rank recommended papers by background/target similarity to the main paper.

    Each candidate abstract is decomposed, then scored as the max of the
    background-background and target-target cosines; the winning pairing
    decides the relation class (background on ties). Candidates published
    after ``cutoff_year`` are dropped when a cutoff is given. Decomposition
    fans out over ``parallelism`` workers; candidates are processed in id
    order so concurrency never changes the result.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    candidates = [
        record
        for record in sorted(batch.papers, key=lambda r: r.id)
        if cutoff_year is None or record.year is None or record.year <= cutoff_year
    ]
    candidates = [c for c in candidates if c.abstract.strip()]
    if not candidates:
        return []

    main_bg = embedder.embed(main_terms.background) if main_terms.background else None
    main_tg = embedder.embed(main_terms.target) if main_terms.target else None

    def decompose_one(record: PaperRecord) -> TermDecomposition | None:
        try:
            return decompose_abstract(record.abstract, gateway, model_id)
        except (ExtractionFailed, ValueError) as exc:
            logger.warning("skipping candidate %s: %s", record.id, exc)
            return None

    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        decomposed = list(pool.map(decompose_one, candidates))

    matches: list[_Match] = []
    for record, terms in zip(candidates, decomposed):
        if terms is None:
            continue
        pairings: list[tuple[float, str, str]] = []
        if main_bg is not None and terms.background:
            pairings.append(
                (cosine(main_bg, embedder.embed(terms.background)), "background", terms.background)
            )
        if main_tg is not None and terms.target:
            pairings.append(
                (cosine(main_tg, embedder.embed(terms.target)), "target", terms.target)
            )
        if not pairings:
            continue
        # max similarity wins; background wins exact ties (list order).
        best = max(pairings, key=lambda p: p[0])
        matches.append(
            _Match(
                record=record,
                relation_class=best[1],
                similarity_raw=best[0],
                matched_text=best[2],
            )
        )

    matches.sort(key=lambda m: (-m.similarity_raw, m.record.id))
    return [
        RelatedPaper(
            record=m.record,
            source="semantic",
            relation_class=m.relation_class,
            similarity=clamp_display(m.similarity_raw),
            similarity_raw=m.similarity_raw,
            matched_text=m.matched_text,
        )
        for m in matches[:k]
    ]
