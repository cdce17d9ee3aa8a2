"""Citation-side retrieval: similarity filtering and polarity classification."""

import logging
from collections import Counter

from novelscope.config import load_asset_text
from novelscope.errors import EmptyLabels, ExtractionFailed, SchemaFailure
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.records import PaperRecord
from novelscope.retrieval.embedding import Embedder, cosine
from novelscope.texparse.contexts import CitationContext

logger = logging.getLogger(__name__)


def similarity_text(record: PaperRecord) -> str:
    # Title plus abstract; abstract may be missing for bibliography-only records.
    return f"{record.title} {record.abstract}".strip()


def filter_citations(
    main: PaperRecord,
    cited: list[PaperRecord],
    k: int,
    embedder: Embedder,
) -> list[tuple[PaperRecord, float]]:
    """Top-k cited papers by cosine similarity to the main paper.

    Similarity compares title+abstract embeddings; ties break by id
    lexicographic so rankings are reproducible. Returns (record, raw cosine)
    pairs in rank order; fewer than k when the pool is smaller.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not cited:
        return []
    main_vec = embedder.embed(similarity_text(main))
    scored = [
        (record, cosine(main_vec, embedder.embed(similarity_text(record))))
        for record in cited
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0].id))
    return scored[:k]


def classify_polarity(
    context: CitationContext,
    gateway: Gateway,
    model_id: str,
    stage: str = "classify",
) -> str:
    """positive | negative for one citation context."""
    if not context.sentence.strip():
        raise ValueError("context sentence must be nonempty")
    system = load_asset_text("prompts", "polarity_system.txt")
    user = load_asset_text("prompts", "polarity_user.txt").format(
        section=context.section_heading,
        sentence=context.sentence,
        key=context.citation_key,
    )
    try:
        response = gateway.complete(
            ModelRequest(model_id=model_id, system=system, user=user, schema_id="polarity"),
            stage=stage,
        )
    except SchemaFailure as exc:
        raise ExtractionFailed(f"polarity classification failed: {exc}") from exc
    return response.content["polarity"]


def aggregate_polarity(labels: list[str]) -> str:
    """supporting when strictly more positive; ties count as contrasting.

    The conservative tie rule avoids overstating support when the evidence is
    split. Permutation-invariant by construction.
    """
    if not labels:
        raise EmptyLabels("cannot aggregate zero polarity labels")
    counts = Counter(labels)
    unknown = set(counts) - {"positive", "negative"}
    if unknown:
        raise ValueError(f"unknown polarity labels: {sorted(unknown)}")
    return "supporting" if counts["positive"] > counts["negative"] else "contrasting"
