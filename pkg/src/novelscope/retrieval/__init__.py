"""Related-paper production: embeddings, citation filtering, semantic matching."""

from novelscope.retrieval.citations import (
    aggregate_polarity,
    classify_polarity,
    filter_citations,
)
from novelscope.retrieval.embedding import (
    EmbeddingVector,
    HashingEmbedder,
    SentenceTransformerEmbedder,
    cosine,
)
from novelscope.retrieval.related import RelatedPaper, TermDecomposition, summarize_relation
from novelscope.retrieval.semantic import decompose_abstract, match_semantic

__all__ = [
    "EmbeddingVector",
    "HashingEmbedder",
    "RelatedPaper",
    "SentenceTransformerEmbedder",
    "TermDecomposition",
    "aggregate_polarity",
    "classify_polarity",
    "cosine",
    "decompose_abstract",
    "filter_citations",
    "match_semantic",
    "summarize_relation",
]
