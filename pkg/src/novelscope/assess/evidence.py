"""Compile related papers into the evidence list fed to the scoring model."""

from novelscope.retrieval.related import RelatedPaper

NO_RELATED_MARKER = "No related papers were retrieved for this paper."


def evidence_order(related: list[RelatedPaper]) -> list[RelatedPaper]:
    """Citations before semantic matches, then similarity descending, then id."""
    source_rank = {"citation": 0, "semantic": 1}
    return sorted(
        related,
        key=lambda r: (source_rank[r.source], -r.similarity_raw, r.record.id),
    )


def build_evidence_text(related: list[RelatedPaper]) -> str:
    """One paragraph per related paper: id, title, relation type, summary."""
    if not related:
        return NO_RELATED_MARKER
    paragraphs = []
    for paper in evidence_order(related):
        paragraphs.append(
            f"[{paper.record.id}] {paper.record.title}\n"
            f"Relation: {paper.relation_class} ({paper.source})\n"
            f"Summary: {paper.summary or '(no summary)'}"
        )
    return "\n\n".join(paragraphs)
