"""Related-paper record and relation-aware summaries."""

import logging
from dataclasses import dataclass, field, replace
from typing import Any

from novelscope.config import load_asset_text
from novelscope.errors import NovelscopeError, SchemaFailure
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.records import PaperRecord
from novelscope.texparse.contexts import CitationContext

logger = logging.getLogger(__name__)

CITATION_CLASSES = ("supporting", "contrasting")
SEMANTIC_CLASSES = ("background", "target")


@dataclass(frozen=True)
class TermDecomposition:
    """An abstract split into what motivates the work and what it pursues."""

    background: str = ""
    target: str = ""

    def __post_init__(self) -> None:
        if not self.background.strip() and not self.target.strip():
            raise ValueError("decomposition needs at least one nonempty field")


@dataclass(frozen=True)
class RelatedPaper:
    """A retrieved neighbour of the main paper.

    Citation-sourced papers carry their classified citation contexts;
    semantic ones carry the matched background/target text. ``similarity``
    is the display value in [0, 1]; the raw cosine is kept alongside.
    """

    record: PaperRecord
    source: str  # "citation" | "semantic"
    relation_class: str
    similarity: float
    similarity_raw: float
    summary: str = ""
    contexts: tuple[tuple[CitationContext, str], ...] = ()
    matched_text: str = ""

    def __post_init__(self) -> None:
        if self.source == "citation":
            if self.relation_class not in CITATION_CLASSES:
                raise ValueError(f"bad citation class {self.relation_class!r}")
            if not self.contexts:
                raise ValueError("citation-sourced related paper needs contexts")
            if self.matched_text:
                raise ValueError("citation-sourced related paper cannot carry matched_text")
        elif self.source == "semantic":
            if self.relation_class not in SEMANTIC_CLASSES:
                raise ValueError(f"bad semantic class {self.relation_class!r}")
            if not self.matched_text:
                raise ValueError("semantic related paper needs matched_text")
            if self.contexts:
                raise ValueError("semantic related paper cannot carry contexts")
        else:
            raise ValueError(f"unknown source {self.source!r}")
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError("similarity must be in [0, 1]")

    def with_summary(self, summary: str) -> "RelatedPaper":
        return replace(self, summary=summary)

    def to_dict(self) -> dict[str, Any]:
        return {
            "record": self.record.to_dict(),
            "source": self.source,
            "class": self.relation_class,
            "similarity": self.similarity,
            "similarity_raw": self.similarity_raw,
            "summary": self.summary,
            "contexts": [
                {
                    "citation_key": c.citation_key,
                    "sentence": c.sentence,
                    "section_heading": c.section_heading,
                    "position": list(c.position),
                    "polarity": polarity,
                }
                for c, polarity in self.contexts
            ],
            "matched_text": self.matched_text,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RelatedPaper":
        contexts = tuple(
            (
                CitationContext(
                    citation_key=c["citation_key"],
                    sentence=c["sentence"],
                    section_heading=c["section_heading"],
                    position=tuple(c["position"]),
                ),
                c["polarity"],
            )
            for c in d.get("contexts", ())
        )
        return cls(
            record=PaperRecord.from_dict(d["record"]),
            source=d["source"],
            relation_class=d["class"],
            similarity=d["similarity"],
            similarity_raw=d.get("similarity_raw", d["similarity"]),
            summary=d.get("summary", ""),
            contexts=contexts,
            matched_text=d.get("matched_text", ""),
        )


def summarize_relation(
    main: PaperRecord,
    related: RelatedPaper,
    gateway: Gateway,
    model_id: str,
    stage: str = "classify",
) -> str:
    """Relation-aware summary; falls back to a template on model failure."""
    if related.source == "citation":
        detail = "Citation contexts:\n" + "\n".join(
            f"- [{polarity}] {c.sentence}" for c, polarity in related.contexts
        )
    else:
        detail = f"Matched {related.relation_class} text: {related.matched_text}"

    system = load_asset_text("prompts", "relation_summary_system.txt")
    user = load_asset_text("prompts", "relation_summary_user.txt").format(
        main_title=main.title,
        main_abstract=main.abstract,
        related_title=related.record.title,
        relation_class=related.relation_class,
        detail=detail,
    )
    try:
        response = gateway.complete(
            ModelRequest(
                model_id=model_id, system=system, user=user, schema_id="relation_summary"
            ),
            stage=stage,
        )
        summary = response.content["summary"].strip()
        if summary:
            return summary
    except (SchemaFailure, NovelscopeError) as exc:
        logger.warning("relation summary failed for %s: %s", related.record.id, exc)
    return fallback_summary(related)


def fallback_summary(related: RelatedPaper) -> str:
    return (
        f"{related.record.title} appears as a {related.relation_class} "
        f"{related.source} paper relative to the main work."
    )
