"""Structured novelty report: the JSON contract served to clients."""

import logging
from dataclasses import dataclass, field
from typing import Any

from novelscope.assess.evidence import build_evidence_text
from novelscope.assess.scoring import extract_keywords, score_from_votes, score_novelty
from novelscope.config import load_asset_text
from novelscope.errors import ReportFailed, SchemaFailure
from novelscope.graph.model import PaperGraph, linearize
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.records import PaperRecord
from novelscope.retrieval.related import RelatedPaper

logger = logging.getLogger(__name__)

MODE_FULL = "full"
MODE_ABSTRACT_ONLY = "abstract_only"


@dataclass(frozen=True)
class EvidenceItem:
    related_id: str
    explanation: str
    polarity: str  # "supports" | "contradicts"

    def to_dict(self) -> dict[str, str]:
        return {
            "related_id": self.related_id,
            "explanation": self.explanation,
            "polarity": self.polarity,
        }


@dataclass(frozen=True)
class NoveltyReport:
    paper_id: str
    score: float
    samples: tuple[int, ...]
    label: str
    summary: str
    supporting: tuple[EvidenceItem, ...]
    contradictory: tuple[EvidenceItem, ...]
    keywords: tuple[str, ...]
    cost: dict[str, Any] = field(default_factory=dict)
    mode: str = MODE_FULL
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.samples:
            expected, _ = score_from_votes(list(self.samples))
            if abs(expected - self.score) > 1e-12:
                raise ValueError("score must equal the mean of samples")
        if (self.score >= 0.5) != (self.label == "novel"):
            raise ValueError("label must follow the 0.5 threshold rule")

    def to_dict(self) -> dict[str, Any]:
        return {
            "paper_id": self.paper_id,
            "score": self.score,
            "samples": list(self.samples),
            "label": self.label,
            "summary": self.summary,
            "supporting": [e.to_dict() for e in self.supporting],
            "contradictory": [e.to_dict() for e in self.contradictory],
            "keywords": list(self.keywords),
            "cost": self.cost,
            "mode": self.mode,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "NoveltyReport":
        def items(rows: list[dict], polarity: str) -> tuple[EvidenceItem, ...]:
            return tuple(
                EvidenceItem(r["related_id"], r["explanation"], polarity) for r in rows
            )

        return cls(
            paper_id=d["paper_id"],
            score=d["score"],
            samples=tuple(d["samples"]),
            label=d["label"],
            summary=d["summary"],
            supporting=items(d["supporting"], "supports"),
            contradictory=items(d["contradictory"], "contradicts"),
            keywords=tuple(d["keywords"]),
            cost=d.get("cost", {}),
            mode=d.get("mode", MODE_FULL),
            warnings=tuple(d.get("warnings", ())),
        )


def generate_report(
    paper: PaperRecord,
    graph: PaperGraph | None,
    related: list[RelatedPaper],
    gateway: Gateway,
    model_id: str,
    k_samples: int,
    mode: str = MODE_FULL,
    warnings: tuple[str, ...] = (),
    stage: str = "assess",
) -> NoveltyReport:
    """Score the paper and synthesize the structured rationale.

    Evidence items may only cite ids present in the related set; anything else
    the model invents is dropped with a warning. Abstract-only mode passes an
    empty graph text and is flagged on the report.
    """
    graph_text = linearize(graph) if graph is not None else ""
    evidence_text = build_evidence_text(related)
    score, samples = score_novelty(
        graph_text, evidence_text, gateway, model_id, k_samples, stage=stage
    )
    _, label = score_from_votes(samples)
    keywords = extract_keywords(paper, gateway, model_id, stage=stage)

    system = load_asset_text("prompts", "report_system.txt")
    user = load_asset_text("prompts", "report_user.txt").format(
        title=paper.title,
        label=label,
        graph_text=graph_text or "(not available)",
        evidence_text=evidence_text,
    )
    try:
        response = gateway.complete(
            ModelRequest(
                model_id=model_id, system=system, user=user, schema_id="novelty_report"
            ),
            stage=stage,
        )
    except SchemaFailure as exc:
        raise ReportFailed(f"report generation failed: {exc}") from exc
    payload = response.content

    known_ids = {r.record.id for r in related}
    report_warnings = list(warnings)

    def resolve(rows: list[dict], polarity: str) -> tuple[EvidenceItem, ...]:
        kept = []
        for row in rows:
            if row["related_id"] not in known_ids:
                logger.warning("dropping evidence citing unknown id %r", row["related_id"])
                report_warnings.append(f"unknown_evidence_id:{row['related_id']}")
                continue
            kept.append(EvidenceItem(row["related_id"], row["explanation"], polarity))
        return tuple(kept)

    ledger = gateway.ledger
    return NoveltyReport(
        paper_id=paper.id,
        score=score,
        samples=tuple(samples),
        label=label,
        summary=payload["summary"],
        supporting=resolve(payload["supporting"], "supports"),
        contradictory=resolve(payload["contradictory"], "contradicts"),
        keywords=tuple(keywords),
        cost=ledger.to_dict() if ledger is not None else {},
        mode=mode,
        warnings=tuple(report_warnings),
    )
