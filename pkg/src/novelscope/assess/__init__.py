"""Final novelty scoring and report synthesis."""

from novelscope.assess.evidence import NO_RELATED_MARKER, build_evidence_text
from novelscope.assess.report import EvidenceItem, NoveltyReport, generate_report
from novelscope.assess.scoring import extract_keywords, score_novelty

__all__ = [
    "EvidenceItem",
    "NO_RELATED_MARKER",
    "NoveltyReport",
    "build_evidence_text",
    "extract_keywords",
    "generate_report",
    "score_novelty",
]
