"""Core paper record types shared across the pipeline."""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class PaperRecord:
    """A paper's identity and metadata.

    ``id`` must be unique within any collection the record appears in; ids are
    prefixed by their origin (``s2:``, ``arxiv:``, ``bib:``) so records from
    different sources never collide by accident.
    """

    id: str
    title: str
    abstract: str = ""
    authors: tuple[str, ...] = ()
    year: int | None = None
    arxiv_id: str | None = None
    venue: str | None = None
    url: str | None = None
    citation_count: int | None = None

    def __post_init__(self) -> None:
        if not self.title.strip():
            raise ValueError("PaperRecord.title must be nonempty")
        if self.year is not None and not 1900 <= self.year <= 2100:
            raise ValueError(f"PaperRecord.year out of range: {self.year}")
        if self.citation_count is not None and self.citation_count < 0:
            raise ValueError("citation_count must be nonnegative")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "abstract": self.abstract,
            "authors": list(self.authors),
            "year": self.year,
            "arxiv_id": self.arxiv_id,
            "venue": self.venue,
            "url": self.url,
            "citation_count": self.citation_count,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PaperRecord":
        return cls(
            id=d["id"],
            title=d["title"],
            abstract=d.get("abstract") or "",
            authors=tuple(d.get("authors") or ()),
            year=d.get("year"),
            arxiv_id=d.get("arxiv_id"),
            venue=d.get("venue"),
            url=d.get("url"),
            citation_count=d.get("citation_count"),
        )


@dataclass(frozen=True)
class LatexBundle:
    """Resolved LaTeX source of one arXiv paper.

    ``main_source`` is the main file (the one containing ``\\begin{document}``)
    with include directives inlined; ``bib_sources`` holds the raw text of any
    bibliography files shipped alongside it.
    """

    arxiv_id: str
    main_source: str
    bib_sources: tuple[str, ...] = ()
    fetched_at: float = 0.0

    def __post_init__(self) -> None:
        if not self.main_source:
            raise ValueError("LatexBundle.main_source must be nonempty")


@dataclass(frozen=True)
class RecommendationBatch:
    """Recommended papers for a seed, deduplicated and with the seed excluded."""

    seed_id: str
    papers: tuple[PaperRecord, ...]
    requested: int

    def __post_init__(self) -> None:
        if self.requested <= 0:
            raise ValueError("requested must be positive")
        ids = [p.id for p in self.papers]
        if len(ids) != len(set(ids)):
            raise ValueError("RecommendationBatch contains duplicate paper ids")
        if self.seed_id in ids:
            raise ValueError("seed paper must not appear among recommendations")


def dedupe_records(records: list[PaperRecord]) -> list[PaperRecord]:
    """Drop later duplicates by id, preserving first-seen order."""
    seen: set[str] = set()
    out: list[PaperRecord] = []
    for r in records:
        if r.id not in seen:
            seen.add(r.id)
            out.append(r)
    return out
