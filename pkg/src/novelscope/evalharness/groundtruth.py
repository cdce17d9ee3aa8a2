"""Ground-truth novelty labels from reviewer originality scores.

Reviewer scores are on the 1-5 originality scale. A paper's label comes from
the median of its scores, with even-length lists using midpoint averaging;
a median of 4 or higher means novel. The strict >=4 rule puts an even-split
median of 3.5 on the not-novel side.
"""

import json
import statistics
from dataclasses import dataclass
from pathlib import Path

from novelscope.errors import EmptyScores, OutOfRange

LABEL_NOVEL = "novel"
LABEL_NOT_NOVEL = "not_novel"


@dataclass(frozen=True)
class GroundTruth:
    paper_id: str
    originality_scores: tuple[int, ...]
    median: float
    label: str
    venue: str = ""
    year: int | None = None


def binarize(scores: list[int]) -> tuple[float, str]:
    """(median, label) for a list of 1-5 originality scores."""
    if not scores:
        raise EmptyScores("cannot binarize an empty score list")
    for score in scores:
        if not 1 <= score <= 5:
            raise OutOfRange(f"originality score {score} outside [1, 5]")
    median = float(statistics.median(scores))
    return median, LABEL_NOVEL if median >= 4 else LABEL_NOT_NOVEL


def make_ground_truth(
    paper_id: str, scores: list[int], venue: str = "", year: int | None = None
) -> GroundTruth:
    median, label = binarize(scores)
    return GroundTruth(
        paper_id=paper_id,
        originality_scores=tuple(scores),
        median=median,
        label=label,
        venue=venue,
        year=year,
    )


def load_ground_truth(path: Path) -> list[GroundTruth]:
    """Read one-record-per-line JSON: {"id", "scores", "venue", "year"}."""
    records = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        row = json.loads(line)
        records.append(
            make_ground_truth(
                row["id"], row["scores"], row.get("venue", ""), row.get("year")
            )
        )
    return records


def write_ground_truth(path: Path, records: list[GroundTruth]) -> None:
    lines = [
        json.dumps(
            {
                "id": r.paper_id,
                "scores": list(r.originality_scores),
                "venue": r.venue,
                "year": r.year,
            },
            sort_keys=True,
        )
        for r in records
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def summarize_distribution(records: list[GroundTruth]) -> list[dict]:
    """Per-year counts and novel rates, with a Total row, like a dataset table."""
    years = sorted({r.year for r in records if r.year is not None})
    rows = []
    for year in years:
        own = [r for r in records if r.year == year]
        novel = sum(1 for r in own if r.label == LABEL_NOVEL)
        rows.append(
            {
                "year": str(year),
                "count": len(own),
                "novel": novel,
                "novel_pct": round(100 * novel / len(own), 1),
            }
        )
    total_novel = sum(1 for r in records if r.label == LABEL_NOVEL)
    rows.append(
        {
            "year": "Total",
            "count": len(records),
            "novel": total_novel,
            "novel_pct": round(100 * total_novel / len(records), 1) if records else 0.0,
        }
    )
    return rows
