"""Aligned plain-text tables for metrics and tournament ratings."""

from novelscope.evalharness.bradley_terry import BTRatings
from novelscope.evalharness.metrics import Metrics


def _render(header: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]

    def line(cells: list[str]) -> str:
        return "  ".join(c.ljust(widths[i]) for i, c in enumerate(cells)).rstrip()

    rule = "-" * len(line(header))
    return "\n".join([line(header), rule] + [line(r) for r in rows])


def format_metrics_table(results: dict[str, Metrics]) -> str:
    """Systems as rows; precision, recall, F1, accuracy as columns."""
    header = ["System", "Precision", "Recall", "F1", "Accuracy"]
    rows = [
        [name, f"{m.precision:.4f}", f"{m.recall:.4f}", f"{m.f1:.4f}", f"{m.accuracy:.4f}"]
        for name, m in results.items()
    ]
    return _render(header, rows)


def format_ratings_table(ratings: BTRatings) -> str:
    """Systems as rows; one display-rating column per dimension."""
    dimensions = list(ratings.per_dimension)
    systems = sorted(
        {s for fit in ratings.per_dimension.values() for s in fit.ratings}
    )
    header = ["System"] + [d.capitalize() for d in dimensions]
    rows = []
    for system in systems:
        cells = [system]
        for dimension in dimensions:
            fit = ratings.per_dimension[dimension]
            if system in fit.ratings:
                cells.append(f"{fit.ratings[system].display_rating:.0f}")
            else:
                cells.append("-")
        rows.append(cells)
    return _render(header, rows)


def format_distribution_table(rows: list[dict]) -> str:
    """Year, paper count, novel count, and novel percentage per year."""
    header = ["Year", "Count", "Novel", "Novel %"]
    body = [
        [str(r["year"]), str(r["count"]), str(r["novel"]), f"{r['novel_pct']:.1f}%"]
        for r in rows
    ]
    return _render(header, body)
