#!/usr/bin/env python3
"""Build the reference per-year ground-truth distribution and print its table.

The synthetic file reproduces the published dataset's per-year novelty rates
(84.3 / 80.7 / 59.1 / 50.0 / 65.6 percent) from raw reviewer scores, which is
the same check the acceptance suite runs.
"""

import tempfile
from pathlib import Path

from novelscope.evalharness.groundtruth import (
    load_ground_truth,
    make_ground_truth,
    summarize_distribution,
    write_ground_truth,
)
from novelscope.evalharness.tables import format_distribution_table

COUNTS = {2022: (534, 450), 2023: (688, 555), 2024: (929, 549), 2025: (912, 456)}


def main() -> None:
    records = []
    for year, (total, novel) in COUNTS.items():
        for i in range(total):
            scores = [4, 5, 4] if i < novel else [3, 3, 2]
            records.append(
                make_ground_truth(f"y{year}-{i:04d}", scores, venue="ICLR", year=year)
            )
    with tempfile.TemporaryDirectory() as td:
        path = Path(td) / "distribution.jsonl"
        write_ground_truth(path, records)
        loaded = load_ground_truth(path)
    print(format_distribution_table(summarize_distribution(loaded)))


if __name__ == "__main__":
    main()
