"""Evaluation protocol: ground truth, metrics, and the rationale tournament."""

from novelscope.evalharness.bradley_terry import BTRatings, DimensionFit, fit_bradley_terry
from novelscope.evalharness.groundtruth import (
    GroundTruth,
    binarize,
    load_ground_truth,
    make_ground_truth,
    summarize_distribution,
    write_ground_truth,
)
from novelscope.evalharness.metrics import Metrics, compute_metrics
from novelscope.evalharness.tables import format_metrics_table, format_ratings_table
from novelscope.evalharness.tournament import (
    DIMENSIONS,
    PairwiseJudgment,
    run_tournament,
)

__all__ = [
    "BTRatings",
    "DIMENSIONS",
    "DimensionFit",
    "GroundTruth",
    "Metrics",
    "PairwiseJudgment",
    "binarize",
    "compute_metrics",
    "fit_bradley_terry",
    "format_metrics_table",
    "format_ratings_table",
    "load_ground_truth",
    "make_ground_truth",
    "run_tournament",
    "summarize_distribution",
    "write_ground_truth",
]
