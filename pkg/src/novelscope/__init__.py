"""Novelty assessment for scientific papers.

Pipeline: fetch a paper's LaTeX source and metadata, extract its internal
claim/method/experiment structure, retrieve and classify related work, and
synthesize a verifiable novelty report. An evaluation harness reproduces the
ground-truth binarization, classification metrics, and pairwise rationale
tournament used to benchmark the system.
"""

__version__ = "0.1.0"

# Bumping this invalidates every cached upstream response and stored report.
PIPELINE_VERSION = "1"
