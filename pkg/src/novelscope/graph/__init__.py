"""Hierarchical paper structure: title, claims, methods, experiments."""

from novelscope.graph.extract import (
    EMPTY_GRAPH_WARNING,
    ExtractionOutcome,
    extract_graph,
)
from novelscope.graph.model import (
    KIND_RANK,
    GraphNode,
    PaperGraph,
    linearize,
    validate_graph,
)

__all__ = [
    "EMPTY_GRAPH_WARNING",
    "ExtractionOutcome",
    "GraphNode",
    "KIND_RANK",
    "PaperGraph",
    "extract_graph",
    "linearize",
    "validate_graph",
]
