"""Model-backed extraction of the paper structure graph."""

import logging
import re
from dataclasses import dataclass

from novelscope.config import load_asset_text
from novelscope.errors import ExtractionFailed
from novelscope.graph.model import GraphNode, PaperGraph, validate_graph
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.texparse.latex import PlainDocument
from novelscope.texparse.sentences import segment_sentences

logger = logging.getLogger(__name__)

EMPTY_GRAPH_WARNING = "empty_graph"
SCHEMA_ID = "graph_extract"


@dataclass(frozen=True)
class ExtractionOutcome:
    graph: PaperGraph
    warnings: tuple[str, ...] = ()


def extract_graph(
    doc: PlainDocument,
    title: str,
    gateway: Gateway,
    model_id: str,
    stage: str = "extract_graph",
) -> ExtractionOutcome:
    """Extract claims, methods, experiments and their links from a document.

    The structured-output schema constrains shape; graph invariants are then
    checked here, with one repair round (re-prompt carrying the violation
    list) before giving up. Excerpts must be verbatim substrings of the
    document: any that are not get replaced by the closest matching sentence
    and flagged on the node.
    """
    if not doc.sections:
        raise ValueError("cannot extract a graph from an empty document")

    system = load_asset_text("prompts", "graph_extract_system.txt")
    user = load_asset_text("prompts", "graph_extract_user.txt").format(
        title=title, document=doc.text()
    )

    request = ModelRequest(model_id=model_id, system=system, user=user, schema_id=SCHEMA_ID)
    payload = gateway.complete(request, stage=stage).content
    graph = _graph_from_payload(payload)
    violations = validate_graph(graph)

    if violations:
        repair_user = (
            f"{user}\n\nYour previous answer violated these structural rules:\n"
            + "\n".join(f"- {v}" for v in violations)
            + "\nProduce a corrected graph."
        )
        payload = gateway.complete(
            ModelRequest(model_id=model_id, system=system, user=repair_user, schema_id=SCHEMA_ID),
            stage=stage,
        ).content
        graph = _graph_from_payload(payload)
        violations = validate_graph(graph)
        if violations:
            raise ExtractionFailed(
                "graph still invalid after repair: " + "; ".join(str(v) for v in violations)
            )

    graph, repaired = enforce_verbatim_excerpts(graph, doc)
    warnings = []
    if repaired:
        warnings.append(f"excerpts_repaired:{','.join(repaired)}")
    if not any(n.kind == "claim" for n in graph.nodes):
        warnings.append(EMPTY_GRAPH_WARNING)
    return ExtractionOutcome(graph=graph, warnings=tuple(warnings))


def _graph_from_payload(payload: dict) -> PaperGraph:
    nodes = tuple(
        GraphNode(id=n["id"], kind=n["kind"], label=n["label"], excerpt=n["excerpt"])
        for n in payload["nodes"]
    )
    return PaperGraph(nodes=nodes, edges=tuple((a, b) for a, b in payload["edges"]))


def enforce_verbatim_excerpts(
    graph: PaperGraph, doc: PlainDocument
) -> tuple[PaperGraph, list[str]]:
    """Replace non-substring excerpts with the best-matching document sentence."""
    text = doc.text()
    sentences: list[str] | None = None
    repaired: list[str] = []
    new_nodes: list[GraphNode] = []
    for node in graph.nodes:
        if node.kind == "title" or not node.excerpt or node.excerpt in text:
            new_nodes.append(node)
            continue
        if sentences is None:
            sentences = [
                s for paragraph in doc.all_paragraphs() for s in segment_sentences(paragraph)
            ]
        replacement = closest_sentence(node.excerpt, sentences)
        logger.warning(
            "excerpt for node %s is not verbatim; replaced with closest sentence", node.id
        )
        repaired.append(node.id)
        new_nodes.append(
            GraphNode(
                id=node.id,
                kind=node.kind,
                label=node.label,
                excerpt=replacement,
                excerpt_repaired=True,
            )
        )
    return PaperGraph(nodes=tuple(new_nodes), edges=graph.edges), repaired


_TOKEN_RE = re.compile(r"[a-z0-9]+")


def closest_sentence(excerpt: str, sentences: list[str]) -> str:
    """Sentence with maximum token overlap; ties go to the earlier sentence."""
    want = set(_TOKEN_RE.findall(excerpt.lower()))
    best = sentences[0]
    best_score = (-1.0, -1.0)
    for sentence in sentences:
        have = set(_TOKEN_RE.findall(sentence.lower()))
        inter = len(want & have)
        union = len(want | have) or 1
        score = (float(inter), inter / union)
        if score > best_score:
            best_score = score
            best = sentence
    return best
