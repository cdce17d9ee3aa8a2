import random

import pytest

from conftest import FakeClock
from helpers import (
    all_topological_orders,
    brute_force_is_valid,
    kind_rank_tiebreak_ok,
    random_arbitrary_graph,
    random_valid_graph,
    respects_edges,
)
from novelscope.errors import ExtractionFailed
from novelscope.graph import (
    EMPTY_GRAPH_WARNING,
    GraphNode,
    PaperGraph,
    extract_graph,
    linearize,
    validate_graph,
)
from novelscope.graph.model import topological_order
from novelscope.llm.gateway import Gateway
from novelscope.llm.mock import MockProvider
from novelscope.llm.schemas import load_default_registry
from novelscope.records import LatexBundle
from novelscope.texparse.latex import to_plain_text

MODEL = "test-model"


def title(node_id="t"):
    return GraphNode(id=node_id, kind="title", label="The Paper")


def node(node_id, kind, excerpt="quoted text"):
    return GraphNode(id=node_id, kind=kind, label=f"{kind} {node_id}", excerpt=excerpt)


# --- validate_graph ------------------------------------------------------------


def test_title_only_is_valid():
    assert validate_graph(PaperGraph(nodes=(title(),))) == []


def test_two_cycle_between_methods_reports_both_rules():
    graph = PaperGraph(
        nodes=(title(), node("c", "claim"), node("m1", "method"), node("m2", "method")),
        edges=(("t", "c"), ("c", "m1"), ("m1", "m2"), ("m2", "m1")),
    )
    rules = {v.rule for v in validate_graph(graph)}
    assert "acyclicity" in rules
    assert "kind-hierarchy" in rules


def test_orphan_experiment_names_the_node():
    graph = PaperGraph(nodes=(title(), node("ex9", "experiment")))
    violations = validate_graph(graph)
    assert any(v.rule == "reachability" and "ex9" in v.detail for v in violations)


def test_missing_excerpt_flagged():
    graph = PaperGraph(
        nodes=(title(), node("c", "claim", excerpt="")),
        edges=(("t", "c"),),
    )
    assert any(v.rule == "excerpt" for v in validate_graph(graph))


def test_validate_matches_brute_force_on_small_graphs():
    rng = random.Random(7)
    valid_seen = invalid_seen = 0
    for _ in range(400):
        graph = random_arbitrary_graph(rng, max_nodes=8)
        ours = validate_graph(graph) == []
        theirs = brute_force_is_valid(graph)
        assert ours == theirs, f"disagreement on {graph}"
        valid_seen += ours
        invalid_seen += not ours
    assert valid_seen > 5 and invalid_seen > 5  # both branches exercised


# --- linearize -------------------------------------------------------------------


def test_single_title_linearizes_to_one_paragraph():
    text = linearize(PaperGraph(nodes=(title(),)))
    assert text.count("\n\n") == 0
    assert "The Paper" in text


def test_chain_order_forced_by_edges():
    graph = PaperGraph(
        nodes=(
            node("e", "experiment"),
            node("m", "method"),
            node("c", "claim"),
            title(),
        ),
        edges=(("t", "c"), ("c", "m"), ("m", "e")),
    )
    paragraphs = linearize(graph).split("\n\n")
    assert len(paragraphs) == 4
    assert [p.split(":")[0] for p in paragraphs] == [
        "Title",
        "Claim",
        "Method",
        "Experiment",
    ]


def test_diamond_tiebreak_matches_enumeration():
    # Claim "A" carries id cz, claim "B" carries id cb: B's id sorts first,
    # so at equal depth B must precede A.
    graph = PaperGraph(
        nodes=(title(), node("cz", "claim"), node("cb", "claim"), node("m", "method")),
        edges=(("t", "cz"), ("t", "cb"), ("cz", "m"), ("cb", "m")),
    )
    order = [n.id for n in topological_order(graph)]
    assert order in all_topological_orders(graph)
    assert order.index("cb") < order.index("cz")
    assert kind_rank_tiebreak_ok(order, graph)


def test_linearize_deterministic_under_node_permutation():
    rng = random.Random(3)
    for _ in range(50):
        graph = random_valid_graph(rng, max_nodes=20)
        shuffled_nodes = list(graph.nodes)
        rng.shuffle(shuffled_nodes)
        shuffled_edges = list(graph.edges)
        rng.shuffle(shuffled_edges)
        permuted = PaperGraph(nodes=tuple(shuffled_nodes), edges=tuple(shuffled_edges))
        assert linearize(graph) == linearize(permuted)


def test_linearize_respects_edges_on_random_graphs():
    rng = random.Random(11)
    for _ in range(200):
        graph = random_valid_graph(rng)
        order = [n.id for n in topological_order(graph)]
        assert respects_edges(order, graph)


# --- extract_graph ----------------------------------------------------------------


def make_doc():
    source = (
        r"\section{Intro} We claim routing improves attention. "
        r"Our method uses sparse gates. "
        r"Experiments on long documents confirm the gains."
    )
    return to_plain_text(LatexBundle(arxiv_id="2401.00001", main_source=source))


def graph_payload(excerpt="We claim routing improves attention."):
    return {
        "nodes": [
            {"id": "t", "kind": "title", "label": "Paper", "excerpt": ""},
            {"id": "c1", "kind": "claim", "label": "routing claim", "excerpt": excerpt},
        ],
        "edges": [["t", "c1"]],
    }


def make_gateway(provider):
    return Gateway(provider, load_default_registry(), roster=[MODEL], clock=FakeClock())


def test_mock_fixture_graph_passes_through():
    provider = MockProvider()
    provider.register_handler("graph_extract", lambda req: graph_payload())
    outcome = extract_graph(make_doc(), "Paper", make_gateway(provider), MODEL)
    assert [n.id for n in outcome.graph.nodes] == ["t", "c1"]
    assert outcome.warnings == ()
    assert not outcome.graph.nodes[1].excerpt_repaired


def test_invalid_hierarchy_fails_after_repair():
    bad = {
        "nodes": [
            {"id": "t", "kind": "title", "label": "p", "excerpt": ""},
            {"id": "c", "kind": "claim", "label": "c", "excerpt": "x"},
            {"id": "e", "kind": "experiment", "label": "e", "excerpt": "y"},
        ],
        "edges": [["t", "c"], ["e", "c"]],
    }
    provider = MockProvider()
    provider.register_handler("graph_extract", lambda req: bad)
    with pytest.raises(ExtractionFailed):
        extract_graph(make_doc(), "Paper", make_gateway(provider), MODEL)
    assert provider.calls == 2  # initial + one repair round


def test_repair_round_can_recover():
    provider = MockProvider()

    def handler(req):
        if "violated these structural rules" in req.user:
            return graph_payload()
        return {
            "nodes": [{"id": "c1", "kind": "claim", "label": "c", "excerpt": "x"}],
            "edges": [],
        }

    provider.register_handler("graph_extract", handler)
    outcome = extract_graph(make_doc(), "Paper", make_gateway(provider), MODEL)
    assert validate_graph(outcome.graph) == []


def test_hallucinated_excerpt_replaced_and_flagged():
    provider = MockProvider()
    provider.register_handler(
        "graph_extract", lambda req: graph_payload("routing claim about attention gains")
    )
    doc = make_doc()
    outcome = extract_graph(doc, "Paper", make_gateway(provider), MODEL)
    claim = outcome.graph.nodes[1]
    assert claim.excerpt_repaired
    assert claim.excerpt in doc.text()
    # Maximum-overlap oracle: the chosen sentence shares the most tokens.
    assert claim.excerpt == "We claim routing improves attention."
    assert any(w.startswith("excerpts_repaired") for w in outcome.warnings)


def test_empty_graph_flagged_not_fatal():
    provider = MockProvider()
    provider.register_handler(
        "graph_extract",
        lambda req: {
            "nodes": [{"id": "t", "kind": "title", "label": "p", "excerpt": ""}],
            "edges": [],
        },
    )
    outcome = extract_graph(make_doc(), "Paper", make_gateway(provider), MODEL)
    assert EMPTY_GRAPH_WARNING in outcome.warnings
    assert validate_graph(outcome.graph) == []
