import re

import pytest

from conftest import FakeClock
from novelscope.assess import (
    NO_RELATED_MARKER,
    NoveltyReport,
    build_evidence_text,
    extract_keywords,
    generate_report,
    score_novelty,
)
from novelscope.assess.report import EvidenceItem, MODE_ABSTRACT_ONLY
from novelscope.errors import ScoringFailed
from novelscope.graph.model import GraphNode, PaperGraph
from novelscope.llm.cost import CostLedger
from novelscope.llm.gateway import Gateway
from novelscope.llm.mock import MockProvider
from novelscope.llm.schemas import load_default_registry
from novelscope.records import PaperRecord
from novelscope.retrieval.related import RelatedPaper
from novelscope.texparse.contexts import CitationContext

MODEL = "test-model"
PRICING = {MODEL: {"input_per_1m": 1.0, "output_per_1m": 2.0}}


def make_gateway(provider, with_ledger=False):
    ledger = CostLedger(PRICING) if with_ledger else None
    return Gateway(
        provider, load_default_registry(), roster=[MODEL], ledger=ledger, clock=FakeClock()
    )


def paper(pid="main", title="Main paper", abstract="An abstract about things."):
    return PaperRecord(id=pid, title=title, abstract=abstract)


def citation_related(pid, similarity, relation_class="supporting"):
    ctx = CitationContext(
        citation_key=pid, sentence=f"uses ⟨cite:{pid}⟩.", section_heading="S",
        position=(0, 0, 0),
    )
    return RelatedPaper(
        record=paper(pid, f"Cited {pid}"),
        source="citation",
        relation_class=relation_class,
        similarity=similarity,
        similarity_raw=similarity,
        summary=f"summary {pid}",
        contexts=((ctx, "positive"),),
    )


def semantic_related(pid, similarity):
    return RelatedPaper(
        record=paper(pid, f"Semantic {pid}"),
        source="semantic",
        relation_class="background",
        similarity=similarity,
        similarity_raw=similarity,
        summary=f"summary {pid}",
        matched_text="background text",
    )


# --- evidence text ------------------------------------------------------------


def test_empty_related_has_marker():
    assert build_evidence_text([]) == NO_RELATED_MARKER


def test_citations_precede_semantic_sorted_by_similarity():
    related = [
        semantic_related("s1", 0.9),
        citation_related("c1", 0.4),
        citation_related("c2", 0.8),
    ]
    text = build_evidence_text(related)
    paragraphs = text.split("\n\n")
    assert len(paragraphs) == 3
    # Oracle: manual sort. Citations first, then similarity descending.
    assert "[c2]" in paragraphs[0]
    assert "[c1]" in paragraphs[1]
    assert "[s1]" in paragraphs[2]


def test_supporting_citation_paragraph_contains_class_token():
    text = build_evidence_text([citation_related("c1", 0.5, "supporting")])
    assert "supporting" in text


# --- scoring ----------------------------------------------------------------------


def vote_provider(votes):
    """Map sample index (parsed from the prompt) to a scripted vote."""
    provider = MockProvider()

    def handler(request):
        match = re.search(r"Assessment sample (\d+) of", request.user)
        index = int(match.group(1)) - 1
        return {"label": "novel" if votes[index] else "not_novel"}

    provider.register_handler("novelty_vote", handler)
    return provider


def test_vote_mean():
    gateway = make_gateway(vote_provider([1, 1, 0, 1, 0]))
    score, samples = score_novelty("graph", "evidence", gateway, MODEL, 5)
    assert score == 0.6
    assert samples == [1, 1, 0, 1, 0]


def test_all_zero_votes():
    gateway = make_gateway(vote_provider([0, 0, 0]))
    score, samples = score_novelty("g", "e", gateway, MODEL, 3)
    assert score == 0.0


def test_single_sample():
    gateway = make_gateway(vote_provider([1]))
    score, samples = score_novelty("g", "e", gateway, MODEL, 1)
    assert score == 1.0


def test_failed_samples_dropped():
    votes = [1, None, 0]  # None -> invalid output -> dropped
    provider = MockProvider()

    def handler(request):
        index = int(re.search(r"sample (\d+) of", request.user).group(1)) - 1
        if votes[index] is None:
            return {"label": "dunno"}
        return {"label": "novel" if votes[index] else "not_novel"}

    provider.register_handler("novelty_vote", handler)
    score, samples = score_novelty("g", "e", make_gateway(provider), MODEL, 3)
    assert samples == [1, 0]
    assert score == 0.5


def test_all_samples_failing_is_scoring_failed():
    provider = MockProvider()
    provider.register_handler("novelty_vote", lambda req: {"label": "dunno"})
    with pytest.raises(ScoringFailed):
        score_novelty("g", "e", make_gateway(provider), MODEL, 2)


# --- keywords -----------------------------------------------------------------------


def test_keyword_fixture():
    provider = MockProvider()
    provider.register_handler(
        "keywords", lambda req: {"keywords": ["sparse attention", "routing", "transformers"]}
    )
    assert extract_keywords(paper(), make_gateway(provider), MODEL) == [
        "sparse attention",
        "routing",
        "transformers",
    ]


def test_keywords_deduplicated_order_preserved():
    provider = MockProvider()
    provider.register_handler(
        "keywords",
        lambda req: {"keywords": ["Routing", "routing", "Sparse", "graphs"]},
    )
    assert extract_keywords(paper(), make_gateway(provider), MODEL) == [
        "routing",
        "sparse",
        "graphs",
    ]


def test_keywords_empty_abstract_rejected():
    with pytest.raises(ValueError):
        extract_keywords(paper(abstract=" "), make_gateway(MockProvider()), MODEL)


def test_keywords_failure_yields_empty_list():
    provider = MockProvider()
    provider.register_handler("keywords", lambda req: {"keywords": []})  # violates minItems
    assert extract_keywords(paper(), make_gateway(provider), MODEL) == []


# --- report -----------------------------------------------------------------------------


def report_provider(vote=1, cite_ids=("c1", "s1"), bogus_id=None):
    provider = MockProvider()
    provider.register_handler("novelty_vote", lambda req: {"label": "novel" if vote else "not_novel"})
    provider.register_handler(
        "keywords", lambda req: {"keywords": ["alpha", "beta", "gamma"]}
    )
    supporting = [{"related_id": cite_ids[0], "explanation": "close idea"}]
    if bogus_id:
        supporting.append({"related_id": bogus_id, "explanation": "made up"})
    provider.register_handler(
        "novelty_report",
        lambda req: {
            "summary": "Novel because of routing.",
            "supporting": supporting,
            "contradictory": [{"related_id": cite_ids[1], "explanation": "overlaps"}],
        },
    )
    return provider


def sample_graph():
    return PaperGraph(
        nodes=(
            GraphNode(id="t", kind="title", label="Main paper"),
            GraphNode(id="c", kind="claim", label="claim", excerpt="we claim"),
        ),
        edges=(("t", "c"),),
    )


def test_generate_report_resolves_evidence():
    related = [citation_related("c1", 0.7), semantic_related("s1", 0.6)]
    gateway = make_gateway(report_provider(), with_ledger=True)
    report = generate_report(paper(), sample_graph(), related, gateway, MODEL, 3)
    assert report.label == "novel"
    assert [e.related_id for e in report.supporting] == ["c1"]
    assert [e.related_id for e in report.contradictory] == ["s1"]
    assert all(e.polarity == "supports" for e in report.supporting)
    assert all(e.polarity == "contradicts" for e in report.contradictory)
    assert report.cost["entries"]


def test_unknown_evidence_id_dropped_with_warning():
    related = [citation_related("c1", 0.7), semantic_related("s1", 0.6)]
    gateway = make_gateway(report_provider(bogus_id="nope"))
    report = generate_report(paper(), sample_graph(), related, gateway, MODEL, 1)
    assert [e.related_id for e in report.supporting] == ["c1"]
    assert any(w.startswith("unknown_evidence_id") for w in report.warnings)


def test_abstract_only_report_flags_mode():
    related = [semantic_related("s1", 0.6)]
    gateway = make_gateway(report_provider(cite_ids=("s1", "s1")))
    report = generate_report(
        paper(), None, related, gateway, MODEL, 1, mode=MODE_ABSTRACT_ONLY
    )
    assert report.mode == MODE_ABSTRACT_ONLY
    # no graph, so no citation-source evidence can exist
    assert all(e.related_id == "s1" for e in report.supporting + report.contradictory)


def test_report_invariants_enforced():
    with pytest.raises(ValueError):
        NoveltyReport(
            paper_id="p",
            score=0.4,
            samples=(1, 1),  # mean 1.0 != 0.4
            label="novel",
            summary="s",
            supporting=(),
            contradictory=(),
            keywords=(),
        )
    with pytest.raises(ValueError):
        NoveltyReport(
            paper_id="p",
            score=0.6,
            samples=(1, 1, 1, 0, 0),
            label="not_novel",  # violates threshold rule
            summary="s",
            supporting=(),
            contradictory=(),
            keywords=(),
        )


def test_evidence_item_serialization_round_trip():
    report = NoveltyReport(
        paper_id="p",
        score=0.5,
        samples=(1, 0),
        label="novel",
        summary="s",
        supporting=(EvidenceItem("a", "x", "supports"),),
        contradictory=(EvidenceItem("b", "y", "contradicts"),),
        keywords=("k",),
    )
    assert NoveltyReport.from_dict(report.to_dict()) == report
