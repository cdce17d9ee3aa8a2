"""End-to-end evaluation pipeline orchestrating every stage.

Stage order is the canonical progress sequence streamed to clients:
fetch_paper, parse, extract_graph, fetch_related, classify, assess, done.
Each stage boundary is a cancellation checkpoint.
"""

import hashlib
import json
import logging
import threading
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from novelscope import PIPELINE_VERSION
from novelscope.assess.report import (
    MODE_ABSTRACT_ONLY,
    MODE_FULL,
    NoveltyReport,
    generate_report,
)
from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import DEFAULT_MODEL, AblationFlags
from novelscope.errors import (
    ExtractionFailed,
    NoBibliography,
    NotFound,
    NovelscopeError,
    SourceUnavailable,
)
from novelscope.graph.extract import extract_graph
from novelscope.graph.model import PaperGraph
from novelscope.ingest.arxiv import ArxivClient
from novelscope.ingest.semantic_scholar import SemanticScholarClient
from novelscope.llm.cost import CostLedger
from novelscope.llm.gateway import Gateway
from novelscope.records import PaperRecord, RecommendationBatch
from novelscope.retrieval.citations import (
    aggregate_polarity,
    classify_polarity,
    filter_citations,
)
from novelscope.retrieval.embedding import Embedder, clamp_display
from novelscope.retrieval.related import RelatedPaper, summarize_relation
from novelscope.retrieval.semantic import decompose_abstract, match_semantic
from novelscope.texparse.bibliography import Bibliography, parse_bibliography
from novelscope.texparse.contexts import CitationContext, extract_citation_contexts
from novelscope.texparse.latex import to_plain_text

logger = logging.getLogger(__name__)

STAGES = ("fetch_paper", "parse", "extract_graph", "fetch_related", "classify", "assess")
STAGE_PERCENT = {
    "fetch_paper": 5.0,
    "parse": 20.0,
    "extract_graph": 35.0,
    "fetch_related": 55.0,
    "classify": 70.0,
    "assess": 85.0,
    "done": 100.0,
    "error": 100.0,
    "cancelled": 100.0,
}


@dataclass(frozen=True)
class EvaluateRequest:
    arxiv_id: str
    title: str
    k_citations: int = 20
    k_recommended: int = 30
    k_related: int = 10
    model_id: str = DEFAULT_MODEL
    filter_by_date: bool = True
    k_samples: int = 5

    def cache_key(self) -> str:
        """Stable key over every request field plus the pipeline version."""
        payload = {"request": asdict(self), "version": PIPELINE_VERSION}
        canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ProgressEvent:
    stage: str
    percent: float
    message: str
    timestamp: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "stage": self.stage,
            "percent": self.percent,
            "message": self.message,
            "timestamp": self.timestamp,
        }


class EvaluationCancelled(NovelscopeError):
    pass


class CancelToken:
    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    def cancelled(self) -> bool:
        return self._event.is_set()

    def raise_if_cancelled(self) -> None:
        if self.cancelled():
            raise EvaluationCancelled("evaluation cancelled")


@dataclass
class EvaluationResult:
    paper: PaperRecord
    graph: PaperGraph | None
    related: list[RelatedPaper]
    report: NoveltyReport

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": PIPELINE_VERSION,
            "paper": self.paper.to_dict(),
            "graph": self.graph.to_dict() if self.graph is not None else None,
            "related": [r.to_dict() for r in self.related],
            "report": self.report.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "EvaluationResult":
        return cls(
            paper=PaperRecord.from_dict(d["paper"]),
            graph=PaperGraph.from_dict(d["graph"]) if d.get("graph") else None,
            related=[RelatedPaper.from_dict(r) for r in d.get("related", ())],
            report=NoveltyReport.from_dict(d["report"]),
        )


ProgressCallback = Callable[[ProgressEvent], None]


def _noop(_: ProgressEvent) -> None:
    pass


@dataclass
class Pipeline:
    """One evaluation pipeline over injected clients; safe to share."""

    arxiv: ArxivClient
    s2: SemanticScholarClient
    gateway: Gateway
    embedder: Embedder
    ablation: AblationFlags = field(default_factory=AblationFlags)
    clock: Clock = SYSTEM_CLOCK

    def _emit(self, on_progress: ProgressCallback, stage: str, message: str) -> None:
        on_progress(
            ProgressEvent(
                stage=stage,
                percent=STAGE_PERCENT[stage],
                message=message,
                timestamp=self.clock.now(),
            )
        )

    def _scoped_gateway(self) -> Gateway:
        """Fresh per-evaluation ledger so each report's cost covers itself only."""
        pricing = self.gateway.ledger.pricing if self.gateway.ledger is not None else None
        return self.gateway.with_ledger(CostLedger(pricing))

    def evaluate(
        self,
        request: EvaluateRequest,
        on_progress: ProgressCallback = _noop,
        cancel: CancelToken | None = None,
    ) -> EvaluationResult:
        cancel = cancel or CancelToken()
        gateway = self._scoped_gateway()
        warnings: list[str] = []

        # --- fetch_paper ---------------------------------------------------
        self._emit(on_progress, "fetch_paper", f"fetching {request.arxiv_id}")
        bundle = None
        try:
            bundle = self.arxiv.fetch_latex(request.arxiv_id)
        except SourceUnavailable:
            logger.warning("no LaTeX for %s; degrading to abstract-only", request.arxiv_id)
            warnings.append("no_latex_source")
        main, cited = self.s2.fetch_metadata(f"arXiv:{request.arxiv_id}")
        cancel.raise_if_cancelled()

        # --- parse -----------------------------------------------------------
        self._emit(on_progress, "parse", "parsing LaTeX source")
        doc = None
        bib = Bibliography(entries={})
        contexts: list[CitationContext] = []
        if bundle is not None:
            doc = to_plain_text(bundle, source_id=main.id)
            try:
                bib = parse_bibliography(bundle)
            except NoBibliography:
                warnings.append("no_bibliography")
            contexts = extract_citation_contexts(doc, bib)
        cancel.raise_if_cancelled()

        # --- extract_graph ---------------------------------------------------
        self._emit(on_progress, "extract_graph", "extracting structure graph")
        graph = None
        if doc is not None and doc.sections and self.ablation.use_graph:
            outcome = extract_graph(doc, main.title, gateway, request.model_id)
            graph = outcome.graph
            warnings.extend(outcome.warnings)
        cancel.raise_if_cancelled()

        # --- fetch_related -----------------------------------------------------
        self._emit(on_progress, "fetch_related", "fetching recommended papers")
        batch = None
        if self.ablation.use_semantic:
            seed = main.id.removeprefix("s2:")
            try:
                batch = self.s2.fetch_recommendations(seed, request.k_recommended)
            except (NotFound, NovelscopeError) as exc:
                logger.warning("recommendations unavailable for %s: %s", seed, exc)
                warnings.append("no_recommendations")
        cancel.raise_if_cancelled()

        # --- classify ----------------------------------------------------------
        self._emit(on_progress, "classify", "classifying related papers")
        related: list[RelatedPaper] = []
        if self.ablation.use_citations and contexts:
            related.extend(
                self._citation_related(
                    main, cited, bib, contexts, request, warnings, cancel, gateway
                )
            )
        if self.ablation.use_semantic and batch is not None and main.abstract.strip():
            citation_ids = {r.record.id for r in related}
            cutoff = main.year if request.filter_by_date else None
            semantic = self._semantic_related(
                main, batch, request, cutoff, citation_ids, warnings, gateway
            )
            related.extend(semantic)
        cancel.raise_if_cancelled()
        for i, paper in enumerate(related):
            related[i] = paper.with_summary(
                summarize_relation(main, paper, gateway, request.model_id)
            )
            cancel.raise_if_cancelled()

        # --- assess -------------------------------------------------------------
        self._emit(on_progress, "assess", "scoring novelty")
        mode = MODE_FULL if graph is not None else MODE_ABSTRACT_ONLY
        report = generate_report(
            main,
            graph,
            related,
            gateway,
            request.model_id,
            request.k_samples,
            mode=mode,
            warnings=tuple(warnings),
        )
        cancel.raise_if_cancelled()
        return EvaluationResult(paper=main, graph=graph, related=related, report=report)

    def _citation_related(
        self,
        main: PaperRecord,
        cited: list[PaperRecord],
        bib: Bibliography,
        contexts: list[CitationContext],
        request: EvaluateRequest,
        warnings: list[str],
        cancel: CancelToken,
        gateway: Gateway,
    ) -> list[RelatedPaper]:
        by_key: dict[str, list[CitationContext]] = {}
        for context in contexts:
            by_key.setdefault(context.citation_key, []).append(context)

        cited_by_title = {_normalize_title(r.title): r for r in cited}
        candidates: list[PaperRecord] = []
        meta: dict[str, tuple[str, list[CitationContext]]] = {}
        for key in sorted(by_key):
            entry = bib.entries.get(key)
            if entry is None:
                continue
            record = cited_by_title.get(_normalize_title(entry.title)) if entry.title else None
            if record is None:
                if not entry.title:
                    logger.warning("bib entry %s has no usable title; skipped", key)
                    continue
                record = PaperRecord(
                    id=f"bib:{key}",
                    title=entry.title,
                    authors=entry.authors,
                    year=entry.year,
                )
            if record.id in meta:  # two bib keys resolving to one paper
                continue
            candidates.append(record)
            meta[record.id] = (key, by_key[key])

        ranked = filter_citations(main, candidates, request.k_citations, self.embedder)
        related: list[RelatedPaper] = []
        for record, similarity_raw in ranked:
            cancel.raise_if_cancelled()
            key, own_contexts = meta[record.id]
            labelled: list[tuple[CitationContext, str]] = []
            for context in own_contexts:
                try:
                    polarity = classify_polarity(context, gateway, request.model_id)
                except ExtractionFailed as exc:
                    logger.warning("context for %s dropped: %s", key, exc)
                    warnings.append(f"context_dropped:{key}")
                    continue
                labelled.append((context, polarity))
            if not labelled:
                warnings.append(f"citation_skipped:{key}")
                continue
            relation_class = aggregate_polarity([p for _, p in labelled])
            related.append(
                RelatedPaper(
                    record=record,
                    source="citation",
                    relation_class=relation_class,
                    similarity=clamp_display(similarity_raw),
                    similarity_raw=similarity_raw,
                    contexts=tuple(labelled),
                )
            )
        return related

    def _semantic_related(
        self,
        main: PaperRecord,
        batch,
        request: EvaluateRequest,
        cutoff_year: int | None,
        exclude_ids: set[str],
        warnings: list[str],
        gateway: Gateway,
    ) -> list[RelatedPaper]:
        try:
            main_terms = decompose_abstract(main.abstract, gateway, request.model_id)
        except ExtractionFailed as exc:
            logger.warning("main abstract decomposition failed: %s", exc)
            warnings.append("decomposition_failed")
            return []
        pool = RecommendationBatch(
            seed_id=batch.seed_id,
            papers=tuple(p for p in batch.papers if p.id not in exclude_ids),
            requested=batch.requested,
        )
        return match_semantic(
            main_terms,
            pool,
            request.k_related,
            gateway,
            request.model_id,
            self.embedder,
            cutoff_year=cutoff_year,
        )

    def evaluate_abstract(
        self,
        title: str,
        abstract: str,
        k_recommended: int = 30,
        k_related: int = 10,
        model_id: str = DEFAULT_MODEL,
        k_samples: int = 5,
    ) -> EvaluationResult:
        """Degraded evaluation from title+abstract: semantic neighbours only."""
        if not title.strip() or not abstract.strip():
            raise ValueError("title and abstract must be nonempty")
        gateway = self._scoped_gateway()
        digest = hashlib.sha256(title.strip().lower().encode("utf-8")).hexdigest()[:12]
        main = PaperRecord(
            id=f"abstract:{digest}", title=title.strip(), abstract=abstract.strip()
        )
        warnings = ["abstract_only"]

        batch = None
        try:
            hits = self.arxiv.search(title.strip(), 1)
        except NovelscopeError as exc:
            logger.warning("arXiv lookup failed for abstract evaluation: %s", exc)
            hits = []
        if hits and hits[0].arxiv_id:
            try:
                seed_record, _ = self.s2.fetch_metadata(f"arXiv:{hits[0].arxiv_id}")
                batch = self.s2.fetch_recommendations(
                    seed_record.id.removeprefix("s2:"), k_recommended
                )
            except (NotFound, NovelscopeError) as exc:
                logger.warning("no recommendations for abstract evaluation: %s", exc)
        if batch is None:
            warnings.append("no_seed_paper")

        related: list[RelatedPaper] = []
        if batch is not None:
            request = EvaluateRequest(
                arxiv_id="",
                title=title,
                k_recommended=k_recommended,
                k_related=k_related,
                model_id=model_id,
                k_samples=k_samples,
            )
            related = self._semantic_related(
                main, batch, request, None, set(), warnings, gateway
            )
            for i, paper in enumerate(related):
                related[i] = paper.with_summary(
                    summarize_relation(main, paper, gateway, model_id)
                )

        report = generate_report(
            main,
            None,
            related,
            gateway,
            model_id,
            k_samples,
            mode=MODE_ABSTRACT_ONLY,
            warnings=tuple(warnings),
        )
        return EvaluationResult(paper=main, graph=None, related=related, report=report)


def _normalize_title(title: str) -> str:
    return " ".join(title.lower().split())
