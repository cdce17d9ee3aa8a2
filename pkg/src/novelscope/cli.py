"""Command-line entry points: serve the API, run evaluations headless, harness."""

import json
import logging
import sys
from pathlib import Path

import click

from novelscope.config import (
    DEFAULT_MODEL,
    AblationFlags,
    CachePolicy,
    ServerLimits,
    load_model_roster,
    load_pricing,
)
from novelscope.evalharness.bradley_terry import fit_bradley_terry
from novelscope.evalharness.groundtruth import load_ground_truth, summarize_distribution
from novelscope.evalharness.metrics import compute_metrics
from novelscope.evalharness.tables import (
    format_distribution_table,
    format_metrics_table,
    format_ratings_table,
)
from novelscope.evalharness.tournament import run_tournament
from novelscope.ingest.arxiv import ArxivClient
from novelscope.ingest.cache import ResponseCache
from novelscope.ingest.ratelimit import RateLimiter
from novelscope.ingest.semantic_scholar import SemanticScholarClient
from novelscope.ingest.transport import HttpxTransport
from novelscope.llm.cost import CostLedger
from novelscope.llm.gateway import Gateway
from novelscope.llm.providers import provider_for_model
from novelscope.llm.schemas import load_default_registry
from novelscope.pipeline import EvaluateRequest, Pipeline
from novelscope.retrieval.embedding import HashingEmbedder, SentenceTransformerEmbedder
from novelscope.server.app import create_app
from novelscope.server.store import ReportStore, canonical_json


def build_pipeline(
    data_dir: Path,
    model_id: str,
    embedder_kind: str,
    ablation: AblationFlags = AblationFlags(),
) -> Pipeline:
    """Wire real clients for live runs; tests construct pipelines directly."""
    import os

    transport = HttpxTransport()
    cache = ResponseCache(data_dir / "cache", CachePolicy())
    registry = load_default_registry()
    gateway = Gateway(
        provider_for_model(model_id, registry),
        registry,
        roster=load_model_roster(),
        ledger=CostLedger(load_pricing()),
    )
    if embedder_kind == "local":
        embedder = SentenceTransformerEmbedder()
    else:
        embedder = HashingEmbedder()
    return Pipeline(
        arxiv=ArxivClient(transport, cache, RateLimiter(1)),
        s2=SemanticScholarClient(
            transport,
            cache,
            RateLimiter(1),
            api_key=os.environ.get("SEMANTIC_SCHOLAR_API_KEY"),
        ),
        gateway=gateway,
        embedder=embedder,
        ablation=ablation,
    )


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(verbose: bool) -> None:
    """Novelty assessment for scientific papers."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--data-dir", type=click.Path(path_type=Path), default=Path("data"))
@click.option("--model", "model_id", default=DEFAULT_MODEL, show_default=True)
@click.option(
    "--embedder",
    type=click.Choice(["hashing", "local"]),
    default="hashing",
    show_default=True,
    help="Embedding backend; 'local' needs the local-embeddings extra.",
)
@click.option(
    "--frontend-dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Serve the built browser UI from this directory.",
)
def serve(
    host: str,
    port: int,
    data_dir: Path,
    model_id: str,
    embedder: str,
    frontend_dir: Path | None,
) -> None:
    """Run the REST API server."""
    import uvicorn

    pipeline = build_pipeline(data_dir, model_id, embedder)
    store = ReportStore(data_dir / "reports")
    app = create_app(pipeline, store, ServerLimits(), frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.argument("arxiv_id")
@click.option("--title", default="")
@click.option("--k-citations", default=20, show_default=True)
@click.option("--k-recommended", default=30, show_default=True)
@click.option("--k-related", default=10, show_default=True)
@click.option("--k-samples", default=5, show_default=True)
@click.option("--model", "model_id", default=DEFAULT_MODEL, show_default=True)
@click.option("--no-date-filter", is_flag=True, help="Include papers published later.")
@click.option("--no-graph", is_flag=True, help="Ablation: skip structure-graph extraction.")
@click.option("--no-citations", is_flag=True, help="Ablation: skip citation-based related papers.")
@click.option("--no-semantic", is_flag=True, help="Ablation: skip semantic related papers.")
@click.option("--data-dir", type=click.Path(path_type=Path), default=Path("data"))
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.option(
    "--embedder", type=click.Choice(["hashing", "local"]), default="hashing"
)
def evaluate(
    arxiv_id: str,
    title: str,
    k_citations: int,
    k_recommended: int,
    k_related: int,
    k_samples: int,
    model_id: str,
    no_date_filter: bool,
    no_graph: bool,
    no_citations: bool,
    no_semantic: bool,
    data_dir: Path,
    out: Path | None,
    embedder: str,
) -> None:
    """Evaluate one arXiv paper headless and print or save the result JSON."""
    ablation = AblationFlags(
        use_graph=not no_graph,
        use_citations=not no_citations,
        use_semantic=not no_semantic,
    )
    pipeline = build_pipeline(data_dir, model_id, embedder, ablation)
    request = EvaluateRequest(
        arxiv_id=arxiv_id,
        title=title,
        k_citations=k_citations,
        k_recommended=k_recommended,
        k_related=k_related,
        model_id=model_id,
        filter_by_date=not no_date_filter,
        k_samples=k_samples,
    )
    result = pipeline.evaluate(
        request,
        on_progress=lambda e: click.echo(f"[{e.percent:5.1f}%] {e.stage}: {e.message}"),
    )
    document = canonical_json(result.to_dict())
    if out is not None:
        out.write_text(document, encoding="utf-8")
        click.echo(f"wrote {out}")
    else:
        click.echo(document)


@main.group()
def harness() -> None:
    """Evaluation-protocol commands."""


@harness.command()
@click.option("--predictions", type=click.Path(path_type=Path), required=True)
@click.option("--truth", type=click.Path(path_type=Path), required=True)
@click.option("--name", default="system", show_default=True)
@click.option("--json-out", type=click.Path(path_type=Path), default=None)
def metrics(predictions: Path, truth: Path, name: str, json_out: Path | None) -> None:
    """Precision/recall/F1/accuracy of a predictions file against ground truth.

    Predictions: one JSON object per line with "id" and "label".
    """
    truth_records = {r.paper_id: r.label for r in load_ground_truth(truth)}
    predicted: dict[str, str] = {}
    for line in predictions.read_text(encoding="utf-8").splitlines():
        if line.strip():
            row = json.loads(line)
            predicted[row["id"]] = row["label"]
    shared = sorted(set(predicted) & set(truth_records))
    if not shared:
        click.echo("no overlapping paper ids", err=True)
        sys.exit(1)
    result = compute_metrics(
        [predicted[i] for i in shared], [truth_records[i] for i in shared]
    )
    click.echo(format_metrics_table({name: result}))
    click.echo(f"\nconfusion (tp, fp, fn, tn): {result.confusion} over {len(shared)} papers")
    if json_out is not None:
        report = {
            "system": name,
            "papers": len(shared),
            "precision": result.precision,
            "recall": result.recall,
            "f1": result.f1,
            "accuracy": result.accuracy,
            "confusion": {"tp": result.confusion[0], "fp": result.confusion[1],
                          "fn": result.confusion[2], "tn": result.confusion[3]},
        }
        json_out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        click.echo(f"wrote {json_out}")


@harness.command()
@click.option("--truth", type=click.Path(path_type=Path), required=True)
def distribution(truth: Path) -> None:
    """Per-year novelty-rate table for a ground-truth file."""
    records = load_ground_truth(truth)
    click.echo(format_distribution_table(summarize_distribution(records)))


@harness.command()
@click.option(
    "--rationales",
    type=click.Path(path_type=Path),
    required=True,
    help='JSON file mapping system id -> rationale text.',
)
@click.option("--model", "model_id", default=DEFAULT_MODEL, show_default=True)
@click.option("--repeats", default=2, show_default=True)
@click.option("--judgments-out", type=click.Path(path_type=Path), default=None)
def tournament(
    rationales: Path, model_id: str, repeats: int, judgments_out: Path | None
) -> None:
    """Pairwise rationale tournament judged by a model, reported as ratings."""
    registry = load_default_registry()
    gateway = Gateway(
        provider_for_model(model_id, registry),
        registry,
        roster=load_model_roster(),
        ledger=CostLedger(load_pricing()),
    )
    systems = json.loads(rationales.read_text(encoding="utf-8"))
    judgments = run_tournament(systems, None, gateway, model_id, repeats=repeats)
    if judgments_out is not None:
        rows = [
            {
                "dimension": j.dimension,
                "system_a": j.system_a,
                "system_b": j.system_b,
                "winner": j.winner,
            }
            for j in judgments
        ]
        judgments_out.write_text(
            "\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8"
        )
    ratings = fit_bradley_terry(judgments)
    click.echo(format_ratings_table(ratings))


if __name__ == "__main__":
    main()
