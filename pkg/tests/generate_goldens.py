"""Regenerate the golden fixtures under tests/fixtures/golden/.

Run after any intentional change to fixture content, prompts, or report
shape:

    python3 tests/generate_goldens.py

The acceptance suite compares persisted evaluation documents byte-for-byte
against these files, so regeneration is an explicit, reviewable act.
"""

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fastapi.testclient import TestClient  # noqa: E402

import helpers_e2e as e2e  # noqa: E402
from novelscope.config import ServerLimits  # noqa: E402
from novelscope.server.app import create_app  # noqa: E402
from novelscope.server.store import ReportStore, canonical_json  # noqa: E402

GOLDEN_DIR = Path(__file__).parent / "fixtures" / "golden"

ABSTRACT_PARAMS = {
    "k_recommended": 8,
    "k_related": 4,
    "model_id": e2e.MODEL,
    "k_samples": 3,
}


def parse_sse(text: str) -> list[tuple[str, dict]]:
    frames = []
    for block in text.split("\n\n"):
        if block.strip():
            event_line, data_line = block.split("\n", 1)
            frames.append(
                (event_line[len("event: "):], json.loads(data_line[len("data: "):]))
            )
    return frames


def event_log(frames: list[tuple[str, dict]]) -> list[dict]:
    log = []
    for event, data in frames:
        log.append(
            {
                "event": event,
                "stage": data["stage"],
                "percent": data["percent"],
                "message": data["message"],
            }
        )
    return log


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as td:
        tmp = Path(td)
        pipeline = e2e.build_pipeline(tmp)
        store = ReportStore(tmp / "reports")
        app = create_app(pipeline, store, ServerLimits(), roster=[e2e.MODEL])
        client = TestClient(app)

        for name, paper in e2e.FIXTURE_PAPERS.items():
            request = paper.request()
            body = {
                "arxiv_id": request.arxiv_id,
                "title": request.title,
                "k_citations": request.k_citations,
                "k_recommended": request.k_recommended,
                "k_related": request.k_related,
                "model_id": request.model_id,
                "filter_by_date": request.filter_by_date,
                "k_samples": request.k_samples,
            }
            with client.stream("POST", "/evaluate", json=body) as response:
                frames = parse_sse(response.read().decode("utf-8"))
            document_bytes = store.path(request.cache_key()).read_bytes()
            (GOLDEN_DIR / f"evaluate_{name}.json").write_bytes(document_bytes)
            (GOLDEN_DIR / f"events_{name}.json").write_text(
                json.dumps(event_log(frames), indent=2) + "\n", encoding="utf-8"
            )
            print(f"wrote evaluate_{name}.json ({len(document_bytes)} bytes)")

        response = client.post(
            "/abstract",
            json={
                "title": e2e.ALPHA.title,
                "abstract": e2e.ALPHA.abstract,
                **ABSTRACT_PARAMS,
            },
        )
        response.raise_for_status()
        (GOLDEN_DIR / "abstract_alpha.json").write_text(
            canonical_json(response.json()), encoding="utf-8"
        )
        print("wrote abstract_alpha.json")


if __name__ == "__main__":
    main()
