"""REST service: search, streaming evaluation, abstract mode, library, cancel."""

import asyncio
import json
import logging
import queue
import threading
import uuid
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from novelscope.config import DEFAULT_MODEL, ServerLimits, load_model_roster
from novelscope.errors import (
    BadRequest,
    EmptyQuery,
    NotFound,
    RateLimited,
    UpstreamUnavailable,
)
from novelscope.pipeline import (
    CancelToken,
    EvaluateRequest,
    EvaluationCancelled,
    Pipeline,
    ProgressEvent,
)
from novelscope.server.store import ReportStore

logger = logging.getLogger(__name__)

POLL_INTERVAL = 0.02


class EvaluateBody(BaseModel):
    arxiv_id: str
    title: str = ""
    k_citations: int = Field(default=20, ge=1)
    k_recommended: int = Field(default=30, ge=1)
    k_related: int = Field(default=10, ge=1)
    model_id: str = DEFAULT_MODEL
    filter_by_date: bool = True
    k_samples: int = Field(default=5, ge=1)


class AbstractBody(BaseModel):
    title: str
    abstract: str
    k_recommended: int = Field(default=30, ge=1)
    k_related: int = Field(default=10, ge=1)
    model_id: str = DEFAULT_MODEL
    k_samples: int = Field(default=5, ge=1)


def sse_frame(event: str, data: dict[str, Any]) -> str:
    return f"event: {event}\ndata: {json.dumps(data, ensure_ascii=False)}\n\n"


def create_app(
    pipeline: Pipeline,
    store: ReportStore,
    limits: ServerLimits = ServerLimits(),
    roster: list[str] | None = None,
    frontend_dir: Path | None = None,
) -> FastAPI:
    app = FastAPI(title="novelscope", version="0.1.0")
    app.state.pipeline = pipeline
    app.state.store = store
    app.state.evaluations: dict[str, CancelToken] = {}
    app.state.eval_slots = threading.BoundedSemaphore(limits.max_concurrent_evaluations)
    model_roster = roster if roster is not None else load_model_roster()

    def check_limits(body: EvaluateBody | AbstractBody) -> None:
        checks = [
            (getattr(body, "k_citations", 1), limits.max_k_citations, "k_citations"),
            (body.k_recommended, limits.max_k_recommended, "k_recommended"),
            (body.k_related, limits.max_k_related, "k_related"),
            (body.k_samples, limits.max_k_samples, "k_samples"),
        ]
        for value, maximum, name in checks:
            if value > maximum:
                raise HTTPException(400, f"{name} exceeds the maximum of {maximum}")
        if body.model_id not in model_roster:
            raise HTTPException(400, f"model_id {body.model_id!r} is not configured")

    @app.get("/search")
    def search(q: str = "", limit: int = 10):
        try:
            records = pipeline.arxiv.search(q, limit)
        except (EmptyQuery, BadRequest) as exc:
            raise HTTPException(400, str(exc)) from exc
        except RateLimited as exc:
            raise HTTPException(429, str(exc)) from exc
        except UpstreamUnavailable as exc:
            raise HTTPException(502, str(exc)) from exc
        return [r.to_dict() for r in records]

    @app.post("/evaluate")
    async def evaluate(body: EvaluateBody, request: Request):
        check_limits(body)
        eval_request = EvaluateRequest(
            arxiv_id=body.arxiv_id,
            title=body.title,
            k_citations=body.k_citations,
            k_recommended=body.k_recommended,
            k_related=body.k_related,
            model_id=body.model_id,
            filter_by_date=body.filter_by_date,
            k_samples=body.k_samples,
        )
        key = eval_request.cache_key()
        cached = store.get(key)
        evaluation_id = uuid.uuid4().hex

        if cached is not None:
            async def replay():
                yield sse_frame(
                    "done",
                    {
                        "stage": "done",
                        "percent": 100.0,
                        "message": "cached",
                        "evaluation_id": evaluation_id,
                        "cached": True,
                        "result": cached,
                    },
                )

            return StreamingResponse(replay(), media_type="text/event-stream")

        token = CancelToken()
        app.state.evaluations[evaluation_id] = token
        events: queue.Queue = queue.Queue()

        def worker() -> None:
            try:
                with app.state.eval_slots:
                    result = pipeline.evaluate(
                        eval_request,
                        on_progress=lambda e: events.put(("progress", e)),
                        cancel=token,
                    )
                if not token.cancelled():
                    store.put(key, result.to_dict())
                    events.put(("result", result.to_dict()))
                else:
                    events.put(("cancelled", None))
            except EvaluationCancelled:
                events.put(("cancelled", None))
            except Exception as exc:  # surfaced as a terminal error event
                logger.exception("evaluation %s failed", evaluation_id)
                events.put(("error", exc))

        threading.Thread(target=worker, daemon=True).start()

        async def stream():
            current_stage = "fetch_paper"
            try:
                while True:
                    if token.cancelled():
                        yield sse_frame(
                            "cancelled",
                            {
                                "stage": "cancelled",
                                "percent": 100.0,
                                "message": f"cancelled during {current_stage}",
                                "evaluation_id": evaluation_id,
                            },
                        )
                        return
                    if await request.is_disconnected():
                        token.cancel()
                        return
                    try:
                        kind, payload = events.get_nowait()
                    except queue.Empty:
                        await asyncio.sleep(POLL_INTERVAL)
                        continue
                    if kind == "progress":
                        event: ProgressEvent = payload
                        current_stage = event.stage
                        data = event.to_dict()
                        data["evaluation_id"] = evaluation_id
                        yield sse_frame("progress", data)
                    elif kind == "result":
                        yield sse_frame(
                            "done",
                            {
                                "stage": "done",
                                "percent": 100.0,
                                "message": "evaluation complete",
                                "evaluation_id": evaluation_id,
                                "cached": False,
                                "result": payload,
                            },
                        )
                        return
                    elif kind == "cancelled":
                        yield sse_frame(
                            "cancelled",
                            {
                                "stage": "cancelled",
                                "percent": 100.0,
                                "message": f"cancelled during {current_stage}",
                                "evaluation_id": evaluation_id,
                            },
                        )
                        return
                    else:
                        yield sse_frame(
                            "error",
                            {
                                "stage": "error",
                                "percent": 100.0,
                                "message": f"{current_stage}: {payload}",
                                "failed_stage": current_stage,
                                "evaluation_id": evaluation_id,
                            },
                        )
                        return
            finally:
                app.state.evaluations.pop(evaluation_id, None)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.post("/abstract")
    def abstract(body: AbstractBody):
        if not body.title.strip() or not body.abstract.strip():
            raise HTTPException(400, "title and abstract must be nonempty")
        check_limits(body)
        try:
            result = pipeline.evaluate_abstract(
                title=body.title,
                abstract=body.abstract,
                k_recommended=body.k_recommended,
                k_related=body.k_related,
                model_id=body.model_id,
                k_samples=body.k_samples,
            )
        except UpstreamUnavailable as exc:
            raise HTTPException(502, str(exc)) from exc
        except RateLimited as exc:
            raise HTTPException(429, str(exc)) from exc
        return JSONResponse(result.to_dict())

    @app.get("/library")
    def library():
        return store.list_summaries()

    @app.get("/library/{key}")
    def library_item(key: str):
        document = store.get(key)
        if document is None:
            raise HTTPException(404, f"no stored report under key {key!r}")
        return document

    @app.post("/cancel/{evaluation_id}")
    def cancel(evaluation_id: str):
        token = app.state.evaluations.get(evaluation_id)
        if token is None:
            raise HTTPException(404, f"unknown evaluation {evaluation_id!r}")
        token.cancel()
        return {"evaluation_id": evaluation_id, "cancelled": True}

    if frontend_dir is not None:
        # Mounted last so the API routes above keep precedence.
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
