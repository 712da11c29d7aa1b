"""HTTP gateway over a fitted engine.

Read endpoints answer concurrently against an immutable engine snapshot;
assessment writes are serialized by the judgment store. Every error is a
JSON payload of the form ``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

from typing import Optional, Sequence

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from sklearn.exceptions import NotFittedError

from .engine import SearchEngine
from .evaluation import (
    EvaluationError,
    Judgment,
    JudgmentStore,
    Topic,
    build_report,
    pool,
)
from .indexing import QueryError


class AssessmentBody(BaseModel):
    topic_id: str
    doc_id: str
    rater_id: str
    relevant: int


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def create_app(
    engine: SearchEngine,
    topics: Sequence[Topic] = (),
    judgment_store: Optional[JudgmentStore] = None,
    pool_seed: int = 0,
) -> FastAPI:
    app = FastAPI(title="stratagem", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    topics_by_id = {t.id: t for t in topics}

    @app.exception_handler(QueryError)
    async def handle_query_error(request: Request, exc: QueryError):
        return _error(400, "empty_query", str(exc))

    @app.exception_handler(ValueError)
    async def handle_value_error(request: Request, exc: ValueError):
        return _error(400, "invalid_parameter", str(exc))

    @app.exception_handler(EvaluationError)
    async def handle_evaluation_error(request: Request, exc: EvaluationError):
        return _error(400, "evaluation_error", str(exc))

    @app.exception_handler(NotFittedError)
    async def handle_not_fitted(request: Request, exc: NotFittedError):
        return _error(409, "index_not_built", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_parameter", str(exc.errors()))

    @app.get("/health")
    def health():
        return {"status": "ok", "documents": engine.doc_count}

    @app.get("/search")
    def search(
        q: str,
        rank: str = "solr",
        expand: str = "none",
        brad_mode: str = "weighted",
        k: int = 10,
    ):
        return engine.search(q, rank=rank, expand=expand, brad_mode=brad_mode, k=k)

    @app.get("/suggest")
    def suggest(term: str, m: int = 4):
        return {"term": term, "suggestions": engine.suggest(term, m=m)}

    @app.get("/topics")
    def list_topics():
        return {
            "topics": [
                {
                    "id": t.id,
                    "title": t.title,
                    "description": t.description,
                    "query": t.query,
                }
                for t in topics
            ]
        }

    @app.get("/pool")
    def topic_pool(topic: str, seed: Optional[int] = None, k: int = 10):
        selected = topics_by_id.get(topic)
        if selected is None:
            return _error(404, "unknown_topic", f"unknown topic: {topic!r}")
        service_results = engine.run_services([selected], k=k)
        per_topic = {s: service_results[s][selected.id] for s in service_results}
        doc_ids = pool(
            selected, per_topic, k=k, seed=pool_seed if seed is None else seed
        )
        return {
            "topic_id": selected.id,
            "title": selected.title,
            "description": selected.description,
            "pool_size": len(doc_ids),
            "doc_ids": doc_ids,
            "docs": [
                {
                    "doc_id": doc_id,
                    "title": engine.records_by_id_[doc_id].title,
                    "abstract": engine.records_by_id_[doc_id].abstract,
                }
                for doc_id in doc_ids
            ],
        }

    @app.post("/assessments")
    def record_assessment(body: AssessmentBody):
        if judgment_store is None:
            return _error(409, "assessments_disabled", "no judgment store configured")
        if body.topic_id not in topics_by_id:
            return _error(404, "unknown_topic", f"unknown topic: {body.topic_id!r}")
        if body.doc_id not in engine.records_by_id_:
            return _error(404, "unknown_doc", f"unknown doc: {body.doc_id!r}")
        if not body.rater_id.strip():
            return _error(400, "invalid_parameter", "rater_id must be non-empty")
        if body.relevant not in (0, 1):
            return _error(400, "invalid_parameter", "relevant must be 0 or 1")
        judgment = Judgment(
            topic_id=body.topic_id,
            doc_id=body.doc_id,
            rater_id=body.rater_id,
            relevant=bool(body.relevant),
        )
        status = judgment_store.append(judgment)
        return {
            "status": status,
            "judgment": {
                "topic_id": judgment.topic_id,
                "doc_id": judgment.doc_id,
                "rater_id": judgment.rater_id,
                "relevant": int(judgment.relevant),
            },
        }

    @app.get("/eval/report")
    def eval_report(k: int = 10, seed: Optional[int] = None):
        if not topics:
            return _error(409, "no_topics", "no topics configured")
        judgments = judgment_store.load_latest() if judgment_store else []
        service_results = engine.run_services(list(topics), k=k)
        return build_report(
            list(topics),
            service_results,
            judgments,
            k=k,
            seed=pool_seed if seed is None else seed,
        )

    return app
