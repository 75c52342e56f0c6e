"""HTTP API over one curation session, for the companion browser UI.

All decision traffic funnels through the same single-writer session
(guarded by a lock), so API and CLI decisions against one journal can
never lose updates.  Responses are plain JSON; errors use a stable
{code, message} body mapped onto HTTP status codes.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .curate import CurationError, CurationSession

_STATUS = {"not_found": 404, "conflict": 409, "invalid": 422, "complete": 409}


class DecisionBody(BaseModel):
    phrase: str
    action: Literal["accept", "block", "merge"]
    target: str | None = None


def _error_response(code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=_STATUS.get(code, 400),
        content={"code": code, "message": message},
    )


def create_app(session: CurationSession, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="topicminer curation service", docs_url=None, redoc_url=None)
    lock = threading.Lock()

    @app.exception_handler(CurationError)
    async def _curation_error(_request: Request, exc: CurationError):
        return _error_response(exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return _error_response("invalid", str(exc.errors()[:1]))

    @app.get("/api/session")
    def get_session():
        with lock:
            return session.summary()

    @app.get("/api/candidates")
    def get_candidates(limit: int = 50):
        with lock:
            rows = session.candidates(limit=limit)
            return [
                {
                    "rank": row.rank,
                    "phrase": row.phrase,
                    "display_form": row.display_form,
                    "weighted_total": row.weighted_total,
                    "decided": False,
                }
                for row in rows
            ]

    @app.post("/api/decisions")
    def post_decision(body: DecisionBody):
        with lock:
            session.decide(body.phrase, body.action, body.target)
            return session.summary()

    @app.delete("/api/decisions/last")
    def undo_last():
        with lock:
            session.undo()
            return session.summary()

    @app.get("/api/export/topics")
    def export_topics(upto: int = 20):
        with lock:
            topics = session.export_topics()
            plot = session.export_plot(upto=upto)
            return {
                "target_k": session.target_k,
                "complete": session.complete,
                "topics": [
                    {
                        "rank": row.rank,
                        "phrase": row.phrase,
                        "display_form": row.display_form,
                        "weighted_total": row.weighted_total,
                        "accepted": row.phrase in session.accepted,
                    }
                    for row in topics
                ],
                "plot": [
                    {
                        "rank": row.rank,
                        "display_form": row.display_form,
                        "weighted_total": row.weighted_total,
                        "band": row.band,
                    }
                    for row in plot
                ],
            }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
