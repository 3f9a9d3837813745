"""HTTP API over a frozen scored snapshot.

All endpoints are reads; the snapshot lives on ``app.state`` and can be
swapped atomically (`set_snapshot`) after a re-ingest while in-flight
requests finish on the old one.
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import DisconnectedError, NodeNotFoundError
from .snapshot import (
    ScoredSnapshot,
    expand_node,
    rank_list,
    search_companies,
    subgraph_to_root,
    whitespace_connections,
)

API_PREFIX = "/api/v1"


class RankingRequest(BaseModel):
    ids: list[str]


def set_snapshot(app: FastAPI, snapshot: ScoredSnapshot) -> None:
    app.state.snapshot = snapshot


def create_app(snapshot: ScoredSnapshot, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="flowrank", docs_url=None, redoc_url=None)
    set_snapshot(app, snapshot)

    @app.exception_handler(NodeNotFoundError)
    async def unknown_id(request: Request, exc: NodeNotFoundError):
        return JSONResponse(
            status_code=404, content={"detail": {"error": "unknown_id", "id": exc.node_id}}
        )

    @app.exception_handler(DisconnectedError)
    async def disconnected(request: Request, exc: DisconnectedError):
        return JSONResponse(
            status_code=404,
            content={
                "detail": {
                    "error": "disconnected",
                    "source": exc.source,
                    "target": exc.target,
                }
            },
        )

    @app.get("/healthz")
    def healthz(request: Request):
        snap: ScoredSnapshot = request.app.state.snapshot
        return {
            "status": "ok",
            "nodes": snap.graph.node_count,
            "edges": snap.graph.edge_count,
            "root": snap.graph.root_id,
            "variant": snap.variant,
            "gamma": snap.gamma,
        }

    @app.get(API_PREFIX + "/companies")
    def companies(
        request: Request,
        q: str = Query(..., min_length=1),
        limit: int = Query(20, ge=1, le=500),
    ):
        snap = request.app.state.snapshot
        return [summary.to_dict() for summary in search_companies(snap, q, limit)]

    @app.get(API_PREFIX + "/companies/{node_id}")
    def company_detail(request: Request, node_id: str):
        snap = request.app.state.snapshot
        return snap.company_summary(node_id, with_description=True).to_dict()

    @app.post(API_PREFIX + "/rankings")
    def rankings(request: Request, body: RankingRequest):
        snap = request.app.state.snapshot
        return {"entries": [summary.to_dict() for summary in rank_list(snap, body.ids)]}

    @app.get(API_PREFIX + "/companies/{node_id}/whitespace")
    def whitespace(
        request: Request, node_id: str, limit: int = Query(10, ge=1, le=500)
    ):
        snap = request.app.state.snapshot
        return {
            "entries": [
                summary.to_dict()
                for summary in whitespace_connections(snap, node_id, limit)
            ]
        }

    @app.get(API_PREFIX + "/companies/{node_id}/subgraph")
    def subgraph(
        request: Request,
        node_id: str,
        maxPaths: int = Query(5, ge=1, le=50),
    ):
        snap = request.app.state.snapshot
        return subgraph_to_root(snap, node_id, maxPaths).to_dict()

    @app.get(API_PREFIX + "/nodes/{node_id}/neighbors")
    def neighbors(
        request: Request, node_id: str, limit: int = Query(10, ge=1, le=500)
    ):
        snap = request.app.state.snapshot
        return expand_node(snap, node_id, limit).to_dict()

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
