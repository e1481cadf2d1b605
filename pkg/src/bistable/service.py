"""HTTP game service: sessions of the edge-toggle flux game over JSON.

Session mutation is serialized per session id (single writer); solver
calls are pure. Every response carries a schema version.
"""

from __future__ import annotations

import os
import random
import threading
import uuid
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import catalog, flux, jsonio
from .cells import CellComplex

SCHEMA_VERSION = 1


class SessionRequest(BaseModel):
    complex_id: str | None = None
    board: str | None = None  # accepted alias for complex_id
    complex: dict | None = None
    mode: str = "free"
    start: list[int] | None = None
    target: list[int] | None = None
    scramble_moves: int = 0
    seed: int = 0


class ToggleRequest(BaseModel):
    edge: int


@dataclass
class _Holder:
    session: flux.GameSession
    lock: threading.Lock


def board_complexes() -> dict[str, CellComplex]:
    """Catalog entries usable as game boards (anything with faces)."""
    out = {}
    for kind in catalog.kinds():
        sys = catalog.build_system(catalog.SystemSpec(kind))
        if sys.complex.n_faces:
            out[kind] = sys.complex
    return out


def _board_payload(name: str, x: CellComplex) -> dict:
    payload = {
        "id": name,
        "vertices": x.n_vertices,
        "edges": [[u, v] for u, v in x.edges],
        "faces": [list(f) for f in x.faces],
        "face_vertices": [x.face_vertex_walk(f) for f in range(x.n_faces)],
        "boundary_edges": x.boundary_edges(),
    }
    layout = {}
    for key in ("vertex_pos", "face_pos", "outer_face"):
        if key in x.labels:
            layout[key] = x.labels[key]
    if layout:
        payload["layout"] = layout
    return payload


def _state_payload(session_id: str, s: flux.GameSession) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "session_id": session_id,
        "board": s.board,
        "mode": s.boundary_mode,
        "faces": s.flux.to_list(),
        "target": s.target.to_list(),
        "sector": flux.session_sector(s).to_list(),
        "moves": len(s.moves),
        "won": s.won,
        "toggleable_edges": s.toggleable_edges(),
    }


def create_app(ui_dir: str | None = None, default_board: str = "icosahedron") -> FastAPI:
    app = FastAPI(title="flux game service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    boards = board_complexes()
    sessions: dict[str, _Holder] = {}

    def holder_of(session_id: str) -> _Holder:
        if session_id not in sessions:
            raise HTTPException(status_code=404, detail="unknown session")
        return sessions[session_id]

    @app.get("/complexes")
    def complexes() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "boards": [_board_payload(name, x) for name, x in sorted(boards.items())],
        }

    @app.post("/session")
    def create_session(req: SessionRequest) -> dict:
        if req.complex is not None:
            x = jsonio.complex_from_dict(req.complex)
            problems = x.validate()
            if problems:
                raise HTTPException(status_code=422, detail=f"invalid complex: {problems}")
            board = "custom"
        else:
            board = req.complex_id or req.board or default_board
            if board not in boards:
                raise HTTPException(status_code=404, detail=f"unknown board {board!r}")
            x = boards[board]
        if req.mode not in ("free", "frozen"):
            raise HTTPException(status_code=422, detail="mode must be 'free' or 'frozen'")
        for name, bits in (("start", req.start), ("target", req.target)):
            if bits is not None and len(bits) != x.n_faces:
                raise HTTPException(
                    status_code=422,
                    detail=f"{name} must list one bit per face ({x.n_faces})",
                )
        session = flux.new_session(x, req.mode, req.start, req.target, board)
        if req.scramble_moves:
            rng = random.Random(req.seed)
            scrambled = session
            legal = session.toggleable_edges()
            for _ in range(req.scramble_moves):
                scrambled = flux.toggle(scrambled, rng.choice(legal))
            session = flux.GameSession(
                x, req.mode, session.start, scrambled.flux,
                session.potential, session.moves, board,
            )
        session_id = uuid.uuid4().hex
        sessions[session_id] = _Holder(session, threading.Lock())
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": session_id,
            "state": _state_payload(session_id, session),
        }

    @app.get("/session/{session_id}")
    def get_session(session_id: str) -> dict:
        holder = holder_of(session_id)
        with holder.lock:
            return _state_payload(session_id, holder.session)

    @app.post("/session/{session_id}/toggle")
    def toggle_edge(session_id: str, req: ToggleRequest) -> dict:
        holder = holder_of(session_id)
        with holder.lock:
            try:
                holder.session = flux.toggle(holder.session, req.edge)
            except ValueError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            return _state_payload(session_id, holder.session)

    @app.post("/session/{session_id}/reset")
    def reset_session(session_id: str) -> dict:
        holder = holder_of(session_id)
        with holder.lock:
            holder.session = flux.reset(holder.session)
            return _state_payload(session_id, holder.session)

    @app.get("/session/{session_id}/solvable")
    def solvable(session_id: str) -> dict:
        holder = holder_of(session_id)
        with holder.lock:
            session = holder.session
        result = flux.session_solvable(session)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "session_id": session_id,
            "solvable": result.reachable,
            "invariant": result.invariant.to_list(),
        }
        if result.reachable:
            payload["solution"] = list(result.moves)
        return payload

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(
    port: int = 8321,
    host: str = "127.0.0.1",
    ui_dir: str | None = None,
    default_board: str = "icosahedron",
) -> None:
    import uvicorn

    uvicorn.run(create_app(ui_dir, default_board), host=host, port=port, log_level="warning")
