"""HTTP service exposing equivalence checks and live game sessions."""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import backforth, fo, game
from .structures import (
    ParseError,
    SignatureMismatchError,
    Structure,
    StructureError,
    parse_structure,
)

DEFAULT_MAX_SIZE = 12
DEFAULT_MAX_ROUNDS = 6
DEFAULT_TTL_SECS = 3600.0


class ApiError(Exception):
    STATUS = {
        "bad_request": 400,
        "signature_mismatch": 400,
        "size_cap_exceeded": 400,
        "not_found": 404,
        "not_your_turn": 409,
        "illegal_move": 409,
        "session_finished": 409,
    }

    def __init__(self, code: str, message: str):
        assert code in self.STATUS
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = self.STATUS[code]


@dataclass
class Session:
    id: str
    position: game.GamePosition
    human_role: game.Player
    solver: game.GameSolver
    created_at: float
    status: str = "active"  # "active" | "finished"
    winner: Optional[game.Player] = None
    sentence: Optional[str] = None
    move_log: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class CheckBody(BaseModel):
    structure_a: str
    structure_b: str
    rounds: int


class CreateSessionBody(CheckBody):
    human_role: str


class MoveBody(BaseModel):
    side: str
    element: int
    # optimistic concurrency: the move-log length the client saw; a stale
    # submission (double click, lost race) is rejected with not_your_turn
    turn: Optional[int] = None


def _structure_view(s: Structure) -> dict:
    return {
        "name": s.name,
        "size": s.size,
        "relations": [
            {"name": rel, "arity": arity, "tuples": sorted(list(t) for t in s.tables[rel])}
            for rel, arity in s.sig.relations
        ],
    }


def _session_view(s: Session) -> dict:
    p = s.position
    turn = None
    if s.status == "active":
        turn = "human" if p.to_move is s.human_role else "engine"
    return {
        "id": s.id,
        "status": s.status,
        "winner": s.winner.value if s.winner else None,
        "human_role": s.human_role.value,
        "rounds_total": p.rounds_total,
        "rounds_done": p.rounds_done,
        "turn": turn,
        "structures": {"left": _structure_view(p.a), "right": _structure_view(p.b)},
        "history": [list(pair) for pair in p.history.pairs],
        "pending": (
            {"side": p.pending.side.value, "element": p.pending.element} if p.pending else None
        ),
        "move_log": list(s.move_log),
        "sentence": s.sentence,
    }


def _finish_if_over(s: Session) -> bool:
    winner = game.winner_if_terminal(s.position)
    if winner is None:
        return False
    s.status = "finished"
    s.winner = winner
    if winner is game.Player.SPOILER and s.sentence is None:
        p = s.position
        witness = fo.distinguishing_sentence(p.a, p.b, p.rounds_total)
        if witness is not None:
            s.sentence = fo.to_text(witness)
    return True


def _engine_turns(s: Session) -> None:
    """Apply engine moves until it is the human's turn or the game is over."""
    while not _finish_if_over(s) and s.position.to_move is not s.human_role:
        mv = s.solver.best_move(s.position)
        s.position = game.apply_move(s.position, mv)
        s.move_log.append(
            {
                "by": "engine",
                "player": s.human_role.opponent().value,
                "side": mv.side.value,
                "element": mv.element,
            }
        )


def create_app(
    max_size: int = DEFAULT_MAX_SIZE,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    ttl_secs: float = DEFAULT_TTL_SECS,
    static_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="ehrenfeucht", docs_url=None, redoc_url=None)
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad_request", "message": str(exc.errors())}
        )

    def parse_checked(text: str, which: str) -> Structure:
        try:
            s = parse_structure(text)
        except (ParseError, StructureError) as e:
            raise ApiError("bad_request", f"structure {which}: {e}") from None
        if s.size > max_size:
            raise ApiError(
                "size_cap_exceeded", f"structure {which} has {s.size} elements; cap is {max_size}"
            )
        return s

    def load_pair(body: CheckBody) -> tuple[Structure, Structure]:
        a = parse_checked(body.structure_a, "a")
        b = parse_checked(body.structure_b, "b")
        try:
            game.initial_position(a, b, 0)
        except SignatureMismatchError as e:
            raise ApiError("signature_mismatch", str(e)) from None
        if body.rounds < 1:
            raise ApiError("bad_request", "rounds must be >= 1")
        if body.rounds > max_rounds:
            raise ApiError("size_cap_exceeded", f"rounds cap is {max_rounds}")
        return a, b

    def purge_expired() -> None:
        now = time.monotonic()
        with registry_lock:
            expired = [sid for sid, s in sessions.items() if now - s.created_at > ttl_secs]
            for sid in expired:
                del sessions[sid]

    def get_session(sid: str) -> Session:
        purge_expired()
        with registry_lock:
            s = sessions.get(sid)
        if s is None:
            raise ApiError("not_found", f"no session {sid}")
        return s

    @app.post("/api/check")
    async def check(body: CheckBody):
        a, b = load_pair(body)
        solver = backforth.SigmaSolver(a, b)
        equivalent = solver.membership(backforth.PartialMap(), body.rounds)
        level = None
        sentence = None
        if not equivalent:
            level = backforth.separation_level(a, b, body.rounds)
            witness = fo.distinguishing_sentence(a, b, body.rounds)
            sentence = fo.to_text(witness) if witness is not None else None
        return {
            "equivalent": equivalent,
            "separation_level": level,
            "sentence": sentence,
            "winner": (game.Player.DUPLICATOR if equivalent else game.Player.SPOILER).value,
        }

    @app.post("/api/sessions", status_code=201)
    async def create_session(body: CreateSessionBody):
        a, b = load_pair(body)
        try:
            role = game.Player(body.human_role)
        except ValueError:
            raise ApiError("bad_request", "human_role must be 'spoiler' or 'duplicator'") from None
        purge_expired()
        session = Session(
            id=secrets.token_hex(8),
            position=game.initial_position(a, b, body.rounds),
            human_role=role,
            solver=game.GameSolver(a, b),
            created_at=time.monotonic(),
        )
        with session.lock:
            _engine_turns(session)
        with registry_lock:
            sessions[session.id] = session
        return _session_view(session)

    @app.get("/api/sessions/{sid}")
    async def get_session_state(sid: str):
        return _session_view(get_session(sid))

    @app.post("/api/sessions/{sid}/moves")
    async def submit_move(sid: str, body: MoveBody):
        s = get_session(sid)
        # the human move and the engine replies are separate critical sections;
        # a submission landing between them sees the engine's turn and fails
        with s.lock:
            if s.status == "finished":
                raise ApiError("session_finished", "this game is over")
            if s.position.to_move is not s.human_role:
                raise ApiError("not_your_turn", "waiting for the engine")
            if body.turn is not None and body.turn != len(s.move_log):
                raise ApiError("not_your_turn", "the game has moved on since that state")
            try:
                side = game.Side(body.side)
            except ValueError:
                raise ApiError("bad_request", "side must be 'left' or 'right'") from None
            mv = game.Move(side, body.element)
            try:
                if mv not in game.legal_moves(s.position):
                    raise ApiError("illegal_move", f"{body.side} {body.element} is not legal here")
                s.position = game.apply_move(s.position, mv)
            except game.GameError as e:
                raise ApiError("illegal_move", str(e)) from None
            s.move_log.append(
                {
                    "by": "human",
                    "player": s.human_role.value,
                    "side": mv.side.value,
                    "element": mv.element,
                }
            )
        with s.lock:
            _engine_turns(s)
            return _session_view(s)

    @app.delete("/api/sessions/{sid}", status_code=204)
    async def delete_session(sid: str):
        get_session(sid)
        with registry_lock:
            sessions.pop(sid, None)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
