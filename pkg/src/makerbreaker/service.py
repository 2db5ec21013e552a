"""JSON-over-HTTP session service for interactive play.

One session is one live game between a human (through the API) and an
engine strategy.  The engine answers synchronously inside the request
that triggered it, sessions are in-memory, and every mutation happens
under that session's lock.  There is no game state outside `GameState`;
snapshots, transcripts, and hints are all derived views, so what the
service reports is exactly what a replay of its transcript would say.

Bodies use the transcript JSON vocabulary: vertices are
`{"side"?, "label"}`, moves are `{"turn", "step", "player", "edge"}`.
"""

from __future__ import annotations

import os
import threading
import uuid
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .boards import BoardError, edge_key
from .game import (
    GameState,
    IllegalMove,
    MAKER,
    BREAKER,
    check_goal_fits_board,
    witness_after_claim,
)
from .referee import role_rng
from .specs import SpecError, make_strategy, parse_board, parse_goal, parse_schedule
from .strategies.base import Exhausted
from .transcript import (
    MoveRecord,
    Transcript,
    _dump,
    edge_from_json,
    witness_to_json,
)
from .treemaker import TreeMakerStrategy


class ApiError(Exception):
    """Maps straight onto an HTTP response."""

    def __init__(self, status: int, error: str, message: str, field: str | None = None):
        super().__init__(message)
        self.status = status
        self.body: dict[str, Any] = {"error": error, "message": message}
        if field is not None:
            self.body["field"] = field


def _bad_request(field: str, message: str) -> ApiError:
    return ApiError(400, "InvalidConfig", message, field=field)


ROLES = {"maker": MAKER, "breaker": BREAKER}


class Session:
    """One live game; all mutation happens under `lock`."""

    def __init__(self, body: dict[str, Any], transcript_path: str | None):
        if not isinstance(body, dict):
            raise ApiError(400, "InvalidConfig", "request body must be an object")
        self.lock = threading.Lock()
        self.transcript_path = transcript_path
        self._persisted = 0

        role_text = str(body.get("humanRole", "")).strip().lower()
        if role_text not in ROLES:
            raise _bad_request("humanRole", "humanRole must be Maker or Breaker")
        self.human_role = ROLES[role_text]
        self.engine_role = BREAKER if self.human_role == MAKER else MAKER

        try:
            self.board = parse_board(str(body.get("board", "")))
        except SpecError as exc:
            raise _bad_request("board", str(exc)) from None
        try:
            self.goal = parse_goal(str(body.get("goal", "")))
            check_goal_fits_board(self.goal, self.board)
        except (SpecError, BoardError) as exc:
            raise _bad_request("goal", str(exc)) from None

        try:
            self.bias = int(body.get("bias", 1))
            if self.bias < 1:
                raise ValueError
        except (TypeError, ValueError):
            raise _bad_request("bias", "bias must be a positive integer") from None
        self.breaker_first = bool(body.get("breakerFirst", False))
        schedule_lit = body.get("schedule")
        try:
            self.schedule = parse_schedule(schedule_lit) if schedule_lit else None
        except SpecError as exc:
            raise _bad_request("schedule", str(exc)) from None

        self.seed = body.get("seed", 0)
        self.engine_spec = str(body.get("engineStrategy", "")).strip()
        try:
            self.strategy = make_strategy(
                self.engine_spec,
                board=self.board,
                goal=self.goal,
                bias=self.bias,
                breaker_first=self.breaker_first,
            )
        except SpecError as exc:
            raise _bad_request("engineStrategy", str(exc)) from None

        self.state = GameState(
            self.board,
            bias=self.bias,
            breaker_first=self.breaker_first,
            schedule=self.schedule,
        )
        self.rng = role_rng(self.seed, self.engine_role)
        self.result: str | None = None
        self.reason: str | None = None
        self.witness = None
        self._persist()
        # The engine opens when the turn discipline puts it first.
        self.engine_moves()

    # -- play ---------------------------------------------------------

    def _finish(self, result: str, reason: str) -> None:
        self.result, self.reason = result, reason
        self._persist()

    def _after_claim(self, edge, role) -> None:
        w = witness_after_claim(self.state, self.goal, edge, role)
        if w is not None:
            self.witness = w
            self._finish("maker", "goal")

    def engine_moves(self) -> list[dict[str, Any]]:
        """Let the engine play until it is the human's turn again."""
        replies: list[dict[str, Any]] = []
        while self.result is None and self.state.expected_player() == self.engine_role:
            if self.state.exhausted():
                self._finish("breaker", "exhausted")
                break
            try:
                edge = self.strategy.next_move(self.state, self.engine_role, self.rng)
            except Exhausted:
                self._finish("breaker", "exhausted")
                break
            except (ValueError, BoardError) as exc:
                raise _bad_request("engineStrategy", str(exc)) from None
            move = self.state.claim(self.engine_role, edge)
            replies.append(_move_json(move))
            self._after_claim(edge, self.engine_role)
        if self.result is None and self.state.exhausted():
            self._finish("breaker", "exhausted")
        self._persist()
        return replies

    def human_move(self, body: dict[str, Any]) -> dict[str, Any]:
        if self.result is not None:
            raise ApiError(409, "IllegalMove", f"the game is over ({self.result})")
        if not isinstance(body, dict) or "edge" not in body:
            raise ApiError(400, "InvalidConfig", "body needs an edge", field="edge")
        try:
            edge = edge_from_json(body["edge"], 0)
        except Exception as exc:
            raise ApiError(400, "InvalidConfig", str(exc), field="edge") from None
        try:
            move = self.state.claim(self.human_role, edge)
        except IllegalMove as exc:
            raise ApiError(409, "IllegalMove", str(exc)) from None
        self._after_claim(edge, self.human_role)
        self._persist()
        engine = self.engine_moves()
        out: dict[str, Any] = {
            "human": _move_json(move),
            "engine": engine,
            "result": self.result,
            "reason": self.reason,
        }
        if self.witness is not None:
            out["witness"] = witness_to_json(self.witness)
        tree = self._tree_or_none()
        if tree is not None:
            out["tree"] = tree.to_json()
            out["hints"] = self._hints()
        return out

    # -- views ----------------------------------------------------------

    def snapshot(self) -> dict[str, Any]:
        state = self.state
        out: dict[str, Any] = {
            "board": self.board.describe(),
            "goal": self.goal.literal(),
            "bias": self.bias,
            "breakerFirst": self.breaker_first,
            "humanRole": "maker" if self.human_role == MAKER else "breaker",
            "engineStrategy": self.strategy.spec,
            "toMove": (
                None
                if self.result is not None
                else ("human" if state.expected_player() == self.human_role else "engine")
            ),
            "result": self.result,
            "reason": self.reason,
            "history": [_move_json(m) for m in state.history],
            "makerClaims": [
                _edge_json(e) for e in sorted(state.maker_edges, key=edge_key)
            ],
            "breakerClaims": [
                _edge_json(e) for e in sorted(state.breaker_edges, key=edge_key)
            ],
        }
        if self.schedule is not None and self.schedule.literal():
            out["schedule"] = self.schedule.literal()
        if self.witness is not None:
            out["witness"] = witness_to_json(self.witness)
        return out

    def _tree_or_none(self) -> Any:
        if isinstance(self.strategy, TreeMakerStrategy):
            return self.strategy.tree
        return None

    def tree_json(self) -> dict[str, Any]:
        if self.board.bipartite:
            raise ApiError(409, "NotApplicable", "bipartite games grow no tree")
        tree = self._tree_or_none()
        if tree is None:
            raise ApiError(
                409,
                "NotApplicable",
                f"engine strategy {self.strategy.spec} keeps no tree",
            )
        return {"tree": tree.to_json()}

    def _hints(self) -> dict[str, Any]:
        """Which chain-extension candidates Breaker has already blocked.

        Computed live from Breaker's adjacency, not from the strategy's
        lazy index, so hints are current even mid-turn.
        """
        strat = self.strategy
        tree = strat.tree
        active = strat._active
        out: dict[str, Any] = {
            "active": None if active is None else _vertex_json(active),
            "chain": [_vertex_json(v) for v in strat._chain],
            "candidates": [],
        }
        if active is None or tree is None or not strat._chain:
            return out
        joined = self.state.breaker_adj.get(active, ())
        for w in tree.children(strat._chain[-1]):
            blocked = any(
                x in tree and tree.is_ancestor_or_self(w, x) for x in joined
            )
            out["candidates"].append(
                {"vertex": _vertex_json(w), "blocked": blocked}
            )
        return out

    def hints_json(self) -> dict[str, Any]:
        if self._tree_or_none() is None:
            raise ApiError(
                409,
                "NotApplicable",
                f"engine strategy {self.strategy.spec} offers no hints",
            )
        return self._hints()

    # -- persistence ------------------------------------------------------

    def _transcript(self) -> Transcript:
        names = {"maker": "human", "breaker": "human"}
        names["maker" if self.engine_role == MAKER else "breaker"] = self.strategy.spec
        extras: dict[str, Any] = {}
        if self.result is not None:
            extras = dict(self.strategy.transcript_extras())
            diag = self.strategy.diagnostics()
            if diag:
                label = "maker" if self.engine_role == MAKER else "breaker"
                extras["diagnostics"] = {label: diag}
        return Transcript.from_game(
            self.state,
            self.goal,
            seed=self.seed,
            strategies=names,
            result=self.result or "budget",
            witness=self.witness,
            extras=extras,
        )

    def _persist(self) -> None:
        """Append any new transcript lines; header first, final at the end."""
        if self.transcript_path is None:
            return
        tr = self._transcript()
        lines = [_dump(tr.header_json())]
        lines += [_dump(m.to_json()) for m in tr.moves]
        if self.result is not None:
            lines.append(_dump(tr.final_json()))
        if len(lines) > self._persisted:
            with open(self.transcript_path, "a", encoding="utf-8") as fh:
                for line in lines[self._persisted :]:
                    fh.write(line + "\n")
            self._persisted = len(lines)


def _vertex_json(v) -> dict[str, str]:
    from .transcript import vertex_to_json

    return vertex_to_json(v)


def _edge_json(e) -> list[dict[str, str]]:
    from .transcript import edge_to_json

    return edge_to_json(e)


def _move_json(move) -> dict[str, Any]:
    return MoveRecord(str(move.turn), move.step, move.player, move.edge).to_json()


def create_app(transcript_dir: str | None = None) -> FastAPI:
    """Build the FastAPI application; sessions live in this closure."""
    app = FastAPI(title="makerbreaker sessions", docs_url=None, redoc_url=None)
    # The browser client is served as static files from wherever is handy,
    # so any origin may talk to us; sessions are unauthenticated anyway.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    if transcript_dir is not None:
        os.makedirs(transcript_dir, exist_ok=True)

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body)

    def _get(sid: str) -> Session:
        with registry_lock:
            session = sessions.get(sid)
        if session is None:
            raise ApiError(404, "UnknownSession", f"no session {sid}")
        return session

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise ApiError(400, "InvalidConfig", "body must be JSON") from None
        sid = uuid.uuid4().hex
        path = (
            os.path.join(transcript_dir, f"{sid}.jsonl")
            if transcript_dir is not None
            else None
        )
        session = Session(body, path)
        with registry_lock:
            sessions[sid] = session
        return {"sessionId": sid, "state": session.snapshot()}

    @app.get("/sessions/{sid}")
    async def get_state(sid: str):
        session = _get(sid)
        with session.lock:
            return session.snapshot()

    @app.post("/sessions/{sid}/moves")
    async def post_move(sid: str, request: Request):
        session = _get(sid)
        try:
            body = await request.json()
        except Exception:
            raise ApiError(400, "InvalidConfig", "body must be JSON") from None
        with session.lock:
            return session.human_move(body)

    @app.get("/sessions/{sid}/tree")
    async def get_tree(sid: str):
        session = _get(sid)
        with session.lock:
            return session.tree_json()

    @app.get("/sessions/{sid}/hints")
    async def get_hints(sid: str):
        session = _get(sid)
        with session.lock:
            return session.hints_json()

    return app
