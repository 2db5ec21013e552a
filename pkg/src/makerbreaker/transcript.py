"""Game transcripts: a JSON-lines record of one full game.

Line 1 is the header (board, goal, bias, who moves first, seed,
strategy specs, generator id, optional schedule).  Then one line per
move, in play order.  The last line carries the result, the witness if
the goal was achieved, and optional strategy extras (phase records,
tree snapshot, diagnostics).

Everything is plain JSON with sorted keys and compact separators, so a
rerun with the same seed produces a byte-identical file.  Ordinal
labels serialize as literals in the ordinal grammar, never as numbers,
so finite and transfinite labels round-trip the same way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .boards import Edge, Vertex, make_edge
from .game import GameState, Goal, Move, Witness
from .ordinals import Ordinal, OrdinalParseError

GENERATOR_ID = "python-random-mt19937/v1"

RESULTS = ("maker", "breaker", "budget")


class TranscriptError(ValueError):
    """Malformed transcript; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def vertex_to_json(v: Vertex) -> dict[str, str]:
    out: dict[str, str] = {"label": str(v.label)}
    if v.side is not None:
        out["side"] = v.side
    return out


def vertex_from_json(data: Any, line: int) -> Vertex:
    if not isinstance(data, dict) or "label" not in data:
        raise TranscriptError(line, f"vertex must be an object with a label, got {data!r}")
    side = data.get("side")
    if side not in (None, "L", "R"):
        raise TranscriptError(line, f"vertex side must be 'L' or 'R', got {side!r}")
    try:
        label = Ordinal.parse(data["label"])
    except (OrdinalParseError, TypeError) as exc:
        raise TranscriptError(line, f"bad vertex label: {exc}") from None
    return Vertex(side, label)


def edge_to_json(e: Edge) -> list[dict[str, str]]:
    return [vertex_to_json(e.a), vertex_to_json(e.b)]


def edge_from_json(data: Any, line: int) -> Edge:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise TranscriptError(line, f"edge must be a pair of vertices, got {data!r}")
    a = vertex_from_json(data[0], line)
    b = vertex_from_json(data[1], line)
    try:
        return make_edge(a, b)
    except Exception as exc:
        raise TranscriptError(line, f"bad edge: {exc}") from None


def witness_to_json(witness: Witness) -> Any:
    if isinstance(witness, tuple):
        lefts, rights = witness
        return {
            "left": [vertex_to_json(v) for v in lefts],
            "right": [vertex_to_json(v) for v in rights],
        }
    return [vertex_to_json(v) for v in witness]


def witness_from_json(data: Any, line: int) -> Witness:
    if isinstance(data, dict):
        if set(data) != {"left", "right"}:
            raise TranscriptError(line, "two-sided witness needs left and right")
        return (
            [vertex_from_json(v, line) for v in data["left"]],
            [vertex_from_json(v, line) for v in data["right"]],
        )
    if isinstance(data, list):
        return [vertex_from_json(v, line) for v in data]
    raise TranscriptError(line, f"witness must be a list or left/right object, got {data!r}")


@dataclass(frozen=True)
class MoveRecord:
    turn: str
    step: int
    player: str
    edge: Edge

    def to_json(self) -> dict[str, Any]:
        return {
            "turn": self.turn,
            "step": self.step,
            "player": self.player,
            "edge": edge_to_json(self.edge),
        }


@dataclass
class Transcript:
    board: str
    goal: str
    bias: int
    breaker_first: bool
    seed: Any
    strategies: dict[str, str]
    moves: list[MoveRecord] = field(default_factory=list)
    result: str = "breaker"
    witness: Witness | None = None
    generator: str = GENERATOR_ID
    schedule: str | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_game(
        cls,
        state: GameState,
        goal: Goal,
        *,
        seed: Any,
        strategies: dict[str, str],
        result: str,
        witness: Witness | None = None,
        extras: dict[str, Any] | None = None,
    ) -> "Transcript":
        sched = state.schedule
        return cls(
            board=state.board.describe(),
            goal=goal.literal(),
            bias=state.bias,
            breaker_first=state.breaker_first,
            seed=seed,
            strategies=dict(strategies),
            moves=[_record(m) for m in state.history],
            result=result,
            witness=witness,
            schedule=sched.literal() if sched is not None else None,
            extras=dict(extras or {}),
        )

    def header_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "version": 1,
            "board": self.board,
            "goal": self.goal,
            "bias": self.bias,
            "breakerFirst": self.breaker_first,
            "seed": self.seed,
            "strategies": self.strategies,
            "generator": self.generator,
        }
        if self.schedule is not None:
            out["schedule"] = self.schedule
        return out

    def final_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"result": self.result}
        if self.witness is not None:
            out["witness"] = witness_to_json(self.witness)
        out.update(self.extras)
        return out

    def to_lines(self) -> list[str]:
        lines = [_dump(self.header_json())]
        lines.extend(_dump(m.to_json()) for m in self.moves)
        lines.append(_dump(self.final_json()))
        return lines

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for line in self.to_lines():
                fh.write(line + "\n")

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Transcript":
        rows: list[tuple[int, Any]] = []
        for no, raw in enumerate(lines, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                rows.append((no, json.loads(raw)))
            except json.JSONDecodeError as exc:
                raise TranscriptError(no, f"invalid JSON: {exc.msg}") from None
        if len(rows) < 2:
            raise TranscriptError(len(rows), "transcript needs a header and a result line")
        return cls._assemble(rows)

    @classmethod
    def read(cls, path) -> "Transcript":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def _assemble(cls, rows: Sequence[tuple[int, Any]]) -> "Transcript":
        line, header = rows[0]
        if not isinstance(header, dict) or header.get("version") != 1:
            raise TranscriptError(line, "header must declare version 1")
        for key in ("board", "goal", "bias", "breakerFirst", "seed", "strategies"):
            if key not in header:
                raise TranscriptError(line, f"header missing {key!r}")
        if not isinstance(header["bias"], int) or header["bias"] < 1:
            raise TranscriptError(line, "bias must be a positive integer")
        moves: list[MoveRecord] = []
        for no, row in rows[1:-1]:
            moves.append(_move_from_json(row, no))
        line, tail = rows[-1]
        if not isinstance(tail, dict) or "result" not in tail:
            raise TranscriptError(line, "last line must carry the result")
        if tail["result"] not in RESULTS:
            raise TranscriptError(line, f"unknown result {tail['result']!r}")
        witness = None
        if "witness" in tail:
            witness = witness_from_json(tail["witness"], line)
        extras = {k: v for k, v in tail.items() if k not in ("result", "witness")}
        return cls(
            board=header["board"],
            goal=header["goal"],
            bias=header["bias"],
            breaker_first=bool(header["breakerFirst"]),
            seed=header["seed"],
            strategies=dict(header["strategies"]),
            moves=moves,
            result=tail["result"],
            witness=witness,
            generator=header.get("generator", GENERATOR_ID),
            schedule=header.get("schedule"),
            extras=extras,
        )

    def summary(self) -> dict[str, Any]:
        """Headline metrics, recomputable from the transcript alone."""
        maker_moves = sum(1 for m in self.moves if m.player == "M")
        breaker_moves = len(self.moves) - maker_moves
        out: dict[str, Any] = {
            "result": self.result,
            "makerMoves": maker_moves,
            "breakerMoves": breaker_moves,
            "steps": len(self.moves),
        }
        if self.witness is not None:
            w = self.witness
            out["witnessSize"] = (
                len(w[0]) + len(w[1]) if isinstance(w, tuple) else len(w)
            )
        return out


def _record(move: Move) -> MoveRecord:
    return MoveRecord(
        turn=str(move.turn),
        step=move.step,
        player=move.player,
        edge=move.edge,
    )


def _move_from_json(row: Any, line: int) -> MoveRecord:
    if not isinstance(row, dict):
        raise TranscriptError(line, f"move must be an object, got {row!r}")
    for key in ("turn", "step", "player", "edge"):
        if key not in row:
            raise TranscriptError(line, f"move missing {key!r}")
    if row["player"] not in ("M", "B"):
        raise TranscriptError(line, f"player must be 'M' or 'B', got {row['player']!r}")
    if not isinstance(row["step"], int) or row["step"] < 0:
        raise TranscriptError(line, "step must be a non-negative integer")
    try:
        Ordinal.parse(row["turn"])
    except (OrdinalParseError, TypeError) as exc:
        raise TranscriptError(line, f"bad turn ordinal: {exc}") from None
    return MoveRecord(
        turn=row["turn"],
        step=row["step"],
        player=row["player"],
        edge=edge_from_json(row["edge"], line),
    )


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
