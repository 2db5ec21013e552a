"""Board restriction: reuse a Breaker strategy across an embedding.

A Breaker strategy for a host board also handles any game on a board
that embeds into it: map each real Maker move into the host, consult
the wrapped strategy there, and map its answer back.  Answers that
land outside the embedded image (or on an edge already spent) are
discarded in favour of a plain fallback; discarding can only help the
real Breaker, since blocked host edges stay blocked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..boards import Board, Edge, Vertex, left, make_edge, plain, right
from ..game import BREAKER, MAKER, GameState
from .base import Strategy, fallback_move


@dataclass(frozen=True)
class Embedding:
    """Injective vertex map between boards, with a partial inverse."""

    name: str
    map_vertex: Callable[[Vertex], Vertex]
    unmap_vertex: Callable[[Vertex], Vertex | None]

    def map_edge(self, e: Edge) -> Edge:
        return make_edge(self.map_vertex(e.a), self.map_vertex(e.b))

    def unmap_edge(self, e: Edge) -> Edge | None:
        a = self.unmap_vertex(e.a)
        b = self.unmap_vertex(e.b)
        if a is None or b is None:
            return None
        try:
            return make_edge(a, b)
        except Exception:
            return None


def identity_embedding() -> Embedding:
    return Embedding("identity", lambda v: v, lambda v: v)


def bipartite_to_complete(m: int) -> Embedding:
    """Standard embedding of a two-sided board into a one-sided one.

    Left labels keep their value, Right labels shift up by the size of
    the left side, which must be finite.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"left side size must be a positive int, got {m!r}")

    def fwd(v: Vertex) -> Vertex:
        if v.side == "L":
            return plain(v.label)
        if v.side == "R":
            # m + label, not label + m: transfinite labels must stay put
            # so the image fits under the host horizon.
            return plain(m + v.label)
        raise ValueError(f"not a two-sided vertex: {v}")

    def back(v: Vertex) -> Vertex | None:
        if v.side is not None:
            return None
        if v.label < m:
            return left(v.label)
        if v.label.is_finite:
            return right(v.label.as_int() - m)
        return right(v.label)

    return Embedding(f"shift{m}", fwd, back)


class RestrictedStrategy(Strategy):
    """Plays Breaker on a board embedded in a larger host board."""

    def __init__(self, wrapped: Strategy, embedding: Embedding, host: Board) -> None:
        self._wrapped = wrapped
        self._embedding = embedding
        self._host = host
        self._virtual: GameState | None = None
        self._seen = 0
        self._mapped = 0
        self._dropped = 0
        self.spec = f"restrict({wrapped.spec},{embedding.name})"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if role != BREAKER:
            raise ValueError("restricted strategy plays Breaker only")
        if self._virtual is None:
            self._virtual = GameState(
                self._host,
                bias=state.bias,
                breaker_first=state.breaker_first,
                enforce_turns=False,
            )
        for move in state.history[self._seen :]:
            if move.player == MAKER:
                self._virtual.claim(MAKER, self._embedding.map_edge(move.edge))
        self._seen = len(state.history)

        answer = self._wrapped.next_move(self._virtual, BREAKER, rng)
        self._virtual.claim(BREAKER, answer)
        back = self._embedding.unmap_edge(answer)
        if (
            back is not None
            and state.board.contains_edge(back)
            and back not in state.claimed
        ):
            self._mapped += 1
            return back
        self._dropped += 1
        return fallback_move(state)

    def diagnostics(self) -> dict:
        return {"mapped": self._mapped, "droppedOutsideImage": self._dropped}
