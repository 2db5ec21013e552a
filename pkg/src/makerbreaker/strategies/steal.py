"""Strategy stealing: turn a Breaker strategy into a Maker strategy.

The classical argument: an extra claimed edge never hurts.  The Maker
runs the wrapped Breaker strategy in a virtual game where roles are
swapped, answering each real opponent move as if it were a virtual
Maker move.  Free moves (the opening, and any move at a limit stage)
are banked; if the wrapped strategy later asks for an edge the Maker
already owns, the request is satisfied from the bank and a fresh free
move is claimed instead.

Restrictions: single-claim bias and Maker moving first.  The swap has
no sensible reading when the opponent claims several edges per turn.
"""

from __future__ import annotations

from ..boards import Edge
from ..game import BREAKER, MAKER, GameState
from .base import Strategy, fallback_move


class StealingStrategy(Strategy):
    """Adapts a Breaker strategy for the Maker seat."""

    def __init__(self, wrapped: Strategy) -> None:
        self._wrapped = wrapped
        self._virtual: GameState | None = None
        self._free: set[Edge] = set()
        self._seen = 0
        self._remaps: list[tuple[Edge, Edge]] = []
        self.spec = f"steal({wrapped.spec})"

    def _check_setting(self, state: GameState, role: str) -> None:
        if role != MAKER:
            raise ValueError("stealing strategy plays Maker only")
        if state.bias != 1:
            raise ValueError("stealing strategy requires bias 1")
        if state.breaker_first:
            raise ValueError("stealing strategy requires Maker to move first")

    def _ingest(self, state: GameState) -> None:
        assert self._virtual is not None
        for move in state.history[self._seen :]:
            if move.player == BREAKER:
                # Real opponent claims become virtual Maker claims.
                self._virtual.claim(MAKER, move.edge)
        self._seen = len(state.history)

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if self._virtual is None:
            self._check_setting(state, role)
            self._virtual = GameState(state.board, bias=1, enforce_turns=False)
        self._ingest(state)
        # Claim bookkeeping must balance exactly: the virtual Maker owns
        # the real opponent's edges, everything else I own is either
        # justified (virtual Breaker) or banked as free.
        assert len(self._virtual.maker_edges) == len(state.breaker_edges)
        assert len(self._virtual.breaker_edges) + len(self._free) == len(
            state.maker_edges
        )

        turn = state.next_turn_ordinal()
        if turn.classify() != "successor":
            # Openings and limit stages have no opponent move to answer.
            move = fallback_move(state)
            self._free.add(move)
            return move

        answer = self._wrapped.next_move(self._virtual, BREAKER, rng)
        if answer in self._free:
            # Already claimed it for free earlier; book it and bank a
            # replacement.
            self._free.discard(answer)
            self._virtual.claim(BREAKER, answer)
            move = fallback_move(state)
            self._free.add(move)
            self._remaps.append((answer, move))
            return move
        self._virtual.claim(BREAKER, answer)
        return answer

    def diagnostics(self) -> dict:
        return {
            "freeEdges": sorted(str(e) for e in self._free),
            "remapped": [[str(r), str(f)] for r, f in self._remaps],
        }
