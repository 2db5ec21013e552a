"""Phase-structured Maker play on bipartite boards.

Each phase centres on a fresh Right vertex and claims a fixed number of
edges into a pool of Left labels.  The pool for a phase is everything
on the Left except labels Breaker has already touched when the phase
starts, so pools are nested and shrink only under Breaker interference.
Claiming always takes the smallest available pool label, which keeps
the per-phase endpoint sets heavily overlapping; the end-game step then
looks for one Left set common to many phases, giving a complete
bipartite witness whose edges were all claimed phase by phase.

Pools are stored by complement (the stolen labels), so an unbounded
Left side costs nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .boards import BipartiteBoard, Edge, LazyBipartiteBoard, Vertex, left, make_edge
from .game import BREAKER, GameState, MAKER, Witness
from .ordinals import Ordinal
from .strategies.base import Strategy, fallback_move

# Node budget for the exact subset search before extract_biclique
# switches to the frequency heuristic.
EXACT_SEARCH_BOUND = 200_000

# The heuristic only combines labels from this many top candidates.
HEURISTIC_POOL = 20


@dataclass
class PhaseRecord:
    """One phase: its centre, its pool, and what was claimed into it."""

    index: int
    center: Vertex
    stolen: frozenset[Ordinal]
    claimed: list[Ordinal] = field(default_factory=list)
    complete: bool = False
    pool_size: int | None = None  # None on an unbounded Left side

    def in_pool(self, label: Ordinal) -> bool:
        return label not in self.stolen

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "index": self.index,
            "center": {"side": "R", "label": str(self.center.label)},
            "claimed": [str(u) for u in self.claimed],
            "stolen": sorted(str(u) for u in self.stolen),
            "complete": self.complete,
        }
        if self.pool_size is not None:
            out["poolSize"] = self.pool_size
        return out


class PoolExhausted(RuntimeError):
    pass


class BipartiteMakerStrategy(Strategy):
    """Maker claiming `p` edges per phase around fresh Right centres."""

    def __init__(self, p: int = 8) -> None:
        if p < 1:
            raise ValueError(f"phase length must be positive, got {p}")
        self.p = p
        self.phases: list[PhaseRecord] = []
        self._stolen: set[Ordinal] = set()
        self._seen = 0
        self._saturated = False
        self._pool_misses = 0
        self._fallbacks = 0
        self.spec = f"bipartite(p={p})"

    def _setup(self, state: GameState, role: str) -> None:
        if role != MAKER:
            raise ValueError("bipartite strategy plays Maker only")
        if not state.board.bipartite:
            raise ValueError("bipartite strategy needs a two-sided board")

    def _ingest(self, state: GameState) -> None:
        for move in state.history[self._seen :]:
            if move.player == BREAKER:
                for v in move.edge:
                    if v.side == "L":
                        self._stolen.add(v.label)
        self._seen = len(state.history)

    def _left_size(self, state: GameState) -> int | None:
        board = state.board
        if isinstance(board, BipartiteBoard):
            return board.m
        assert isinstance(board, LazyBipartiteBoard)
        return board.left_horizon.as_int() if board.left_horizon.is_finite else None

    def _start_phase(self, state: GameState) -> PhaseRecord | None:
        center = state.smallest_fresh("R")
        if center is None:
            return None
        size = self._left_size(state)
        record = PhaseRecord(
            index=len(self.phases),
            center=center,
            stolen=frozenset(self._stolen),
            pool_size=None if size is None else size - len(self._stolen),
        )
        self.phases.append(record)
        return record

    def _claim_into(self, state: GameState, phase: PhaseRecord) -> Edge:
        """Smallest pool label whose edge to the centre is still open."""
        size = self._left_size(state)
        # Every blocked label is either stolen or sits on a claimed edge
        # at this centre, so on an unbounded side the scan must succeed
        # within this many labels.
        limit = 2 * len(state.breaker_edges) + len(phase.claimed) + 2 if size is None else size
        for label in range(limit):
            u = left(label)
            if phase.in_pool(u.label):
                e = make_edge(u, phase.center)
                if e not in state.claimed:
                    phase.claimed.append(u.label)
                    if len(phase.claimed) >= self.p:
                        phase.complete = True
                    return e
        raise PoolExhausted(f"no open pool label at centre {phase.center}")

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if not self.phases and self._seen == 0:
            self._setup(state, role)
        self._ingest(state)

        if self._saturated:
            self._fallbacks += 1
            return fallback_move(state)

        phase = self.phases[-1] if self.phases and not self.phases[-1].complete else None
        if phase is None:
            phase = self._start_phase(state)
            if phase is None:
                self._saturated = True
                self._fallbacks += 1
                return fallback_move(state)

        try:
            return self._claim_into(state, phase)
        except PoolExhausted:
            # Pool spent for this centre; close the phase short and try
            # one fresh centre before giving up for good.
            self._pool_misses += 1
            phase.complete = True
        fresh = self._start_phase(state)
        if fresh is not None:
            try:
                return self._claim_into(state, fresh)
            except PoolExhausted:
                self._pool_misses += 1
                fresh.complete = True
        self._saturated = True
        self._fallbacks += 1
        return fallback_move(state)

    def diagnostics(self) -> dict:
        return {
            "phases": sum(1 for ph in self.phases if ph.complete),
            "phaseLength": self.p,
            "poolExhaustions": self._pool_misses,
            "fallbackMoves": self._fallbacks,
            "saturated": self._saturated,
        }

    def transcript_extras(self) -> dict:
        if not self.phases:
            return {}
        return {"phases": [ph.to_json() for ph in self.phases]}


def extract_biclique(
    phases: Sequence[PhaseRecord], a: int, b: int
) -> Witness | None:
    """A Left a-set lying in the claimed endpoints of b distinct phases.

    Phase bookkeeping guarantees every returned pair L x centres is
    fully Maker-claimed, because membership in `claimed` certifies the
    edge.  The search is exact while the subset space fits the node
    budget, then falls back to a frequency-guided heuristic; either way
    the result is re-verified structurally before it is returned.
    """
    if a < 1 or b < 1:
        raise ValueError("witness dimensions must be positive")
    pool = [ph for ph in phases if len(ph.claimed) >= a]
    if len(pool) < b:
        return None
    sets = [frozenset(ph.claimed) for ph in pool]

    found = _exact_subsets(sets, a, b)
    if found is None:
        found = _frequency_heuristic(sets, a, b)
    if found is None:
        return None
    labels, idxs = found
    if not _verify(sets, labels, idxs):
        return None
    lefts = [left(lab) for lab in sorted(labels)]
    rights = [pool[i].center for i in idxs]
    return (lefts, rights)


def _exact_subsets(sets, a, b):
    """First b-subset (index order) whose intersection has >= a labels."""
    n = len(sets)
    budget = [EXACT_SEARCH_BOUND]

    def rec(start: int, chosen: list[int], inter: frozenset):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if len(chosen) == b:
            return (set(sorted(inter)[:a]), list(chosen))
        for i in range(start, n - (b - len(chosen)) + 1):
            nxt = inter & sets[i] if chosen else sets[i]
            if len(nxt) < a:
                continue
            chosen.append(i)
            hit = rec(i + 1, chosen, nxt)
            if hit is not None or budget[0] <= 0:
                return hit
            chosen.pop()
        return None

    result = rec(0, [], frozenset())
    if result is None and budget[0] <= 0:
        return None  # ran out of budget; caller tries the heuristic
    return result


def _frequency_heuristic(sets, a, b):
    from itertools import combinations

    freq: dict = {}
    for s in sets:
        for lab in s:
            freq[lab] = freq.get(lab, 0) + 1
    ranked = sorted(freq, key=lambda lab: (-freq[lab], lab))[:HEURISTIC_POOL]
    for combo in combinations(ranked, min(a, len(ranked))):
        if len(combo) < a:
            return None
        hosts = [i for i, s in enumerate(sets) if all(lab in s for lab in combo)]
        if len(hosts) >= b:
            return (set(combo), hosts[:b])
    return None


def _verify(sets, labels, idxs) -> bool:
    return len(labels) > 0 and all(labels <= sets[i] for i in idxs)
