"""General-purpose strategies: fallbacks, random play, greedy heuristics.

None of these encode a winning argument.  They exist as adversaries and
baselines for the structured strategies, and as deterministic filler for
tests.  Everything here follows the base contract: no mutation of the
game state, determinism given (state, role, rng).
"""

from __future__ import annotations

import math
from typing import Sequence

from ..boards import (
    Board,
    BipartiteBoard,
    CompleteBoard,
    Edge,
    LazyBipartiteBoard,
    LazyCompleteBoard,
    Vertex,
    edge_key,
    left,
    make_edge,
    plain,
    right,
)
from ..game import (
    BREAKER,
    MAKER,
    CliqueGoal,
    ClubGoal,
    GameState,
    Goal,
    would_complete,
)
from ..oracle import MinimaxResult, solve_minimax
from .base import Exhausted, Strategy, fallback_move

# Sampling window for lazy boards: this much headroom past the largest
# label seen so far.  Any fixed positive constant preserves correctness;
# the value only shapes the distribution.
_WINDOW_PAD = 8

# Rejection attempts before falling back to enumeration.
_MAX_REJECTS = 64


class FallbackStrategy(Strategy):
    """Always claims the smallest unclaimed edge in canonical order."""

    spec = "fallback"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        return fallback_move(state)


class FarFallbackStrategy(Strategy):
    """Claims edges far from the low-label region.

    On lazy boards this touches fresh labels starting at 10**6, so small
    labels stay untouched; useful as a near-null adversary.  On finite
    boards it claims the largest unclaimed edge instead.
    """

    spec = "far-fallback"

    _BASE = 10**6

    def __init__(self) -> None:
        self._counter = 0

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        board = state.board
        if board.finite:
            last = None
            for e in board.edges():
                if e not in state.claimed:
                    last = e
            if last is None:
                raise Exhausted("board exhausted")
            return last
        t = self._counter
        self._counter += 1
        if isinstance(board, LazyCompleteBoard):
            return make_edge(plain(self._BASE + 2 * t), plain(self._BASE + 2 * t + 1))
        assert isinstance(board, LazyBipartiteBoard)
        lh, rh = board.left_horizon, board.right_horizon
        if lh.is_finite:
            # Left side is finite; only the right side has remote labels.
            u = left(lh.as_int() - 1)
            v = right(self._BASE + t)
        elif rh.is_finite:
            u = left(self._BASE + t)
            v = right(rh.as_int() - 1)
        else:
            u = left(self._BASE + t)
            v = right(self._BASE + t)
        return make_edge(u, v)


class RandomStrategy(Strategy):
    """Uniform random play.

    Finite boards: uniform over unclaimed edges.  Lazy boards: uniform
    over unclaimed edges whose labels fall inside a window that tracks
    the largest label in play plus fixed headroom, so the support grows
    with the game.  With no seed of its own it draws from the per-role
    stream the referee supplies.
    """

    def __init__(self, seed: int | None = None) -> None:
        self._seed = seed
        self._rng = None
        self.spec = "random" if seed is None else f"random({seed})"

    def _source(self, rng):
        if self._seed is None:
            return rng
        if self._rng is None:
            import random

            self._rng = random.Random(f"{self._seed}/own")
        return self._rng

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        r = self._source(rng)
        board = state.board
        if isinstance(board, (CompleteBoard, LazyCompleteBoard)):
            edge = self._sample_complete(state, board, r)
        else:
            edge = self._sample_bipartite(state, board, r)
        if edge is not None:
            return edge
        # Dense endgame on a finite board: enumerate what is left.
        pool = list(state.board.unclaimed_edges(state.claimed))
        if not pool:
            raise Exhausted("board exhausted")
        return pool[r.randrange(len(pool))]

    def _sample_complete(self, state, board, r) -> Edge | None:
        top = state.frontier.get(None, -1)
        window = top + 1 + _WINDOW_PAD
        if isinstance(board, CompleteBoard):
            window = board.n
        if window < 2:
            window = 2
        total = window * (window - 1) // 2
        for _ in range(_MAX_REJECTS):
            idx = r.randrange(total)
            # Colex unrank: idx = b*(b-1)/2 + a with a < b.
            b = int((1 + math.isqrt(1 + 8 * idx)) // 2)
            while b * (b - 1) // 2 > idx:
                b -= 1
            while (b + 1) * b // 2 <= idx:
                b += 1
            a = idx - b * (b - 1) // 2
            e = make_edge(plain(a), plain(b))
            if e not in state.claimed:
                return e
        return None

    def _sample_bipartite(self, state, board, r) -> Edge | None:
        lt = state.frontier.get("L", -1)
        rt = state.frontier.get("R", -1)
        wl = lt + 1 + _WINDOW_PAD
        wr = rt + 1 + _WINDOW_PAD
        if isinstance(board, BipartiteBoard):
            wl, wr = board.m, board.n
        else:
            if board.left_horizon.is_finite:
                wl = min(wl, board.left_horizon.as_int())
            if board.right_horizon.is_finite:
                wr = min(wr, board.right_horizon.as_int())
        wl = max(wl, 1)
        wr = max(wr, 1)
        for _ in range(_MAX_REJECTS):
            i, j = divmod(r.randrange(wl * wr), wr)
            e = make_edge(left(i), right(j))
            if e not in state.claimed:
                return e
        return None


class ScriptedStrategy(Strategy):
    """Plays a fixed list of edges, then defers to a fallback.

    Scripted moves are played verbatim even when illegal, which lets
    tests provoke referee forfeits on purpose.
    """

    def __init__(self, moves: Sequence[Edge], then: str = "fallback") -> None:
        if then not in ("fallback", "raise"):
            raise ValueError(f"unknown continuation {then!r}")
        self._moves = list(moves)
        self._pos = 0
        self._then = then
        self.spec = "scripted"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if self._pos < len(self._moves):
            e = self._moves[self._pos]
            self._pos += 1
            return e
        if self._then == "raise":
            raise Exhausted("script exhausted")
        return fallback_move(state)


class GreedyBlockerStrategy(Strategy):
    """Blocks the opponent's goal, preferring outright completion blocks.

    Tier 1: if some unclaimed edge would complete the opponent's goal
    were they to claim it, claim the first such edge (canonical order)
    among candidates spanned by the opponent's busiest vertices.
    Tier 2: otherwise claim the unclaimed edge maximising the sum of
    opponent degrees at its endpoints.  Ties break by canonical edge
    order; with no candidates at all it claims the smallest unclaimed
    edge.
    """

    _CORE = 24

    def __init__(self, goal: Goal) -> None:
        self.goal = goal
        self.spec = f"greedy-blocker({goal.literal()})"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        opponent = MAKER if role == BREAKER else BREAKER
        adj = state.maker_adj if opponent == MAKER else state.breaker_adj
        core = sorted(adj, key=lambda v: (-len(adj[v]), v.label, v.side or ""))
        core = core[: self._CORE]
        candidates = self._core_edges(state, core)
        for e in candidates:
            if would_complete(state, opponent, e, self.goal):
                return e
        # Candidates come sorted canonically, so strict improvement keeps
        # the earliest edge on ties.
        best = None
        best_score = 0
        for e in candidates:
            score = len(adj.get(e.a, ())) + len(adj.get(e.b, ()))
            if score > best_score:
                best, best_score = e, score
        if best is not None:
            return best
        return fallback_move(state)

    def _core_edges(self, state: GameState, core: list[Vertex]) -> list[Edge]:
        out = []
        for i, u in enumerate(core):
            for v in core[i + 1 :]:
                if u.side == v.side and u.side is not None:
                    continue
                e = make_edge(u, v)
                if state.board.contains_edge(e) and e not in state.claimed:
                    out.append(e)
        out.sort(key=edge_key)
        return out


class GoalSeekerStrategy(Strategy):
    """Greedy goal chaser.

    Recomputes a best-effort partial witness from its own claims each
    move and claims the smallest edge extending it.  No memory, no
    lookahead; used as a baseline Maker and as a stimulus for Breaker
    strategies under test.
    """

    def __init__(self, goal: Goal) -> None:
        self.goal = goal
        self.spec = f"goal-seeker({goal.literal()})"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        own = state.maker_adj if role == MAKER else state.breaker_adj
        goal = self.goal
        if isinstance(goal, CliqueGoal):
            e = self._seek_clique(state, own, goal.size)
        elif isinstance(goal, ClubGoal):
            e = self._seek_clique(state, own, None)
        else:
            e = self._seek_biclique(state, own, goal.left, goal.right)
        return e if e is not None else fallback_move(state)

    # An edge is usable for the seeker if it is its own or unclaimed.
    def _usable(self, state, own, u, v) -> bool:
        if v in own.get(u, ()):
            return True
        e = make_edge(u, v)
        return state.board.contains_edge(e) and e not in state.claimed

    def _greedy_clique(self, own) -> list[Vertex]:
        clique: list[Vertex] = []
        for v in sorted(own, key=lambda x: (-len(own[x]), x.label)):
            if all(v in own[u] for u in clique):
                clique.append(v)
        return clique

    def _seek_clique(self, state, own, size: int | None) -> Edge | None:
        if isinstance(state.board, (BipartiteBoard, LazyBipartiteBoard)):
            return None  # triangles do not fit; let the fallback act
        base = self._greedy_clique(own)
        if size is not None:
            base = base[:size]
        if not base:
            return None  # no claims yet; the fallback opens legally
        top = state.frontier.get(None, -1)
        for lab in range(top + 2):
            w = plain(lab)
            if w in base:
                continue
            if not all(self._usable(state, own, w, u) for u in base):
                continue
            for u in sorted(base, key=lambda x: x.label):
                if w not in own.get(u, ()):
                    return make_edge(w, u)
        return None

    def _seek_biclique(self, state, own, a: int, b: int) -> Edge | None:
        board = state.board
        bip = isinstance(board, (BipartiteBoard, LazyBipartiteBoard))
        if bip:
            lefts = [v for v in own if v.side == "L"]
            lefts.sort(key=lambda v: (-len(own[v]), v.label))
            cls = lefts[:a]
            lab = 0
            while len(cls) < a:
                v = left(lab)
                if v not in cls and board.contains_vertex(v):
                    cls.append(v)
                lab += 1
                if lab > 10**7:
                    return None
            top = state.frontier.get("R", -1)
            mk = right
        else:
            verts = sorted(own, key=lambda v: (-len(own[v]), v.label))
            cls = verts[:a]
            lab = 0
            while len(cls) < a:
                v = plain(lab)
                if v not in cls:
                    cls.append(v)
                lab += 1
            top = state.frontier.get(None, -1)
            mk = plain
        # Targets ranked by how much of the class they already reach.
        scored = []
        for labj in range(top + 2):
            w = mk(labj)
            if w in cls or not board.contains_vertex(w):
                continue
            if not all(self._usable(state, own, u, w) for u in cls):
                continue
            have = sum(1 for u in cls if w in own.get(u, ()))
            if have < len(cls):
                scored.append((-have, labj, w))
        if not scored:
            return None
        scored.sort()
        w = scored[0][2]
        for u in sorted(cls, key=lambda v: v.label):
            if w not in own.get(u, ()):
                return make_edge(u, w)
        return None


class OraclePolicyStrategy(Strategy):
    """Plays perfectly from a solved minimax table.  Tiny boards only."""

    def __init__(self, board: Board, goal: Goal) -> None:
        self._solved: MinimaxResult = solve_minimax(board, goal)
        self.goal = goal
        self.spec = f"oracle({goal.literal()})"

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        move = self._solved.best_move(state.maker_edges, state.breaker_edges)
        if move is None:
            return fallback_move(state)
        return move
