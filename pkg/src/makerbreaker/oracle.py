"""Exhaustive ground-truth searches for tiny instances.

Everything here trades speed for certainty: these routines are the reference
the engine and the test suite are checked against.

* find_clique / find_biclique: complete searches over a claim set, returning
  the lexicographically least witness.  They refuse supports larger than
  EXHAUSTIVE_VERTEX_BOUND vertices (TooLarge) instead of degrading silently.
* solve_minimax: perfect play for boards of at most MINIMAX_EDGE_BOUND
  edges (Maker first, bias 1), memoised on the claim position only, with a
  canonical tie-break so the exposed policy is deterministic.
* filter_intersect_finder: the majority-colour greedy witness finder for
  two-coloured bipartite grids; sound but not complete, so callers compare
  it against mono_biclique_scan, the brute-force route.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Protocol

from .boards import Board, Edge, Vertex, edge_key, make_edge
from .game import BicliqueGoal, CliqueGoal, Goal

EXHAUSTIVE_VERTEX_BOUND = 24
MINIMAX_EDGE_BOUND = 10

RED = "red"
BLUE = "blue"


class TooLarge(ValueError):
    """The instance exceeds the exhaustive-search bounds."""


def _adjacency(edges: Iterable[Edge]) -> dict[Vertex, set[Vertex]]:
    adj: dict[Vertex, set[Vertex]] = {}
    for e in edges:
        adj.setdefault(e.a, set()).add(e.b)
        adj.setdefault(e.b, set()).add(e.a)
    return adj


def _support(edges: Iterable[Edge], bound: int | None) -> list[Vertex]:
    support = sorted({v for e in edges for v in e})
    if bound is not None and len(support) > bound:
        raise TooLarge(f"support of {len(support)} vertices exceeds bound {bound}")
    return support


def find_clique(edges: Iterable[Edge], size: int) -> list[Vertex] | None:
    """Lexicographically least `size`-clique in the claim set, or None."""
    edges = set(edges)
    support = _support(edges, EXHAUSTIVE_VERTEX_BOUND)
    if size < 1:
        raise ValueError("clique size must be positive")
    if size == 1:
        return [support[0]] if support else None
    adj = _adjacency(edges)

    def grow(cands: list[Vertex], need: int) -> list[Vertex] | None:
        if need == 0:
            return []
        for i, v in enumerate(cands):
            if len(cands) - i < need:
                return None
            rest = grow([w for w in cands[i + 1 :] if w in adj[v]], need - 1)
            if rest is not None:
                return [v] + rest
        return None

    return grow(support, size)


def find_biclique(
    edges: Iterable[Edge], a: int, b: int
) -> tuple[list[Vertex], list[Vertex]] | None:
    """Lexicographically least fully joined (a, b) pair of vertex classes.

    On sided claims the a-class ranges over Left vertices and the b-class
    over Right; on plain claims any two disjoint vertex sets qualify.
    """
    edges = set(edges)
    support = _support(edges, EXHAUSTIVE_VERTEX_BOUND)
    if a < 1 or b < 1:
        raise ValueError("class sizes must be positive")
    adj = _adjacency(edges)
    sided = any(v.side is not None for v in support)
    pool = [v for v in support if v.side == "L"] if sided else support

    def grow(cands: list[Vertex], need: int, chosen: list[Vertex], common: set[Vertex] | None):
        if need == 0:
            others = common if common is not None else set()
            if not sided:
                others = others - set(chosen)
            if len(others) >= b:
                return chosen, sorted(others)[:b]
            return None
        for i, v in enumerate(cands):
            if len(cands) - i < need:
                return None
            nxt = adj[v] if common is None else common & adj[v]
            if len(nxt) < b:
                continue
            out = grow(cands[i + 1 :], need - 1, chosen + [v], nxt)
            if out is not None:
                return out
        return None

    return grow(pool, a, [], None)


def iter_cliques(edges: Iterable[Edge]) -> Iterator[list[Vertex]]:
    """Every nonempty clique of the claim graph, in lexicographic order."""
    edges = set(edges)
    support = _support(edges, None)
    adj = _adjacency(edges)

    def walk(prefix: list[Vertex], cands: list[Vertex]) -> Iterator[list[Vertex]]:
        for i, v in enumerate(cands):
            cur = prefix + [v]
            yield cur
            yield from walk(cur, [w for w in cands[i + 1 :] if w in adj[v]])

    yield from walk([], support)


def iter_maximal_cliques(edges: Iterable[Edge]) -> Iterator[list[Vertex]]:
    """Maximal cliques of the claim graph (Bron-Kerbosch, deterministic)."""
    edges = set(edges)
    adj = _adjacency(edges)
    vertices = sorted(adj)

    def expand(grown: set[Vertex], cands: set[Vertex], done: set[Vertex]):
        if not cands and not done:
            yield sorted(grown)
            return
        pivot = None
        best = -1
        for v in sorted(cands | done):
            score = len(adj[v] & cands)
            if score > best:
                best, pivot = score, v
        for v in sorted(cands - adj[pivot]):
            yield from expand(grown | {v}, cands & adj[v], done & adj[v])
            cands = cands - {v}
            done = done | {v}

    if vertices:
        yield from expand(set(), set(vertices), set())


# ---------------------------------------------------------------------------
# Perfect play on tiny boards.
# ---------------------------------------------------------------------------


class MinimaxResult:
    """Solved game: overall winner plus the optimal-move policy."""

    def __init__(self, board: Board, goal: Goal, edges: list[Edge], table: dict):
        self.board = board
        self.goal = goal
        self.edges = edges
        self._index = {e: i for i, e in enumerate(edges)}
        self._table = table

    @property
    def winner(self) -> str:
        return self._table[(0, 0)][0]

    def _masks(self, maker: Iterable[Edge], breaker: Iterable[Edge]) -> tuple[int, int]:
        mm = bm = 0
        for e in maker:
            mm |= 1 << self._index[e]
        for e in breaker:
            bm |= 1 << self._index[e]
        return mm, bm

    def value(self, maker: Iterable[Edge], breaker: Iterable[Edge]) -> str:
        return self._table[self._masks(maker, breaker)][0]

    def best_move(self, maker: Iterable[Edge], breaker: Iterable[Edge]) -> Edge | None:
        _, idx = self._table[self._masks(maker, breaker)]
        return None if idx is None else self.edges[idx]


def _witness_masks(board: Board, goal: Goal, edges: list[Edge]) -> list[int]:
    index = {e: i for i, e in enumerate(edges)}
    vertices = sorted({v for e in edges for v in e})
    masks: list[int] = []

    def mask_of(pairs: Iterable[tuple[Vertex, Vertex]]) -> int | None:
        m = 0
        for u, v in pairs:
            e = make_edge(u, v)
            if e not in index:
                return None
            m |= 1 << index[e]
        return m

    if isinstance(goal, CliqueGoal):
        if goal.size == 1:
            return [0] if vertices else []
        for combo in itertools.combinations(vertices, goal.size):
            m = mask_of(itertools.combinations(combo, 2))
            if m is not None:
                masks.append(m)
        return masks
    if isinstance(goal, BicliqueGoal):
        if board.bipartite:
            lefts = [v for v in vertices if v.side == "L"]
            rights = [v for v in vertices if v.side == "R"]
            for la in itertools.combinations(lefts, goal.left):
                for rb in itertools.combinations(rights, goal.right):
                    m = mask_of(itertools.product(la, rb))
                    if m is not None:
                        masks.append(m)
            return masks
        for la in itertools.combinations(vertices, goal.left):
            remaining = [v for v in vertices if v not in la]
            for rb in itertools.combinations(remaining, goal.right):
                m = mask_of(itertools.product(la, rb))
                if m is not None:
                    masks.append(m)
        return masks
    raise TooLarge("club goals are not solvable by the minimax oracle")


def solve_minimax(board: Board, goal: Goal) -> MinimaxResult:
    """Solve the unbiased Maker-first game on a board of <= 10 edges."""
    total = board.edge_count()
    if total is None or total > MINIMAX_EDGE_BOUND:
        raise TooLarge(
            f"minimax handles at most {MINIMAX_EDGE_BOUND} edges, board has {total}"
        )
    edges = sorted(board.edges(), key=edge_key)
    witnesses = _witness_masks(board, goal, edges)
    full = (1 << len(edges)) - 1
    table: dict[tuple[int, int], tuple[str, int | None]] = {}

    def solve(mm: int, bm: int) -> str:
        key = (mm, bm)
        hit = table.get(key)
        if hit is not None:
            return hit[0]
        if any(w & mm == w for w in witnesses):
            table[key] = ("maker", None)
            return "maker"
        taken = mm | bm
        if taken == full:
            table[key] = ("breaker", None)
            return "breaker"
        mover = "maker" if bin(mm).count("1") == bin(bm).count("1") else "breaker"
        best_idx: int | None = None
        fallback_idx: int | None = None
        outcome = "breaker" if mover == "maker" else "maker"
        # No pruning: every reachable position lands in the table, so the
        # policy stays total even when the opponent wanders off the line.
        for i in range(len(edges)):
            bit = 1 << i
            if taken & bit:
                continue
            if fallback_idx is None:
                fallback_idx = i
            child = solve(mm | bit, bm) if mover == "maker" else solve(mm, bm | bit)
            if child == mover and best_idx is None:
                outcome = mover
                best_idx = i
        table[key] = (outcome, best_idx if best_idx is not None else fallback_idx)
        return outcome

    solve(0, 0)
    return MinimaxResult(board, goal, edges, table)


# ---------------------------------------------------------------------------
# Two-coloured bipartite grids.
# ---------------------------------------------------------------------------


class GridColouring(Protocol):
    left_size: int
    right_size: int

    def colour(self, i: int, j: int) -> str: ...


def filter_intersect_finder(
    grid: GridColouring, a: int, b: int
) -> tuple[str, list[int], list[int]] | None:
    """Greedy monochromatic K_{a,b} search via majority neighbourhoods.

    Sound (any witness is re-verified edge by edge before being returned)
    but not complete.  Ties in the per-vertex majority go to red, and the
    majority threshold is exactly ceil(u/2).
    """
    u, n = grid.left_size, grid.right_size
    threshold = -(-u // 2)
    majority: dict[int, str] = {}
    neighbourhood: dict[int, set[int]] = {}
    for j in range(n):
        reds = {i for i in range(u) if grid.colour(i, j) == RED}
        if len(reds) >= threshold:
            majority[j] = RED
            neighbourhood[j] = reds
        else:
            majority[j] = BLUE
            neighbourhood[j] = set(range(u)) - reds

    for colour in (RED, BLUE):
        hosts = [j for j in range(n) if majority[j] == colour]
        if 2 * len(hosts) < n or len(hosts) < b:
            continue
        chosen: list[int] = []
        running: set[int] = set(range(u))
        avail = list(hosts)
        for _ in range(b):
            best_j = None
            best_size = -1
            for j in avail:
                size = len(running & neighbourhood[j])
                if size > best_size:
                    best_size, best_j = size, j
            chosen.append(best_j)
            avail.remove(best_j)
            running = running & neighbourhood[best_j]
        if len(running) >= a:
            lefts = sorted(running)[:a]
            rights = sorted(chosen)
            if all(grid.colour(i, j) == colour for i in lefts for j in rights):
                return colour, lefts, rights
    return None


def mono_biclique_scan(
    grid: GridColouring, a: int, b: int
) -> tuple[str, list[int], list[int]] | None:
    """Brute-force monochromatic K_{a,b} search; the finder's referee."""
    u, n = grid.left_size, grid.right_size
    for colour in (RED, BLUE):
        for combo in itertools.combinations(range(u), a):
            rights = [
                j for j in range(n) if all(grid.colour(i, j) == colour for i in combo)
            ]
            if len(rights) >= b:
                return colour, list(combo), rights[:b]
    return None
