"""Vertices, edges, and the four board kinds.

A vertex is either plain (complete boards) or carries a side (bipartite
boards); labels are ordinals.  Edges are unordered pairs stored in canonical
order: Left before Right, otherwise smaller label first.

Edges themselves are well-ordered so that "smallest unclaimed edge" is
meaningful on lazily generated boards.  Complete boards use colexicographic
order, key (larger label, smaller label); bipartite boards use the diagonal
order, key (max label, left label, right label).  Both orders enumerate an
infinite board in order type omega, so a finite claim set can never push the
smallest unclaimed edge out of reach.

Lazy boards never enumerate their vertex set; every query is local
(membership, smallest fresh label, edge iteration from the bottom).
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .ordinals import Ordinal, OrdinalLike, from_int, iter_naturals

LEFT = "L"
RIGHT = "R"


class BoardError(ValueError):
    """Raised for malformed vertices, edges, or board parameters."""


class Vertex(NamedTuple):
    side: str | None
    label: Ordinal

    def __str__(self) -> str:
        if self.side is None:
            return str(self.label)
        return f"{self.side}{self.label}"


def plain(label: OrdinalLike) -> Vertex:
    return Vertex(None, _as_ordinal(label))


def left(label: OrdinalLike) -> Vertex:
    return Vertex(LEFT, _as_ordinal(label))


def right(label: OrdinalLike) -> Vertex:
    return Vertex(RIGHT, _as_ordinal(label))


def _as_ordinal(label: OrdinalLike) -> Ordinal:
    if isinstance(label, Ordinal):
        return label
    return from_int(label)


class Edge(NamedTuple):
    a: Vertex
    b: Vertex

    def __str__(self) -> str:
        return f"{{{self.a},{self.b}}}"

    def other(self, v: Vertex) -> Vertex:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise BoardError(f"{v} is not an endpoint of {self}")


def make_edge(u: Vertex, v: Vertex) -> Edge:
    """Canonical edge: Left endpoint first, otherwise smaller label first."""
    if u == v:
        raise BoardError(f"loop at {u} is not an edge")
    if u.side != v.side:
        if u.side == LEFT and v.side == RIGHT:
            return Edge(u, v)
        if u.side == RIGHT and v.side == LEFT:
            return Edge(v, u)
        raise BoardError(f"cannot join {u} and {v}: mixed plain and sided vertices")
    if u.side is not None:
        raise BoardError(f"cannot join {u} and {v}: same side")
    return Edge(u, v) if u.label < v.label else Edge(v, u)


def edge_key(e: Edge) -> tuple:
    """Sort key realising the canonical well-order on edges."""
    if e.a.side is None:
        return (e.b.label, e.a.label)
    hi = e.b.label if e.a.label < e.b.label else e.a.label
    return (hi, e.a.label, e.b.label)


class Board:
    """Common board interface; concrete kinds fill in the geometry."""

    bipartite: bool
    finite: bool

    def contains_vertex(self, v: Vertex) -> bool:
        raise NotImplementedError

    def contains_edge(self, e: Edge) -> bool:
        raise NotImplementedError

    def edge_count(self) -> int | None:
        """Total number of edges, or None on an infinite board."""
        raise NotImplementedError

    def edges(self) -> Iterator[Edge]:
        """All edges in canonical order; infinite iterator on lazy boards."""
        raise NotImplementedError

    def unclaimed_edges(self, claimed: Iterable[Edge]) -> Iterator[Edge]:
        claimed = claimed if isinstance(claimed, (set, frozenset)) else set(claimed)
        return (e for e in self.edges() if e not in claimed)

    def labels(self, side: str | None) -> Iterator[Ordinal]:
        """Vertex labels for a side in increasing order, possibly unbounded."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


def _check_size(n: int, what: str) -> int:
    if not isinstance(n, int) or n < 1:
        raise BoardError(f"{what} must be a positive int, got {n!r}")
    return n


def _check_horizon(h: Ordinal, what: str) -> Ordinal:
    if not isinstance(h, Ordinal):
        raise BoardError(f"{what} must be an Ordinal, got {h!r}")
    if h.is_zero:
        raise BoardError(f"{what} must be positive")
    return h


class CompleteBoard(Board):
    """Complete graph on plain vertices 0 .. n-1."""

    bipartite = False
    finite = True

    def __init__(self, n: int):
        self.n = _check_size(n, "board size")

    def contains_vertex(self, v: Vertex) -> bool:
        return v.side is None and v.label.is_finite and v.label.as_int() < self.n

    def contains_edge(self, e: Edge) -> bool:
        return e.a != e.b and self.contains_vertex(e.a) and self.contains_vertex(e.b)

    def edge_count(self) -> int:
        return self.n * (self.n - 1) // 2

    def edges(self) -> Iterator[Edge]:
        for b in range(1, self.n):
            vb = plain(b)
            for a in range(b):
                yield Edge(plain(a), vb)

    def labels(self, side: str | None) -> Iterator[Ordinal]:
        if side is not None:
            raise BoardError("complete boards have no sides")
        return iter_naturals(from_int(self.n))

    def describe(self) -> str:
        return f"K{self.n}"


class LazyCompleteBoard(Board):
    """Complete graph on plain vertices with labels below an ordinal horizon."""

    bipartite = False
    finite = False

    def __init__(self, horizon: Ordinal):
        self.horizon = _check_horizon(horizon, "horizon")
        if self.horizon.is_finite:
            raise BoardError("finite horizon: use CompleteBoard instead")

    def contains_vertex(self, v: Vertex) -> bool:
        return v.side is None and v.label < self.horizon

    def contains_edge(self, e: Edge) -> bool:
        return e.a != e.b and self.contains_vertex(e.a) and self.contains_vertex(e.b)

    def edge_count(self) -> None:
        return None

    def edges(self) -> Iterator[Edge]:
        # Colex order visits only finite labels, which is fine: below any
        # infinite horizon the naturals are never exhausted.
        b = 1
        while True:
            vb = plain(b)
            for a in range(b):
                yield Edge(plain(a), vb)
            b += 1

    def labels(self, side: str | None) -> Iterator[Ordinal]:
        if side is not None:
            raise BoardError("complete boards have no sides")
        return iter_naturals(self.horizon)

    def describe(self) -> str:
        return f"K{self.horizon}"


class BipartiteBoard(Board):
    """Complete bipartite graph on Left 0..m-1 and Right 0..n-1."""

    bipartite = True
    finite = True

    def __init__(self, m: int, n: int):
        self.m = _check_size(m, "left size")
        self.n = _check_size(n, "right size")

    def contains_vertex(self, v: Vertex) -> bool:
        if not v.label.is_finite:
            return False
        if v.side == LEFT:
            return v.label.as_int() < self.m
        if v.side == RIGHT:
            return v.label.as_int() < self.n
        return False

    def contains_edge(self, e: Edge) -> bool:
        return (
            e.a.side == LEFT
            and e.b.side == RIGHT
            and self.contains_vertex(e.a)
            and self.contains_vertex(e.b)
        )

    def edge_count(self) -> int:
        return self.m * self.n

    def edges(self) -> Iterator[Edge]:
        for d in range(max(self.m, self.n)):
            if d < self.n:
                vr = right(d)
                for i in range(min(d, self.m)):
                    yield Edge(left(i), vr)
            if d < self.m:
                vl = left(d)
                for j in range(min(d + 1, self.n)):
                    yield Edge(vl, right(j))

    def labels(self, side: str | None) -> Iterator[Ordinal]:
        if side == LEFT:
            return iter_naturals(from_int(self.m))
        if side == RIGHT:
            return iter_naturals(from_int(self.n))
        raise BoardError("bipartite boards need a side")

    def describe(self) -> str:
        return f"K{self.m},{self.n}"


class LazyBipartiteBoard(Board):
    """Complete bipartite graph with an ordinal horizon per side.

    One horizon may be finite, which makes that side a fixed finite set; at
    least one side must be infinite (otherwise use BipartiteBoard).
    """

    bipartite = True
    finite = False

    def __init__(self, left_horizon: Ordinal, right_horizon: Ordinal):
        self.left_horizon = _check_horizon(left_horizon, "left horizon")
        self.right_horizon = _check_horizon(right_horizon, "right horizon")
        if self.left_horizon.is_finite and self.right_horizon.is_finite:
            raise BoardError("both horizons finite: use BipartiteBoard instead")

    def contains_vertex(self, v: Vertex) -> bool:
        if v.side == LEFT:
            return v.label < self.left_horizon
        if v.side == RIGHT:
            return v.label < self.right_horizon
        return False

    def contains_edge(self, e: Edge) -> bool:
        return (
            e.a.side == LEFT
            and e.b.side == RIGHT
            and self.contains_vertex(e.a)
            and self.contains_vertex(e.b)
        )

    def edge_count(self) -> None:
        return None

    def edges(self) -> Iterator[Edge]:
        lh = self.left_horizon.as_int() if self.left_horizon.is_finite else None
        rh = self.right_horizon.as_int() if self.right_horizon.is_finite else None
        for e in _diagonal_edges():
            i, j = e.a.label.as_int(), e.b.label.as_int()
            if (lh is None or i < lh) and (rh is None or j < rh):
                yield e

    def labels(self, side: str | None) -> Iterator[Ordinal]:
        if side == LEFT:
            return iter_naturals(self.left_horizon)
        if side == RIGHT:
            return iter_naturals(self.right_horizon)
        raise BoardError("bipartite boards need a side")

    def describe(self) -> str:
        return f"K{self.left_horizon},{self.right_horizon}"


def _diagonal_edges() -> Iterator[Edge]:
    """All Left x Right pairs of naturals in diagonal (max, left, right) order."""
    d = 0
    while True:
        vr = right(d)
        for i in range(d):
            yield Edge(left(i), vr)
        vl = left(d)
        for j in range(d + 1):
            yield Edge(vl, right(j))
        d += 1
