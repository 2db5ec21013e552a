"""Breaker play indexed by a catalogue of small vertex sets, plus the
matching edge-colouring construction.

The catalogue lists candidate left classes A_0 .. A_{c-1}.  Each vertex
answers its incoming Maker edges slot by slot: Maker's (g+1)-st
downward edge at vertex a consumes slot g, which the modular rule maps
to one catalogued set; Breaker then occupies the smallest free edge
from that set to a.  Over a full game every catalogued set gets blocked
at every sufficiently busy vertex, which is what stops Maker from
finishing a complete bipartite subgraph with a catalogued left class.

The same catalogue drives a two-colouring of a bipartite grid in which
every catalogued set shows both colours toward every right vertex from
its index onward, so no such biclique is monochromatic.
"""

from __future__ import annotations

import csv
import json
from collections import deque
from itertools import combinations
from typing import Any, Iterable, Sequence

from .boards import Edge, make_edge, plain
from .game import BREAKER, GameState, MAKER
from .strategies.base import Strategy, fallback_move

RED = "red"
BLUE = "blue"


class CatalogueError(ValueError):
    pass


class Infeasible(CatalogueError):
    """The colouring constraints cannot all be met."""


class Catalogue:
    """An indexed family of equal-size vertex sets with a slot rule.

    The slot rule must reach every set A_b with b <= min(a, c-1) from
    some slot at vertex a; the modular rule used here does so whenever
    the slot count is at least c, which the constructor enforces.
    """

    def __init__(self, sets: Sequence[Iterable[int]], slot_count: int | None = None):
        family = [frozenset(s) for s in sets]
        if not family:
            raise CatalogueError("catalogue needs at least one set")
        k = len(family[0])
        if k < 1:
            raise CatalogueError("catalogued sets must be nonempty")
        for s in family:
            if len(s) != k:
                raise CatalogueError("catalogued sets must share one size")
            for x in s:
                if not isinstance(x, int) or x < 0:
                    raise CatalogueError(f"set elements are vertex labels, got {x!r}")
        self.sets: list[frozenset[int]] = family
        self.k = k
        self.slot_count = len(family) if slot_count is None else slot_count
        if self.slot_count < len(family):
            raise CatalogueError(
                f"slot count {self.slot_count} cannot reach all {len(family)} sets"
            )

    def __len__(self) -> int:
        return len(self.sets)

    def slot(self, vertex: int, gamma: int) -> int:
        """Index of the set answering slot `gamma` at `vertex`."""
        reach = min(vertex, len(self.sets) - 1) + 1
        return gamma % reach

    @classmethod
    def all_k_subsets(cls, k: int, m: int) -> "Catalogue":
        if k < 1 or m < k:
            raise CatalogueError(f"cannot form {k}-subsets of {m} vertices")
        return cls([frozenset(c) for c in combinations(range(m), k)])

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "slotCount": self.slot_count,
            "sets": [sorted(s) for s in self.sets],
        }

    @classmethod
    def from_json(cls, data: Any) -> "Catalogue":
        if not isinstance(data, dict) or "sets" not in data:
            raise CatalogueError("catalogue JSON needs a 'sets' field")
        return cls(data["sets"], slot_count=data.get("slotCount"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


class CatalogueBreakerStrategy(Strategy):
    """Breaker answering Maker's downward edges from the catalogue."""

    def __init__(self, catalogue: Catalogue) -> None:
        self.catalogue = catalogue
        self._down: dict[int, int] = {}
        self._pending: deque[tuple[int, int]] = deque()
        self.firings: list[dict[str, Any]] = []
        self._seen = 0
        self._fallbacks = 0
        self.spec = f"catalogue(k={catalogue.k},c={len(catalogue)})"

    def _setup(self, state: GameState, role: str) -> None:
        if role != BREAKER:
            raise ValueError("catalogue strategy plays Breaker only")
        if state.board.bipartite:
            raise ValueError("catalogue strategy needs a complete board")

    def _ingest(self, state: GameState) -> None:
        for move in state.history[self._seen :]:
            if move.player == MAKER:
                lo, hi = sorted((move.edge.a.label, move.edge.b.label))
                alpha = hi.as_int() if hi.is_finite else None
                if alpha is None:
                    continue  # transfinite labels never fire the rule here
                gamma = self._down.get(alpha, 0)
                self._down[alpha] = gamma + 1
                if gamma < self.catalogue.slot_count:
                    self._pending.append((alpha, gamma))
        self._seen = len(state.history)

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if self._seen == 0:
            self._setup(state, role)
        self._ingest(state)

        while self._pending:
            alpha, gamma = self._pending.popleft()
            idx = self.catalogue.slot(alpha, gamma)
            target = self.catalogue.sets[idx]
            played = None
            for delta in sorted(target):
                if delta == alpha:
                    continue
                e = make_edge(plain(delta), plain(alpha))
                if e not in state.claimed:
                    played = e
                    break
            self.firings.append(
                {
                    "alpha": alpha,
                    "gamma": gamma,
                    "setIndex": idx,
                    "edge": None if played is None else [str(played.a), str(played.b)],
                }
            )
            if played is not None:
                # Soundness: the reply must stay inside target x {alpha}.
                labs = {v.label.as_int() for v in played}
                assert alpha in labs and labs & target
                return played
            # No free edge into the designated set: this response is
            # spent, the move degrades to a fallback.
            break
        self._fallbacks += 1
        return fallback_move(state)

    def diagnostics(self) -> dict:
        hits = sum(1 for f in self.firings if f["edge"] is not None)
        return {
            "firings": len(self.firings),
            "blockedReplies": hits,
            "exhaustedReplies": len(self.firings) - hits,
            "fallbackMoves": self._fallbacks,
        }

    def transcript_extras(self) -> dict:
        if not self.firings:
            return {}
        return {"catalogue": self.catalogue.to_json(), "firings": self.firings}


# ---------------------------------------------------------------------------
# The colouring construction.
# ---------------------------------------------------------------------------


class Colouring:
    """Total red/blue colouring of a left x right grid."""

    def __init__(self, left_size: int, right_size: int):
        if left_size < 1 or right_size < 1:
            raise CatalogueError("grid sides must be positive")
        self.left_size = left_size
        self.right_size = right_size
        self._assigned: dict[tuple[int, int], str] = {}

    def colour(self, i: int, j: int) -> str:
        if not (0 <= i < self.left_size and 0 <= j < self.right_size):
            raise CatalogueError(f"edge ({i},{j}) outside the grid")
        return self._assigned.get((i, j), RED)

    def assign(self, i: int, j: int, colour: str) -> None:
        if colour not in (RED, BLUE):
            raise CatalogueError(f"unknown colour {colour!r}")
        self._assigned[(i, j)] = colour

    def assigned(self, i: int, j: int) -> str | None:
        return self._assigned.get((i, j))

    def constraint_violations(self, catalogue: Catalogue) -> list[tuple[int, int]]:
        """(alpha, beta) pairs where A_beta x {alpha} misses a colour."""
        out = []
        for alpha in range(self.right_size):
            for beta in range(min(alpha, len(catalogue) - 1) + 1):
                seen = {self.colour(x, alpha) for x in catalogue.sets[beta]}
                if len(seen) < 2:
                    out.append((alpha, beta))
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["u", "v", "colour"])
            for i in range(self.left_size):
                for j in range(self.right_size):
                    writer.writerow([i, j, self.colour(i, j)])

    @classmethod
    def from_csv(cls, path) -> "Colouring":
        rows: list[tuple[int, int, str]] = []
        with open(path, "r", newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["u", "v", "colour"]:
                raise CatalogueError(f"unexpected CSV header {header!r}")
            for row in reader:
                if len(row) != 3:
                    raise CatalogueError(f"bad CSV row {row!r}")
                rows.append((int(row[0]), int(row[1]), row[2]))
        if not rows:
            raise CatalogueError("empty colouring CSV")
        out = cls(max(r[0] for r in rows) + 1, max(r[1] for r in rows) + 1)
        for i, j, colour in rows:
            out.assign(i, j, colour)
        return out


# Past this left size the failing-greedy backstop would be too large to
# enumerate, so infeasibility reports are only exact below it.
EXACT_VERTEX_BOUND = 20


def build_avoiding_colouring(
    catalogue: Catalogue, left_size: int, right_size: int
) -> Colouring:
    """Colour the grid so every catalogued set shows both colours at
    every right vertex from the set's index onward.

    Constraints are processed per right vertex with set index
    ascending.  Each unsatisfied constraint first tries unassigned
    endpoints (smallest first); failing that it recolours an endpoint
    whose flip keeps all earlier constraints at this vertex satisfied.
    Single-flip repair is not complete, so when it fails the builder
    re-solves the whole vertex exhaustively (the constraints at one
    right vertex are independent of all others); Infeasible is then a
    proof, not a shrug, for left sizes within EXACT_VERTEX_BOUND.
    """
    for s in catalogue.sets:
        if any(x >= left_size for x in s):
            raise CatalogueError(
                f"catalogued set {sorted(s)} exceeds left size {left_size}"
            )
        if len(s) < 2:
            raise Infeasible(f"set {sorted(s)} cannot carry two colours")

    col = Colouring(left_size, right_size)
    for alpha in range(right_size):
        done: list[frozenset[int]] = []
        for beta in range(min(alpha, len(catalogue) - 1) + 1):
            target = catalogue.sets[beta]
            if not _satisfy(col, target, alpha, done):
                _exact_vertex(col, catalogue, alpha, left_size)
                break
            done.append(target)
    return col


def _satisfy(col: Colouring, target: frozenset[int], alpha: int, done) -> bool:
    members = sorted(target)
    present = {col.assigned(x, alpha) for x in members} - {None}
    free = [x for x in members if col.assigned(x, alpha) is None]
    if len(present) == 2:
        return True
    if not present:
        # Untouched set: two smallest endpoints take one colour each.
        col.assign(free[0], alpha, RED)
        col.assign(free[1], alpha, BLUE)
        return True
    missing = BLUE if RED in present else RED
    if free:
        col.assign(free[0], alpha, missing)
        return True
    # Everything assigned, one colour: flip the smallest endpoint whose
    # earlier constraints at this vertex survive the flip.
    for x in members:
        if _flip_safe(col, x, alpha, missing, done):
            col.assign(x, alpha, missing)
            return True
    return False


def _flip_safe(col: Colouring, x: int, alpha: int, new_colour: str, done) -> bool:
    for earlier in done:
        if x not in earlier:
            continue
        colours = {
            new_colour if y == x else col.colour(y, alpha) for y in earlier
        }
        if len(colours) < 2:
            return False
    return True


def _exact_vertex(col: Colouring, catalogue: Catalogue, alpha: int, left_size: int) -> None:
    """Lexicographically smallest assignment satisfying every constraint
    at this right vertex, or a genuine Infeasible."""
    from itertools import product

    targets = [
        catalogue.sets[beta]
        for beta in range(min(alpha, len(catalogue) - 1) + 1)
    ]
    involved = sorted(set().union(*targets))
    if len(involved) > EXACT_VERTEX_BOUND:
        raise Infeasible(
            f"greedy failed at right vertex {alpha} and the exact completion "
            f"is out of range for {len(involved)} endpoints"
        )
    for combo in product((RED, BLUE), repeat=len(involved)):
        chosen = dict(zip(involved, combo))
        if all(len({chosen[x] for x in t}) == 2 for t in targets):
            for x, colour in chosen.items():
                col.assign(x, alpha, colour)
            return
    raise Infeasible(
        f"no assignment shows both colours on every catalogued set at "
        f"right vertex {alpha}"
    )
