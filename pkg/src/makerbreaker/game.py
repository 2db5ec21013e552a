"""Game state, goals, and the claim discipline.

A game is played by Maker ("M") and Breaker ("B") who alternately claim
unclaimed edges of a board; with bias k Breaker claims k edges per Maker
edge, and breaker_first swaps who opens each turn.  Maker wins the moment
her claimed subgraph satisfies the goal; Breaker "wins so far" whenever the
board or the Maker-move budget runs out first.

GameState is the single source of truth for one game: claim sets, per-player
adjacency, touched vertices, full move history with ordinal turn indices,
and the explored-label set that the club goal reads.  claim() enforces board
membership, disjointness, and (unless the state was built with
enforce_turns=False, which role-swapping combinators need) the turn
discipline derived from the move counters.

Goals:

* CliqueGoal(size): some `size` vertices pairwise Maker-joined.  On a
  bipartite board this is satisfiable only for size <= 2.
* BicliqueGoal(left, right): on bipartite boards a left-set and right-set of
  the stated sizes completely Maker-joined; on complete boards two disjoint
  plain vertex sets playing those roles.
* ClubGoal(horizon): complete boards only.  Satisfied by a Maker-clique S
  (vertices touched by Maker, pairs Maker-claimed; a single vertex counts)
  whose maximum reaches the checkpoint, where the checkpoint is the largest
  limit ordinal <= horizon explored during the run (no explored limit means
  no checkpoint and the goal is unsatisfied), and which is closed under
  realized sups: for every limit lam <= max(S), if the largest member of S
  below lam equals the largest explored label below lam, then lam must be
  in S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .boards import (
    Board,
    BoardError,
    Edge,
    LEFT,
    RIGHT,
    Vertex,
    edge_key,
    make_edge,
    plain,
)
from .ordinals import Ordinal, from_int, least_limit_above, omega_block

MAKER = "M"
BREAKER = "B"


class IllegalMove(Exception):
    """A claim that violates the rules; carries enough context to report."""

    def __init__(self, player: str, edge: Edge | None, reason: str):
        super().__init__(f"illegal move by {player}: {reason}")
        self.player = player
        self.edge = edge
        self.reason = reason


class InvariantViolation(AssertionError):
    """A strategy or referee invariant failed; always a bug, never a loss."""


class Move(NamedTuple):
    turn: Ordinal
    step: int
    player: str
    edge: Edge


@dataclass(frozen=True)
class Schedule:
    """Maps Maker-turn numbers to ordinal turn indices.

    The default (block_len None) is the plain finite schedule turn(i) = i.
    With block_len L the run is cut into blocks of L turns and turn i maps
    to w*(i//L) + (i%L), so every block after the first opens at a limit.
    """

    block_len: int | None = None

    def __post_init__(self):
        if self.block_len is not None and self.block_len < 1:
            raise ValueError("block length must be positive")

    def turn_of(self, turn_number: int) -> Ordinal:
        if self.block_len is None:
            return from_int(turn_number)
        return omega_block(turn_number // self.block_len, turn_number % self.block_len)

    def literal(self) -> str | None:
        return None if self.block_len is None else f"blocks:{self.block_len}"


@dataclass(frozen=True)
class CliqueGoal:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("clique size must be positive")

    def literal(self) -> str:
        return f"clique:{self.size}"


@dataclass(frozen=True)
class BicliqueGoal:
    left: int
    right: int

    def __post_init__(self):
        if self.left < 1 or self.right < 1:
            raise ValueError("biclique class sizes must be positive")

    def literal(self) -> str:
        return f"biclique:{self.left},{self.right}"


@dataclass(frozen=True)
class ClubGoal:
    horizon: Ordinal

    def __post_init__(self):
        if self.horizon.is_zero:
            raise ValueError("club horizon must be positive")

    def literal(self) -> str:
        return f"club:{self.horizon}"


Goal = CliqueGoal | BicliqueGoal | ClubGoal

# A clique (or club) witness is a sorted vertex list; a biclique witness is
# the pair (left class, right class), each sorted.
Witness = list[Vertex] | tuple[list[Vertex], list[Vertex]]


def check_goal_fits_board(goal: Goal, board: Board) -> None:
    if isinstance(goal, ClubGoal) and board.bipartite:
        raise BoardError("club goals need a complete board")


class GameState:
    """All mutable state of one game session."""

    def __init__(
        self,
        board: Board,
        *,
        bias: int = 1,
        breaker_first: bool = False,
        schedule: Schedule | None = None,
        enforce_turns: bool = True,
    ):
        if bias < 1:
            raise ValueError("bias must be at least 1")
        self.board = board
        self.bias = bias
        self.breaker_first = breaker_first
        self.schedule = schedule or Schedule()
        self.enforce_turns = enforce_turns

        self.maker_edges: set[Edge] = set()
        self.breaker_edges: set[Edge] = set()
        self.claimed: set[Edge] = set()
        self.maker_adj: dict[Vertex, set[Vertex]] = {}
        self.breaker_adj: dict[Vertex, set[Vertex]] = {}
        self.touched: set[Vertex] = set()
        self.history: list[Move] = []
        self.maker_moves = 0
        self.breaker_moves = 0
        # Largest finite label claimed per side; drives sampling windows.
        self.frontier: dict[str | None, int] = {}
        # Plain labels seen in claims; the club goal's notion of "explored".
        self.explored: set[Ordinal] = set()

    # -- turn discipline ---------------------------------------------------

    def expected_player(self) -> str:
        if self.breaker_first:
            if self.breaker_moves < self.bias * (self.maker_moves + 1):
                return BREAKER
            return MAKER
        if self.breaker_moves < self.bias * self.maker_moves:
            return BREAKER
        return MAKER

    def turn_number(self, player: str) -> int:
        """The turn a move by `player` would belong to right now."""
        if player == MAKER:
            return self.maker_moves
        return self.breaker_moves // self.bias

    def next_turn_ordinal(self, player: str | None = None) -> Ordinal:
        who = player or self.expected_player()
        return self.schedule.turn_of(self.turn_number(who))

    def claim_balance(self) -> int:
        return self.breaker_moves - self.bias * self.maker_moves

    # -- claims ------------------------------------------------------------

    def claim(self, player: str, edge: Edge) -> Move:
        if player not in (MAKER, BREAKER):
            raise IllegalMove(player, edge, "unknown player")
        if self.enforce_turns and player != self.expected_player():
            raise IllegalMove(player, edge, "out of turn")
        if not self.board.contains_edge(edge):
            raise IllegalMove(player, edge, f"edge {edge} is not on the board")
        if edge in self.claimed:
            raise IllegalMove(player, edge, f"edge {edge} is already claimed")

        move = Move(
            self.schedule.turn_of(self.turn_number(player)),
            len(self.history),
            player,
            edge,
        )
        own, adj = (
            (self.maker_edges, self.maker_adj)
            if player == MAKER
            else (self.breaker_edges, self.breaker_adj)
        )
        own.add(edge)
        self.claimed.add(edge)
        adj.setdefault(edge.a, set()).add(edge.b)
        adj.setdefault(edge.b, set()).add(edge.a)
        for v in edge:
            self.touched.add(v)
            if v.label.is_finite:
                n = v.label.as_int()
                if n > self.frontier.get(v.side, -1):
                    self.frontier[v.side] = n
            if v.side is None:
                self.explored.add(v.label)
        self.history.append(move)
        if player == MAKER:
            self.maker_moves += 1
        else:
            self.breaker_moves += 1
        return move

    # -- queries -----------------------------------------------------------

    def is_fresh(self, v: Vertex) -> bool:
        """No claimed edge of either player touches v."""
        return v not in self.touched

    def smallest_fresh(
        self, side: str | None = None, exclude: Iterable[Vertex] = ()
    ) -> Vertex | None:
        skip = set(exclude)
        for label in self.board.labels(side):
            v = Vertex(side, label)
            if v not in self.touched and v not in skip:
                return v
        return None

    def smallest_unclaimed_edge(self) -> Edge | None:
        for e in self.board.edges():
            if e not in self.claimed:
                return e
        return None

    def exhausted(self) -> bool:
        total = self.board.edge_count()
        return total is not None and len(self.claimed) >= total

    def maker_degree(self, v: Vertex) -> int:
        return len(self.maker_adj.get(v, ()))


# ---------------------------------------------------------------------------
# Witness searches.
#
# The per-move checks are edge-local: if the goal first becomes satisfied by
# a Maker claim, some witness uses that claim, so searching only witnesses
# through the new edge is complete.  Club goals are re-checked from scratch
# after every claim because Breaker exploration can change the obligations.
# ---------------------------------------------------------------------------


def _lex_clique(cands: list[Vertex], adj: dict[Vertex, set[Vertex]], need: int) -> list[Vertex] | None:
    """Lexicographically least `need`-clique inside cands (sorted), or None."""
    if need == 0:
        return []
    for i, w in enumerate(cands):
        if len(cands) - i < need:
            return None
        sub = [x for x in cands[i + 1 :] if x in adj.get(w, ())]
        rest = _lex_clique(sub, adj, need - 1)
        if rest is not None:
            return [w] + rest
    return None


def clique_witness_through(
    state: GameState, edge: Edge, size: int
) -> list[Vertex] | None:
    if size == 1:
        return [min(edge)]
    adj = state.maker_adj
    u, v = edge
    common = sorted(adj.get(u, set()) & adj.get(v, set()))
    rest = _lex_clique(common, adj, size - 2)
    if rest is None:
        return None
    return sorted([u, v] + rest)


def _grow_left_class(
    pool: Sequence[Vertex],
    need: int,
    running: set[Vertex],
    adj: dict[Vertex, set[Vertex]],
    min_common: int,
) -> list[Vertex] | None:
    """Pick `need` vertices from pool keeping >= min_common common neighbours."""
    if need == 0:
        return []
    for i, u in enumerate(pool):
        if len(pool) - i < need:
            return None
        nr = running & adj.get(u, set())
        if len(nr) < min_common:
            continue
        rest = _grow_left_class(pool[i + 1 :], need - 1, nr, adj, min_common)
        if rest is not None:
            return [u] + rest
    return None


def _common_neighbours(vertices: Iterable[Vertex], adj: dict[Vertex, set[Vertex]]) -> set[Vertex]:
    out: set[Vertex] | None = None
    for v in vertices:
        nbrs = adj.get(v, set())
        out = set(nbrs) if out is None else out & nbrs
        if not out:
            return set()
    return out or set()


def biclique_witness_through(
    state: GameState, edge: Edge, a: int, b: int
) -> tuple[list[Vertex], list[Vertex]] | None:
    adj = state.maker_adj
    if state.board.bipartite:
        lx, ry = edge.a, edge.b
        pool = sorted(adj.get(ry, set()) - {lx})
        rest = _grow_left_class(pool, a - 1, set(adj.get(lx, set())), adj, b)
        if rest is None:
            return None
        left_class = sorted([lx] + rest)
        rights = _common_neighbours(left_class, adj)
        if len(rights) < b:
            return None
        return left_class, sorted(rights)[:b]

    for anchor, other in ((edge.a, edge.b), (edge.b, edge.a)):
        pool = sorted(adj.get(other, set()) - {anchor})
        rest = _grow_left_class(pool, a - 1, set(adj.get(anchor, set())), adj, b)
        if rest is None:
            continue
        left_class = sorted([anchor] + rest)
        rights = _common_neighbours(left_class, adj) - set(left_class)
        if len(rights) >= b:
            return left_class, sorted(rights)[:b]
    return None


# -- club goal ---------------------------------------------------------------


def club_checkpoint(explored: Iterable[Ordinal], horizon: Ordinal) -> Ordinal | None:
    best = None
    for lab in explored:
        if lab.is_limit and lab <= horizon and (best is None or best < lab):
            best = lab
    return best


def _closure_candidates(explored: set[Ordinal], top: Ordinal) -> list[Ordinal]:
    cands = set()
    for lab in explored:
        if lab.is_limit and lab <= top:
            cands.add(lab)
        above = least_limit_above(lab)
        if above <= top:
            cands.add(above)
    return sorted(cands)


def club_predicate(
    members: Sequence[Ordinal], explored: set[Ordinal], horizon: Ordinal
) -> bool:
    """The finitized closed-unbounded test for a candidate label set."""
    if not members:
        return False
    member_set = set(members)
    top = max(members)
    checkpoint = club_checkpoint(explored, horizon)
    if checkpoint is None or top < checkpoint:
        return False
    for lam in _closure_candidates(explored, top):
        if lam in member_set:
            continue
        below_s = [x for x in members if x < lam]
        if not below_s:
            continue
        below_e = max(x for x in explored if x < lam)
        if max(below_s) == below_e:
            return False
    return True


def club_witness(state: GameState, horizon: Ordinal) -> list[Vertex] | None:
    """Search Maker's subgraph for a clique satisfying the club predicate.

    Walks maximal cliques; for each candidate maximum element the forced
    removals below it are applied until the predicate stabilises, which is
    complete because an element whose presence forces an unclaimable limit
    lies outside every witness with that maximum.
    """
    from .oracle import iter_maximal_cliques

    checkpoint = club_checkpoint(state.explored, horizon)
    if checkpoint is None:
        return None
    explored = state.explored
    for clique in iter_maximal_cliques(state.maker_edges):
        labels = sorted(v.label for v in clique)
        for top in labels:
            if top < checkpoint:
                continue
            members = [x for x in labels if x <= top]
            while members:
                offender = _first_forced_removal(members, explored, top)
                if offender is None:
                    break
                members.remove(offender)
            if members and club_predicate(members, explored, horizon):
                return [plain(x) for x in members]
    return None


def _first_forced_removal(
    members: list[Ordinal], explored: set[Ordinal], top: Ordinal
) -> Ordinal | None:
    member_set = set(members)
    for lam in _closure_candidates(explored, top):
        if lam in member_set:
            continue
        below_s = [x for x in members if x < lam]
        if not below_s:
            continue
        worst = max(below_s)
        if worst == max(x for x in explored if x < lam):
            return worst
    return None


# -- dispatch ----------------------------------------------------------------


def witness_after_claim(
    state: GameState, goal: Goal, edge: Edge, player: str
) -> Witness | None:
    """Goal check after one claim; exact, but local to the new edge."""
    if isinstance(goal, ClubGoal):
        return club_witness(state, goal.horizon)
    if player != MAKER:
        return None
    if isinstance(goal, CliqueGoal):
        return clique_witness_through(state, edge, goal.size)
    return biclique_witness_through(state, edge, goal.left, goal.right)


def would_complete(state: GameState, player: str, edge: Edge, goal: Goal) -> bool:
    """Would claiming `edge` for `player` satisfy the goal immediately?

    Used by blocking heuristics.  The check treats `player` as the goal
    owner, so it works for hypothetical opponents as well as for Maker.
    """
    own, adj = (
        (state.maker_edges, state.maker_adj)
        if player == MAKER
        else (state.breaker_edges, state.breaker_adj)
    )
    added_a = edge.b not in adj.get(edge.a, ())
    added_b = edge.a not in adj.get(edge.b, ())
    fresh_keys = [v for v in edge if v not in adj]
    own.add(edge)
    adj.setdefault(edge.a, set()).add(edge.b)
    adj.setdefault(edge.b, set()).add(edge.a)
    new_labels = []
    if isinstance(goal, ClubGoal):
        for v in edge:
            if v.side is None and v.label not in state.explored:
                state.explored.add(v.label)
                new_labels.append(v.label)
    try:
        if player == MAKER:
            return witness_after_claim(state, goal, edge, player) is not None
        # Point the search at the hypothetical owner's subgraph.
        swapped = _SwappedView(state)
        return witness_after_claim(swapped, goal, edge, MAKER) is not None
    finally:
        own.discard(edge)
        if added_a:
            adj[edge.a].discard(edge.b)
        if added_b:
            adj[edge.b].discard(edge.a)
        for v in fresh_keys:
            adj.pop(v, None)
        for lab in new_labels:
            state.explored.discard(lab)


class _SwappedView:
    """Read-only facade presenting Breaker's claims as Maker's."""

    def __init__(self, state: GameState):
        self.board = state.board
        self.maker_edges = state.breaker_edges
        self.maker_adj = state.breaker_adj
        self.explored = state.explored


def goal_witness(state: GameState, goal: Goal) -> Witness | None:
    """Full goal check against the current Maker subgraph.

    Small supports go through the oracle module (lexicographically least
    witness); larger ones scan Maker edges in canonical order with the
    edge-local searches, which is exhaustive because every witness with an
    edge contains one.
    """
    from . import oracle

    if isinstance(goal, ClubGoal):
        return club_witness(state, goal.horizon)

    support = {v for e in state.maker_edges for v in e}
    if isinstance(goal, CliqueGoal):
        if goal.size == 1:
            touched = sorted(support)
            return [touched[0]] if touched else None
        if len(support) <= oracle.EXHAUSTIVE_VERTEX_BOUND:
            return oracle.find_clique(state.maker_edges, goal.size)
        for e in sorted(state.maker_edges, key=edge_key):
            w = clique_witness_through(state, e, goal.size)
            if w is not None:
                return w
        return None

    if len(support) <= oracle.EXHAUSTIVE_VERTEX_BOUND:
        return oracle.find_biclique(state.maker_edges, goal.left, goal.right)
    for e in sorted(state.maker_edges, key=edge_key):
        w = biclique_witness_through(state, e, goal.left, goal.right)
        if w is not None:
            return w
    return None


def verify_witness(state_or_edges, goal: Goal, witness: Witness) -> bool:
    """Edge-by-edge confirmation that a reported witness is real."""
    edges = (
        state_or_edges.maker_edges
        if isinstance(state_or_edges, GameState)
        else set(state_or_edges)
    )
    if isinstance(goal, BicliqueGoal):
        lefts, rights = witness
        if len(lefts) != goal.left or len(rights) != goal.right:
            return False
        if set(lefts) & set(rights):
            return False
        return all(
            make_edge(u, v) in edges for u, v in itertools.product(lefts, rights)
        )
    members = list(witness)
    if isinstance(goal, CliqueGoal) and len(members) != goal.size:
        return False
    return all(
        make_edge(u, v) in edges for u, v in itertools.combinations(members, 2)
    )
