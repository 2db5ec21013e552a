"""Maker strategy that grows a bounded-arity tree of claimed edges.

The strategy plays in phases.  Each phase activates one fresh vertex v,
joins it to the root, then repeatedly extends a root chain: among tree
nodes whose predecessor set equals v's current chain, it claims an edge
to the smallest one not Breaker-blocked (a node is blocked when Breaker
owns an edge from v into its subtree).  When no candidate remains, v
joins the tree with the chain as its predecessors and the next phase
starts.  Every pair of comparable tree nodes is a Maker edge, so any
root-to-leaf branch is a Maker clique.

With Breaker bias k the tree needs arity bound k + 1: between two Maker
claims Breaker adds at most k edges at v, each of which can block at
most one child subtree, so a full node always keeps one clean child.
The strategy asserts this counting argument at every insertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .boards import BoardError, Edge, Vertex, make_edge, plain
from .game import BREAKER, GameState, InvariantViolation, MAKER
from .strategies.base import Strategy, fallback_move

ROOT = plain(0)


class TreeError(ValueError):
    pass


class UnknownLeaf(TreeError):
    pass


class HausdorffTree:
    """Rooted tree with bounded arity and ordered, label-increasing chains.

    Nodes are plain vertices.  The root is vertex 0 and is present from
    the start.  Each node points at its parent; predecessor chains are
    recovered by walking up.  Inserts preserve:

      1. the root is node 0;
      2. every predecessor chain is strictly label-increasing;
      3. no node exceeds the arity bound;
      4. at most `limit_multiplicity` nodes share a predecessor set
         that has no maximum element (vacuous for finite chains, but
         checked so transfinite replays would be caught);
      5. nodes are added one at a time, as new maximal elements.
    """

    def __init__(self, arity_bound: int, limit_multiplicity: int = 1) -> None:
        if arity_bound < 1:
            raise TreeError(f"arity bound must be positive, got {arity_bound}")
        if limit_multiplicity < 1:
            raise TreeError(
                f"limit multiplicity must be positive, got {limit_multiplicity}"
            )
        self.arity_bound = arity_bound
        self.limit_multiplicity = limit_multiplicity
        self._parent: dict[Vertex, Vertex | None] = {ROOT: None}
        self._children: dict[Vertex, list[Vertex]] = {ROOT: []}
        self._order: list[Vertex] = [ROOT]
        self._depth: dict[Vertex, int] = {ROOT: 0}

    def __contains__(self, v: Vertex) -> bool:
        return v in self._parent

    def __len__(self) -> int:
        return len(self._order)

    @property
    def root(self) -> Vertex:
        return ROOT

    def parent(self, v: Vertex) -> Vertex | None:
        return self._parent[v]

    def children(self, v: Vertex) -> list[Vertex]:
        return self._children[v]

    def depth(self, v: Vertex) -> int:
        return self._depth[v]

    def nodes(self) -> list[Vertex]:
        """All nodes in insertion order."""
        return list(self._order)

    def add(self, v: Vertex, parent: Vertex) -> None:
        if v in self._parent:
            raise TreeError(f"{v} already in tree")
        if v.side is not None:
            raise TreeError(f"tree nodes are plain vertices, got {v}")
        if parent not in self._parent:
            raise TreeError(f"parent {parent} not in tree")
        if len(self._children[parent]) >= self.arity_bound:
            raise TreeError(f"{parent} already has {self.arity_bound} children")
        if v.label <= parent.label:
            raise TreeError(f"chains must increase: {v} under {parent}")
        self._parent[v] = parent
        self._children[parent].append(v)
        self._children[v] = []
        self._order.append(v)
        self._depth[v] = self._depth[parent] + 1

    def chain_of(self, v: Vertex) -> list[Vertex]:
        """v's predecessors, root first, excluding v itself."""
        out = []
        p = self._parent[v]
        while p is not None:
            out.append(p)
            p = self._parent[p]
        out.reverse()
        return out

    def ancestors_or_self(self, v: Vertex) -> Iterator[Vertex]:
        cur: Vertex | None = v
        while cur is not None:
            yield cur
            cur = self._parent[cur]

    def is_ancestor_or_self(self, anc: Vertex, v: Vertex) -> bool:
        return any(x == anc for x in self.ancestors_or_self(v))

    def subtree_nodes(self, v: Vertex) -> Iterator[Vertex]:
        stack = [v]
        while stack:
            x = stack.pop()
            yield x
            stack.extend(self._children[x])

    def subtree_size(self, v: Vertex) -> int:
        return sum(1 for _ in self.subtree_nodes(v))

    def leaves(self) -> list[Vertex]:
        return [v for v in self._order if not self._children[v]]

    def height(self) -> int:
        return max(self._depth.values())

    def validate(self) -> None:
        """Re-check every structural invariant from scratch."""
        if ROOT not in self._parent or self._parent[ROOT] is not None:
            raise TreeError("root missing or misparented")
        if self._order[0] != ROOT:
            raise TreeError("root must be the first node")
        for v in self._order:
            kids = self._children[v]
            if len(kids) > self.arity_bound:
                raise TreeError(f"{v} exceeds arity bound")
            chain = self.chain_of(v)
            for a, b in zip(chain, chain[1:] + [v]):
                if not a.label < b.label:
                    raise TreeError(f"chain not increasing at {v}")
        profiles: dict[tuple[Vertex, ...], int] = {}
        for v in self._order:
            chain = self.chain_of(v)
            if chain and max(c.label for c in chain) == chain[-1].label:
                continue  # the chain has a maximum element
            key = tuple(chain)
            profiles[key] = profiles.get(key, 0) + 1
            if profiles[key] > self.limit_multiplicity:
                raise TreeError(
                    f"{profiles[key]} nodes share the maximumless chain {key}"
                )

    def to_json(self) -> dict[str, Any]:
        return {
            "arityBound": self.arity_bound,
            "limitMultiplicity": self.limit_multiplicity,
            "nodes": [
                {
                    "label": str(v.label),
                    "parent": None if self._parent[v] is None else str(self._parent[v].label),
                    "depth": self._depth[v],
                }
                for v in self._order
            ],
        }


@dataclass(frozen=True)
class DeepestBranch:
    pass


@dataclass(frozen=True)
class MostDescendants:
    pass


@dataclass(frozen=True)
class PrincipalAt:
    leaf: Vertex


BranchPolicy = DeepestBranch | MostDescendants | PrincipalAt


def extract_branch(tree: HausdorffTree, policy: BranchPolicy) -> list[Vertex]:
    """A maximal root-to-leaf chain selected by the given policy.

    The policy stands in for the branch-selection device the full
    argument gets for free; at desk scale any deterministic rule that
    always descends yields a valid clique branch.
    """
    if isinstance(policy, PrincipalAt):
        leaf = policy.leaf
        if leaf not in tree or tree.children(leaf):
            raise UnknownLeaf(f"{leaf} is not a leaf of the tree")
        return tree.chain_of(leaf) + [leaf]
    if isinstance(policy, MostDescendants):
        branch = [tree.root]
        while tree.children(branch[-1]):
            kids = tree.children(branch[-1])
            branch.append(max(kids, key=lambda w: (tree.subtree_size(w), _neg_label(w))))
        return branch
    if isinstance(policy, DeepestBranch):
        best: list[Vertex] | None = None
        for leaf in tree.leaves():
            cand = tree.chain_of(leaf) + [leaf]
            if best is None or len(cand) > len(best):
                best = cand
            elif len(cand) == len(best) and _label_seq(cand) < _label_seq(best):
                best = cand
        assert best is not None
        return best
    raise TreeError(f"unknown branch policy {policy!r}")


def _neg_label(v: Vertex):
    # max() with reversed second key: larger subtree first, then the
    # smaller label.  Ordinals have no unary minus, so invert via sort
    # rank against the sibling list.
    return _NegOrd(v.label)


class _NegOrd:
    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val

    def __lt__(self, other):
        return other.val < self.val

    def __eq__(self, other):
        return other.val == self.val


def _label_seq(branch: list[Vertex]):
    return [v.label for v in branch]


def clique_from_branch(
    state: GameState, branch: list[Vertex]
) -> tuple[list[Vertex] | None, tuple[Vertex, Vertex] | None]:
    """Check a branch is a Maker clique.

    Returns (witness, None) when every pair is Maker-claimed, else
    (None, first missing pair) so tests can report the exact hole.
    """
    for i, u in enumerate(branch):
        for v in branch[i + 1 :]:
            if make_edge(u, v) not in state.maker_edges:
                return None, (u, v)
    return list(branch), None


class TreeMakerStrategy(Strategy):
    """Phase-structured Maker building a HausdorffTree of claimed edges."""

    def __init__(self, arity_bound: int = 2) -> None:
        if arity_bound < 2:
            raise ValueError(f"arity bound must be at least 2, got {arity_bound}")
        self.arity_bound = arity_bound
        self.tree: HausdorffTree | None = None
        self._active: Vertex | None = None
        self._chain: list[Vertex] = []
        self._tainted: set[Vertex] = set()
        self._seen = 0
        self._saturated = False
        self._phases = 0
        self._insertions = 0
        self._fallbacks = 0
        self.spec = f"tree(k={arity_bound - 1})"

    # -- bookkeeping -------------------------------------------------

    def _setup(self, state: GameState, role: str) -> None:
        if role != MAKER:
            raise ValueError("tree strategy plays Maker only")
        if state.board.bipartite:
            raise BoardError("tree strategy needs a complete board")
        mult = self.arity_bound if state.breaker_first else 1
        self.tree = HausdorffTree(self.arity_bound, limit_multiplicity=mult)

    def _ingest(self, state: GameState) -> None:
        """Fold new Breaker edges at the active vertex into the blocked set.

        Blocking an edge {v, x} with x in the tree taints x and every
        ancestor: any subtree containing x is no longer clean.  Taints
        are ancestor-closed, so the walk stops at the first node already
        marked.
        """
        assert self.tree is not None
        for move in state.history[self._seen :]:
            if move.player != BREAKER or self._active is None:
                continue
            edge = move.edge
            if self._active not in edge:
                continue
            other = edge.other(self._active)
            if other not in self.tree:
                continue
            for anc in self.tree.ancestors_or_self(other):
                if anc in self._tainted:
                    break
                self._tainted.add(anc)
        self._seen = len(state.history)

    def _assert_clean(self, state: GameState, v: Vertex, w: Vertex) -> None:
        """Claim-time discipline: no Breaker edge from v into w's subtree.

        Checked directly from Breaker's adjacency, independent of the
        incremental taint index the move selection used.
        """
        assert self.tree is not None
        for x in state.breaker_adj.get(v, ()):
            if x in self.tree and self.tree.is_ancestor_or_self(w, x):
                raise InvariantViolation(
                    f"claimed toward {w} but Breaker joins {v} to {x} below it"
                )

    # -- play --------------------------------------------------------

    def next_move(self, state: GameState, role: str, rng) -> Edge:
        if self.tree is None:
            self._setup(state, role)
        assert self.tree is not None
        self._ingest(state)

        if self._saturated:
            self._fallbacks += 1
            return fallback_move(state)

        while True:
            if self._active is None:
                v = state.smallest_fresh(None, exclude=(ROOT,))
                if v is None:
                    self._saturated = True
                    self._fallbacks += 1
                    return fallback_move(state)
                self._active = v
                self._chain = [ROOT]
                self._tainted = set()
                self._phases += 1
                edge = make_edge(ROOT, v)
                self._assert_clean(state, v, ROOT)
                return edge

            v = self._active
            top = self._chain[-1]
            # Children of the chain's maximum are exactly the nodes whose
            # predecessor set equals the chain, finite chains having a
            # maximum.  One list lookup implements the candidate rule.
            candidates = [w for w in self.tree.children(top) if w not in self._tainted]
            if candidates:
                w = min(candidates, key=lambda x: x.label)
                self._assert_clean(state, v, w)
                self._chain.append(w)
                return make_edge(w, v)

            kids = self.tree.children(top)
            if len(kids) >= self.arity_bound:
                since = _trailing_breaker_moves(state)
                if since <= self.arity_bound - 1:
                    raise InvariantViolation(
                        f"all {len(kids)} children of {top} blocked after only "
                        f"{since} Breaker moves; the counting argument forbids this"
                    )
                raise InvariantViolation(
                    f"arity bound {self.arity_bound} is too small for "
                    f"{since} Breaker moves per turn"
                )
            self.tree.add(v, parent=top)
            self._insertions += 1
            self._active = None
            # Fall through: the new phase's opening claim happens in
            # this same consultation.

    # -- reporting ---------------------------------------------------

    def diagnostics(self) -> dict:
        if self.tree is None:
            return {}
        return {
            "phases": self._phases,
            "insertions": self._insertions,
            "treeSize": len(self.tree),
            "height": self.tree.height(),
            "longestChain": self.tree.height() + 1,
            "fallbackMoves": self._fallbacks,
            "saturated": self._saturated,
        }

    def transcript_extras(self) -> dict:
        if self.tree is None:
            return {}
        return {"tree": self.tree.to_json()}


def _trailing_breaker_moves(state: GameState) -> int:
    n = 0
    for move in reversed(state.history):
        if move.player != BREAKER:
            break
        n += 1
    return n
