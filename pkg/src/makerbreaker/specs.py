"""Textual literals for boards, goals, schedules, and strategies.

These are the strings that appear on the command line, in config files,
in transcript headers, and in service requests.  One module owns the
grammar so every entry point parses identically and transcripts can be
replayed from their headers alone.

    board     := "K" ordinal [ "," ordinal ]
    goal      := "clique:" nat | "biclique:" nat "," nat | "club:" ordinal
    schedule  := "blocks:" nat
    strategy  := name [ "(" args ")" ]    nested parens allowed

A finite ordinal in a board literal makes that side finite; anything
else stays lazy.
"""

from __future__ import annotations

from .boards import (
    BipartiteBoard,
    Board,
    BoardError,
    CompleteBoard,
    LazyBipartiteBoard,
    LazyCompleteBoard,
)
from .catalogue import Catalogue, CatalogueBreakerStrategy, CatalogueError
from .bipartite import BipartiteMakerStrategy
from .game import BicliqueGoal, CliqueGoal, ClubGoal, Goal, Schedule
from .oracle import TooLarge
from .ordinals import Ordinal, OrdinalParseError
from .strategies import (
    FallbackStrategy,
    FarFallbackStrategy,
    GoalSeekerStrategy,
    GreedyBlockerStrategy,
    OraclePolicyStrategy,
    RandomStrategy,
    RestrictedStrategy,
    StealingStrategy,
    bipartite_to_complete,
    identity_embedding,
)
from .treemaker import TreeMakerStrategy

STRATEGY_NAMES = (
    "fallback",
    "far-fallback",
    "random",
    "greedy-blocker",
    "goal-seeker",
    "oracle",
    "tree",
    "bipartite",
    "catalogue",
    "steal",
    "restrict",
)


class SpecError(ValueError):
    """A literal failed to parse or describes an impossible setup."""


def parse_board(text: str, horizon: Ordinal | None = None) -> Board:
    """Board literal, optionally overriding any unbounded side."""
    text = text.strip()
    if not text.startswith("K") or len(text) < 2:
        raise SpecError(f"board literal must look like K12 or K8,8, got {text!r}")
    parts = text[1:].split(",")
    if len(parts) > 2:
        raise SpecError(f"too many sides in board literal {text!r}")
    sides = []
    for part in parts:
        try:
            h = Ordinal.parse(part)
        except OrdinalParseError as exc:
            raise SpecError(f"bad ordinal in board literal {text!r}: {exc}") from None
        if horizon is not None and not h.is_finite:
            h = horizon
        sides.append(h)
    try:
        if len(sides) == 1:
            h = sides[0]
            if h.is_finite:
                return CompleteBoard(h.as_int())
            return LazyCompleteBoard(h)
        lh, rh = sides
        if lh.is_finite and rh.is_finite:
            return BipartiteBoard(lh.as_int(), rh.as_int())
        return LazyBipartiteBoard(lh, rh)
    except BoardError as exc:
        raise SpecError(str(exc)) from None


def parse_goal(text: str) -> Goal:
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep:
        raise SpecError(f"goal literal needs a colon, got {text!r}")
    try:
        if kind == "clique":
            return CliqueGoal(_nat(rest, "clique size"))
        if kind == "biclique":
            a, _, b = rest.partition(",")
            if not _:
                raise SpecError(f"biclique goal needs two sizes, got {text!r}")
            return BicliqueGoal(_nat(a, "biclique left size"), _nat(b, "biclique right size"))
        if kind == "club":
            try:
                horizon = Ordinal.parse(rest)
            except OrdinalParseError as exc:
                raise SpecError(f"bad club horizon: {exc}") from None
            return ClubGoal(horizon)
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from None
    raise SpecError(f"unknown goal kind {kind!r} (clique, biclique, club)")


def parse_schedule(text: str | None) -> Schedule | None:
    if text is None or not text.strip():
        return None
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if kind != "blocks" or not sep:
        raise SpecError(f"schedule literal looks like blocks:50, got {text!r}")
    return Schedule(block_len=_nat(rest, "schedule block length"))


def _nat(text: str, what: str) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {text.strip()!r}") from None
    if value < 1:
        raise SpecError(f"{what} must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# Strategy expressions.
# ---------------------------------------------------------------------------


def split_spec(text: str) -> tuple[str, list[str]]:
    """Split `name(arg,arg)` into name and raw args, respecting nesting."""
    text = text.strip()
    if "(" not in text:
        if ")" in text:
            raise SpecError(f"unbalanced parentheses in {text!r}")
        return text, []
    name, _, tail = text.partition("(")
    if not tail.endswith(")"):
        raise SpecError(f"unbalanced parentheses in {text!r}")
    body = tail[:-1]
    args: list[str] = []
    depth = 0
    cur = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            args.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise SpecError(f"unbalanced parentheses in {text!r}")
    if cur or args:
        args.append("".join(cur).strip())
    return name.strip(), [a for a in args if a != ""]


def _keywords(args: list[str], allowed: tuple[str, ...], context: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for arg in args:
        key, sep, value = arg.partition("=")
        if not sep:
            raise SpecError(f"{context} takes key=value arguments, got {arg!r}")
        key = key.strip()
        if key not in allowed:
            raise SpecError(f"{context} does not take {key!r} (allowed: {', '.join(allowed)})")
        if key in out:
            raise SpecError(f"{context} repeats {key!r}")
        out[key] = value.strip()
    return out


def make_strategy(
    text: str,
    *,
    board: Board,
    goal: Goal,
    bias: int = 1,
    breaker_first: bool = False,
):
    """Build a strategy instance from its literal.

    Needs the game configuration because several strategies are built
    against the goal, the board, or the turn discipline.  The instance
    comes back with its `spec` set to the canonical literal, which this
    same function accepts, so transcript headers replay.
    """
    name, args = split_spec(text)
    strategy, canonical = _build(name, args, board, goal, bias, breaker_first)
    strategy.spec = canonical
    return strategy


def _build(name, args, board, goal, bias, breaker_first):
    if name == "fallback":
        _no_args(args, name)
        return FallbackStrategy(), "fallback"
    if name == "far-fallback":
        _no_args(args, name)
        return FarFallbackStrategy(), "far-fallback"
    if name == "random":
        if not args:
            return RandomStrategy(), "random"
        if len(args) > 1:
            raise SpecError("random takes at most one seed argument")
        seed = _int_arg(args[0], "random seed")
        return RandomStrategy(seed=seed), f"random({seed})"
    if name == "greedy-blocker":
        _no_args(args, name)
        return GreedyBlockerStrategy(goal), "greedy-blocker"
    if name == "goal-seeker":
        _no_args(args, name)
        return GoalSeekerStrategy(goal), "goal-seeker"
    if name == "oracle":
        _no_args(args, name)
        if bias != 1 or breaker_first:
            raise SpecError("oracle models the unbiased Maker-first game only")
        try:
            return OraclePolicyStrategy(board, goal), "oracle"
        except TooLarge as exc:
            raise SpecError(str(exc)) from None
    if name == "tree":
        kv = _keywords(args, ("k",), "tree")
        k = _nat(kv["k"], "tree bias") if "k" in kv else bias
        if k != bias:
            raise SpecError(
                f"tree(k={k}) disagrees with game bias {bias}; the arity "
                f"bound must match the actual Breaker bias"
            )
        return TreeMakerStrategy(arity_bound=k + 1), f"tree(k={k})"
    if name == "bipartite":
        kv = _keywords(args, ("p",), "bipartite")
        p = _nat(kv["p"], "phase length") if "p" in kv else 8
        return BipartiteMakerStrategy(p=p), f"bipartite(p={p})"
    if name == "catalogue":
        kv = _keywords(args, ("k", "m"), "catalogue")
        if "k" not in kv or "m" not in kv:
            raise SpecError("catalogue needs k= and m= (all k-subsets of the first m labels)")
        k, m = _nat(kv["k"], "catalogue k"), _nat(kv["m"], "catalogue m")
        try:
            cat = Catalogue.all_k_subsets(k, m)
        except CatalogueError as exc:
            raise SpecError(str(exc)) from None
        return CatalogueBreakerStrategy(cat), f"catalogue(k={k},m={m})"
    if name == "steal":
        if len(args) != 1:
            raise SpecError("steal wraps exactly one strategy: steal(<breaker spec>)")
        if bias != 1 or breaker_first:
            raise SpecError("steal requires bias 1 with Maker moving first")
        inner = make_strategy(
            args[0], board=board, goal=goal, bias=bias, breaker_first=breaker_first
        )
        return StealingStrategy(inner), f"steal({inner.spec})"
    if name == "restrict":
        if not 1 <= len(args) <= 2:
            raise SpecError("restrict takes restrict(<spec>[,<embedding>])")
        emb_name = args[1].strip() if len(args) == 2 else (
            "canonical" if board.bipartite else "identity"
        )
        embedding, host = _resolve_embedding(emb_name, board)
        inner = make_strategy(
            args[0], board=host, goal=goal, bias=bias, breaker_first=breaker_first
        )
        strat = RestrictedStrategy(inner, embedding, host)
        return strat, f"restrict({inner.spec},{emb_name})"
    raise SpecError(
        f"unknown strategy {name!r} (known: {', '.join(STRATEGY_NAMES)})"
    )


def _resolve_embedding(name: str, board: Board):
    name = name.strip()
    if name == "identity":
        return identity_embedding(), board
    if name == "canonical":
        if not board.bipartite:
            raise SpecError("the canonical embedding needs a two-sided board")
        if isinstance(board, BipartiteBoard):
            m, host = board.m, CompleteBoard(board.m + board.n)
        else:
            assert isinstance(board, LazyBipartiteBoard)
            if not board.left_horizon.is_finite:
                raise SpecError(
                    "the canonical embedding needs a finite left side to shift past"
                )
            m = board.left_horizon.as_int()
            host = LazyCompleteBoard(board.right_horizon)
        return bipartite_to_complete(m), host
    raise SpecError(f"unknown embedding {name!r} (identity, canonical)")


def _no_args(args: list[str], name: str) -> None:
    if args:
        raise SpecError(f"{name} takes no arguments")


def _int_arg(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {text!r}") from None
