"""The literal grammar: boards, goals, schedules, strategy expressions.

The round-trip property matters most here: every canonical literal a
strategy reports must rebuild the same configuration, because transcript
headers are replayed through this very module.
"""

import pytest

from makerbreaker.boards import (
    BipartiteBoard,
    CompleteBoard,
    LazyBipartiteBoard,
    LazyCompleteBoard,
)
from makerbreaker.game import BicliqueGoal, CliqueGoal, ClubGoal, Schedule
from makerbreaker.ordinals import Ordinal
from makerbreaker.specs import (
    SpecError,
    make_strategy,
    parse_board,
    parse_goal,
    parse_schedule,
    split_spec,
)


def O(text):
    return Ordinal.parse(text)


# --- boards -----------------------------------------------------------


def test_board_literals():
    board = parse_board("K12")
    assert isinstance(board, CompleteBoard) and board.n == 12
    grid = parse_board(" K8,8 ")
    assert isinstance(grid, BipartiteBoard) and (grid.m, grid.n) == (8, 8)
    lazy = parse_board("Kw")
    assert isinstance(lazy, LazyCompleteBoard) and lazy.horizon == O("w")
    two = parse_board("K6,w*2")
    assert isinstance(two, LazyBipartiteBoard)
    assert two.left_horizon == O("6") and two.right_horizon == O("w*2")
    for literal in ("K12", "K8,8", "Kw", "K6,w*2"):
        assert parse_board(literal).describe() == literal


def test_board_horizon_override_caps_lazy_sides_only():
    assert parse_board("Kw", horizon=O("20")).describe() == "K20"
    mixed = parse_board("K6,w", horizon=O("9"))
    assert isinstance(mixed, BipartiteBoard) and mixed.describe() == "K6,9"
    assert parse_board("K6,7", horizon=O("99")).describe() == "K6,7"


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("12", "must look like"),
        ("K", "must look like"),
        ("K1,2,3", "too many sides"),
        ("Kx", "bad ordinal"),
        ("K5,zz", "bad ordinal"),
        ("K0", "positive"),
    ],
)
def test_board_literal_errors(bad, fragment):
    with pytest.raises(SpecError, match=fragment):
        parse_board(bad)


# --- goals and schedules ------------------------------------------------


def test_goal_literals():
    assert parse_goal("clique:3") == CliqueGoal(3)
    assert parse_goal(" biclique:2,6 ") == BicliqueGoal(2, 6)
    club = parse_goal("club:w*2")
    assert isinstance(club, ClubGoal) and club.horizon == O("w*2")


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("clique", "needs a colon"),
        ("clique:x", "must be an integer"),
        ("clique:0", "must be positive"),
        ("biclique:2", "needs two sizes"),
        ("biclique:2,0", "must be positive"),
        ("club:zz", "bad club horizon"),
        ("path:3", "unknown goal kind"),
    ],
)
def test_goal_literal_errors(bad, fragment):
    with pytest.raises(SpecError, match=fragment):
        parse_goal(bad)


def test_schedule_literals():
    assert parse_schedule(None) is None
    assert parse_schedule("   ") is None
    assert parse_schedule("blocks:50") == Schedule(block_len=50)
    with pytest.raises(SpecError, match="blocks:50"):
        parse_schedule("every:3")
    with pytest.raises(SpecError, match="positive"):
        parse_schedule("blocks:0")


# --- strategy expressions ----------------------------------------------


def test_split_spec_handles_nesting():
    assert split_spec("fallback") == ("fallback", [])
    assert split_spec("random(42)") == ("random", ["42"])
    assert split_spec("steal(catalogue(k=2,m=6))") == (
        "steal",
        ["catalogue(k=2,m=6)"],
    )
    assert split_spec("restrict(catalogue(k=2,m=6),canonical)") == (
        "restrict",
        ["catalogue(k=2,m=6)", "canonical"],
    )
    assert split_spec("random()") == ("random", [])


@pytest.mark.parametrize("bad", ["steal(", "steal)", "steal(fallback))", "a(b(c)"])
def test_split_spec_rejects_unbalanced_parens(bad):
    with pytest.raises(SpecError, match="unbalanced"):
        split_spec(bad)


CANONICAL_CASES = [
    # (input literal, canonical form, board literal, goal literal)
    ("fallback", "fallback", "K12", "clique:3"),
    ("far-fallback", "far-fallback", "K12", "clique:3"),
    ("random", "random", "K12", "clique:3"),
    ("random(42)", "random(42)", "K12", "clique:3"),
    ("greedy-blocker", "greedy-blocker", "K12", "clique:3"),
    ("goal-seeker", "goal-seeker", "K12", "clique:3"),
    ("oracle", "oracle", "K4", "clique:3"),
    ("tree", "tree(k=1)", "K12", "clique:4"),
    ("tree(k=1)", "tree(k=1)", "K12", "clique:4"),
    ("bipartite", "bipartite(p=8)", "K6,6", "biclique:2,2"),
    ("bipartite(p=3)", "bipartite(p=3)", "K6,6", "biclique:2,2"),
    ("catalogue(k=2,m=6)", "catalogue(k=2,m=6)", "K30", "biclique:2,6"),
    ("steal(catalogue(k=2,m=6))", "steal(catalogue(k=2,m=6))", "K30", "clique:3"),
    ("restrict(fallback,identity)", "restrict(fallback,identity)", "K12", "clique:3"),
    ("restrict(fallback)", "restrict(fallback,identity)", "K12", "clique:3"),
    ("restrict(fallback)", "restrict(fallback,canonical)", "K4,4", "biclique:2,2"),
    (
        "restrict(catalogue(k=2,m=6),canonical)",
        "restrict(catalogue(k=2,m=6),canonical)",
        "K4,4",
        "biclique:2,2",
    ),
]


@pytest.mark.parametrize("literal, canonical, board_lit, goal_lit", CANONICAL_CASES)
def test_canonical_literals_rebuild_themselves(literal, canonical, board_lit, goal_lit):
    board, goal = parse_board(board_lit), parse_goal(goal_lit)
    built = make_strategy(literal, board=board, goal=goal)
    assert built.spec == canonical
    again = make_strategy(built.spec, board=board, goal=goal)
    assert again.spec == canonical
    assert type(again) is type(built)


def test_tree_literal_tracks_the_game_bias():
    board, goal = parse_board("K12"), parse_goal("clique:4")
    s = make_strategy("tree", board=board, goal=goal, bias=2)
    assert s.spec == "tree(k=2)" and s.arity_bound == 3
    with pytest.raises(SpecError, match="disagrees with game bias"):
        make_strategy("tree(k=2)", board=board, goal=goal, bias=1)


def test_oracle_literal_guards():
    goal = parse_goal("clique:3")
    with pytest.raises(SpecError, match="at most 10 edges"):
        make_strategy("oracle", board=parse_board("K12"), goal=goal)
    small = parse_board("K4")
    with pytest.raises(SpecError, match="unbiased"):
        make_strategy("oracle", board=small, goal=goal, bias=2)
    with pytest.raises(SpecError, match="unbiased"):
        make_strategy("oracle", board=small, goal=goal, breaker_first=True)


def test_steal_literal_guards():
    board, goal = parse_board("K12"), parse_goal("clique:3")
    with pytest.raises(SpecError, match="exactly one"):
        make_strategy("steal", board=board, goal=goal)
    with pytest.raises(SpecError, match="exactly one"):
        make_strategy("steal(fallback,fallback)", board=board, goal=goal)
    with pytest.raises(SpecError, match="bias 1"):
        make_strategy("steal(fallback)", board=board, goal=goal, bias=2)
    with pytest.raises(SpecError, match="Maker moving first"):
        make_strategy("steal(fallback)", board=board, goal=goal, breaker_first=True)


def test_restrict_embedding_resolution():
    goal = parse_goal("biclique:2,2")
    finite = make_strategy("restrict(fallback)", board=parse_board("K3,4"), goal=goal)
    assert finite._host.describe() == "K7"
    lazy = make_strategy("restrict(fallback)", board=parse_board("K8,w"), goal=goal)
    assert isinstance(lazy._host, LazyCompleteBoard)
    assert lazy._host.describe() == "Kw"
    with pytest.raises(SpecError, match="finite left side"):
        make_strategy("restrict(fallback)", board=parse_board("Kw,8"), goal=goal)
    with pytest.raises(SpecError, match="two-sided"):
        make_strategy(
            "restrict(fallback,canonical)", board=parse_board("K12"), goal=goal
        )
    with pytest.raises(SpecError, match="unknown embedding"):
        make_strategy("restrict(fallback,weird)", board=parse_board("K12"), goal=goal)
    with pytest.raises(SpecError, match="restrict takes"):
        make_strategy("restrict", board=parse_board("K12"), goal=goal)


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("fallback(1)", "takes no arguments"),
        ("random(x)", "must be an integer"),
        ("random(1,2)", "at most one seed"),
        ("tree(3)", "key=value"),
        ("tree(j=3)", "does not take"),
        ("bipartite(p=2,p=3)", "repeats"),
        ("bipartite(p=0)", "must be positive"),
        ("catalogue(k=2)", "k= and m="),
        ("catalogue(k=3,m=2)", "cannot form"),
        ("zigzag", "unknown strategy"),
    ],
)
def test_strategy_literal_errors(bad, fragment):
    board, goal = parse_board("K12"), parse_goal("clique:3")
    with pytest.raises(SpecError, match=fragment):
        make_strategy(bad, board=board, goal=goal)
