"""The strategy kit: fallbacks, random play, blockers, steal, restrict."""

import random

import pytest

from makerbreaker.boards import (
    BipartiteBoard,
    CompleteBoard,
    LazyBipartiteBoard,
    LazyCompleteBoard,
    left,
    make_edge,
    plain,
    right,
)
from makerbreaker.game import (
    BREAKER,
    MAKER,
    BicliqueGoal,
    CliqueGoal,
    GameState,
    Schedule,
)
from makerbreaker.ordinals import OMEGA
from makerbreaker.referee import run_game
from makerbreaker.specs import make_strategy, parse_board, parse_goal
from makerbreaker.strategies import (
    Exhausted,
    FallbackStrategy,
    FarFallbackStrategy,
    GoalSeekerStrategy,
    GreedyBlockerStrategy,
    RandomStrategy,
    RestrictedStrategy,
    ScriptedStrategy,
    StealingStrategy,
    bipartite_to_complete,
    identity_embedding,
)


def E(i, j):
    return make_edge(plain(i), plain(j))


def B(i, j):
    return make_edge(left(i), right(j))


RNG = random.Random(0)


# ---------------------------------------------------------------------------
# fallbacks
# ---------------------------------------------------------------------------


def test_fallback_walks_the_canonical_order():
    state = GameState(CompleteBoard(4), enforce_turns=False)
    s = FallbackStrategy()
    assert s.next_move(state, MAKER, RNG) == E(0, 1)
    state.claim(MAKER, E(0, 1))
    assert s.next_move(state, MAKER, RNG) == E(0, 2)


def test_fallback_raises_when_nothing_is_left():
    state = GameState(CompleteBoard(3), enforce_turns=False)
    for e in (E(0, 1), E(0, 2), E(1, 2)):
        state.claim(MAKER, e)
    with pytest.raises(Exhausted):
        FallbackStrategy().next_move(state, MAKER, RNG)


def test_far_fallback_on_finite_boards_takes_the_largest_edge():
    state = GameState(CompleteBoard(4), enforce_turns=False)
    assert FarFallbackStrategy().next_move(state, BREAKER, RNG) == E(2, 3)


def test_far_fallback_on_lazy_boards_stays_remote():
    state = GameState(LazyCompleteBoard(OMEGA), enforce_turns=False)
    s = FarFallbackStrategy()
    first = s.next_move(state, BREAKER, RNG)
    state.claim(BREAKER, first)
    second = s.next_move(state, BREAKER, RNG)
    assert first == E(10**6, 10**6 + 1)
    assert second == E(10**6 + 2, 10**6 + 3)


def test_far_fallback_respects_finite_bipartite_sides():
    board = LazyBipartiteBoard(OMEGA, OMEGA)
    state = GameState(board, enforce_turns=False)
    e = FarFallbackStrategy().next_move(state, BREAKER, RNG)
    assert e == make_edge(left(10**6), right(10**6))


# ---------------------------------------------------------------------------
# random play
# ---------------------------------------------------------------------------


def test_random_moves_are_always_legal():
    rng = random.Random(17)
    state = GameState(CompleteBoard(6), enforce_turns=False)
    s = RandomStrategy()
    for _ in range(15):
        e = s.next_move(state, MAKER, rng)
        state.claim(MAKER, e)  # claim() rejects anything illegal
    assert len(state.maker_edges) == 15  # K6 fully claimed


def test_random_on_lazy_boards_stays_inside_the_window():
    rng = random.Random(3)
    state = GameState(LazyCompleteBoard(OMEGA), enforce_turns=False)
    s = RandomStrategy()
    for _ in range(30):
        before = state.frontier.get(None, -1)
        e = s.next_move(state, MAKER, rng)
        for v in e:
            assert v.label.as_int() < before + 1 + 8 + 2
        state.claim(MAKER, e)


def test_random_own_seed_decouples_from_the_referee_stream():
    def draws(referee_seed):
        state = GameState(CompleteBoard(8), enforce_turns=False)
        s = RandomStrategy(seed=42)
        rng = random.Random(referee_seed)
        out = []
        for _ in range(5):
            e = s.next_move(state, MAKER, rng)
            state.claim(MAKER, e)
            out.append(e)
        return out

    assert draws(1) == draws(2)
    assert RandomStrategy(seed=42).spec == "random(42)"
    assert RandomStrategy().spec == "random"


def test_random_bipartite_sampling():
    rng = random.Random(11)
    state = GameState(BipartiteBoard(3, 3), enforce_turns=False)
    s = RandomStrategy()
    seen = set()
    for _ in range(9):
        e = s.next_move(state, BREAKER, rng)
        state.claim(BREAKER, e)
        seen.add(e)
    assert seen == set(BipartiteBoard(3, 3).edges())


# ---------------------------------------------------------------------------
# scripted
# ---------------------------------------------------------------------------


def test_scripted_plays_then_falls_back():
    state = GameState(CompleteBoard(4), enforce_turns=False)
    s = ScriptedStrategy([E(2, 3)])
    assert s.next_move(state, MAKER, RNG) == E(2, 3)
    state.claim(MAKER, E(2, 3))
    assert s.next_move(state, MAKER, RNG) == E(0, 1)


def test_scripted_raise_mode():
    s = ScriptedStrategy([], then="raise")
    with pytest.raises(Exhausted):
        s.next_move(GameState(CompleteBoard(3)), MAKER, RNG)
    with pytest.raises(ValueError):
        ScriptedStrategy([], then="explode")


# ---------------------------------------------------------------------------
# greedy blocker
# ---------------------------------------------------------------------------


def test_blocker_takes_the_completing_edge():
    state = GameState(CompleteBoard(6), enforce_turns=False)
    state.claim(MAKER, E(0, 1))
    state.claim(MAKER, E(0, 2))
    s = GreedyBlockerStrategy(CliqueGoal(3))
    assert s.next_move(state, BREAKER, RNG) == E(1, 2)


def test_blocker_tier_two_crowds_busy_vertices():
    state = GameState(CompleteBoard(8), enforce_turns=False)
    state.claim(MAKER, E(0, 1))
    state.claim(MAKER, E(2, 3))
    s = GreedyBlockerStrategy(CliqueGoal(4))
    # nothing completes a K4 yet; the blocker crowds the opponent's
    # vertices, earliest canonical edge among the equally-scored ones
    assert s.next_move(state, BREAKER, RNG) == E(0, 2)


def test_blocker_with_no_signal_falls_back():
    state = GameState(CompleteBoard(4), enforce_turns=False)
    s = GreedyBlockerStrategy(CliqueGoal(3))
    assert s.next_move(state, BREAKER, RNG) == E(0, 1)


def test_blocker_blocks_bicliques_too():
    state = GameState(BipartiteBoard(3, 3), enforce_turns=False)
    for e in (B(0, 0), B(0, 1), B(1, 0)):
        state.claim(MAKER, e)
    s = GreedyBlockerStrategy(BicliqueGoal(2, 2))
    assert s.next_move(state, BREAKER, RNG) == B(1, 1)


# ---------------------------------------------------------------------------
# goal seeker
# ---------------------------------------------------------------------------


def test_seeker_opens_at_the_bottom():
    state = GameState(CompleteBoard(8))
    s = GoalSeekerStrategy(CliqueGoal(3))
    assert s.next_move(state, MAKER, RNG) == E(0, 1)


def test_seeker_builds_a_triangle_against_a_remote_opponent():
    board = parse_board("K12")
    goal = parse_goal("clique:3")
    out = run_game(
        board,
        goal,
        make_strategy("goal-seeker", board=board, goal=goal),
        make_strategy("far-fallback", board=board, goal=goal),
        budget=10,
    )
    assert (out.result, out.reason) == ("maker", "goal")
    edges = [m.edge for m in out.transcript.moves if m.player == "M"]
    assert edges == [E(0, 1), E(0, 2), E(1, 2)]


def test_seeker_builds_a_biclique_on_two_sided_boards():
    board = parse_board("K4,4")
    goal = parse_goal("biclique:2,2")
    out = run_game(
        board,
        goal,
        make_strategy("goal-seeker", board=board, goal=goal),
        make_strategy("far-fallback", board=board, goal=goal),
        budget=10,
    )
    assert (out.result, out.reason) == ("maker", "goal")
    assert out.state.maker_moves == 4


def test_seeker_reroutes_around_blocked_edges():
    state = GameState(CompleteBoard(8), enforce_turns=False)
    state.claim(MAKER, E(0, 1))
    state.claim(BREAKER, E(0, 2))
    state.claim(BREAKER, E(1, 2))  # vertex 2 is dead for the seeker
    s = GoalSeekerStrategy(CliqueGoal(3))
    got = s.next_move(state, MAKER, RNG)
    assert got in (E(0, 3), E(1, 3))


# ---------------------------------------------------------------------------
# steal wrapper
# ---------------------------------------------------------------------------


def test_steal_opening_is_the_fallback_edge():
    state = GameState(CompleteBoard(6))
    s = StealingStrategy(FallbackStrategy())
    assert s.next_move(state, MAKER, RNG) == E(0, 1)


def test_steal_banks_collisions_and_keeps_playing():
    # wrapped breaker always answers {0,1}, which steal claimed for free
    state = GameState(CompleteBoard(6))
    s = StealingStrategy(ScriptedStrategy([E(0, 1), E(2, 3)]))
    first = s.next_move(state, MAKER, RNG)
    state.claim(MAKER, first)
    state.claim(BREAKER, E(4, 5))
    second = s.next_move(state, MAKER, RNG)
    # the scripted answer {0,1} was already banked; a new free edge appears
    assert first == E(0, 1)
    assert second == E(0, 2)
    assert s.diagnostics()["remapped"] == [["{0,1}", "{0,2}"]]


def test_steal_rejects_weird_disciplines():
    s = StealingStrategy(FallbackStrategy())
    with pytest.raises(ValueError):
        s.next_move(GameState(CompleteBoard(4), bias=2), MAKER, RNG)
    s = StealingStrategy(FallbackStrategy())
    with pytest.raises(ValueError):
        s.next_move(GameState(CompleteBoard(4), breaker_first=True), BREAKER, RNG)


def test_steal_skips_the_wrapped_strategy_at_limit_turns():
    # blocks:1 puts every Maker turn at 0, w, w*2, ...: never a successor,
    # so the wrapped strategy must never be consulted
    board = parse_board("K10")
    goal = parse_goal("clique:4")
    angry = ScriptedStrategy([], then="raise")
    out = run_game(
        board,
        goal,
        StealingStrategy(angry),
        make_strategy("far-fallback", board=board, goal=goal),
        budget=4,
        schedule=Schedule(block_len=1),
    )
    assert out.result == "budget"
    maker_edges = [m.edge for m in out.transcript.moves if m.player == "M"]
    assert maker_edges == [E(0, 1), E(0, 2), E(1, 2), E(0, 3)]


def test_steal_full_game_bookkeeping_survives_random_play():
    board = parse_board("K9")
    goal = parse_goal("clique:3")
    for seed in range(12):
        out = run_game(
            board,
            goal,
            StealingStrategy(GreedyBlockerStrategy(goal)),
            make_strategy("random", board=board, goal=goal),
            budget=25,
            seed=seed,
        )
        assert out.result in ("maker", "breaker", "budget")


# ---------------------------------------------------------------------------
# restrict wrapper
# ---------------------------------------------------------------------------


def test_identity_restriction_mirrors_the_wrapped_strategy():
    board = parse_board("K6")
    goal = parse_goal("clique:3")
    plain_run = run_game(
        board,
        goal,
        make_strategy("goal-seeker", board=board, goal=goal),
        GreedyBlockerStrategy(goal),
        budget=20,
    )
    wrapped_run = run_game(
        board,
        goal,
        make_strategy("goal-seeker", board=board, goal=goal),
        RestrictedStrategy(GreedyBlockerStrategy(goal), identity_embedding(), board),
        budget=20,
    )
    assert [m.edge for m in plain_run.transcript.moves] == [
        m.edge for m in wrapped_run.transcript.moves
    ]


def test_restriction_maps_moves_through_the_embedding():
    emb = bipartite_to_complete(2)
    assert emb.map_edge(B(0, 1)) == E(0, 3)
    assert emb.unmap_edge(E(1, 2)) == B(1, 0)
    assert emb.unmap_edge(E(0, 1)) is None  # both land on the left side
    # transfinite right labels sit above every shifted finite one
    w = make_edge(left(1), right(OMEGA))
    host = emb.map_edge(w)
    assert host == make_edge(plain(1), plain(OMEGA))
    assert emb.unmap_edge(host) == w


def test_restricted_breaker_drops_out_of_image_answers():
    board = BipartiteBoard(2, 2)
    host = CompleteBoard(4)
    s = RestrictedStrategy(FallbackStrategy(), bipartite_to_complete(2), host)
    state = GameState(board)
    state.claim(MAKER, B(0, 1))
    # wrapped fallback answers host {0,1}, which unmaps to an intra-side
    # pair; the real move degrades to the canonical fallback
    assert s.next_move(state, BREAKER, RNG) == B(0, 0)
    assert s.diagnostics()["droppedOutsideImage"] == 1


def test_restricted_breaker_plays_mapped_answers_when_possible():
    board = BipartiteBoard(2, 2)
    host = CompleteBoard(4)
    script = ScriptedStrategy([E(0, 2)])  # host edge, maps to L0-R0
    s = RestrictedStrategy(script, bipartite_to_complete(2), host)
    state = GameState(board)
    state.claim(MAKER, B(0, 1))
    assert s.next_move(state, BREAKER, RNG) == B(0, 0)
    assert s.diagnostics()["mapped"] == 1


def test_restricted_strategy_is_breaker_only():
    s = RestrictedStrategy(FallbackStrategy(), identity_embedding(), CompleteBoard(4))
    with pytest.raises(ValueError):
        s.next_move(GameState(CompleteBoard(4)), MAKER, RNG)
