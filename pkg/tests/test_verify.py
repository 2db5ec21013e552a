"""Offline transcript verification: clean replays and tampered files.

Each tamper test hand-edits one JSON line the way a hostile or buggy
producer might, then checks the complaint lands on that exact line.
"""

import json

import pytest

from makerbreaker.referee import run_game
from makerbreaker.specs import make_strategy, parse_board, parse_goal
from makerbreaker.verify import verify_file, verify_transcript


def play(board_lit, goal_lit, maker_lit, breaker_lit, *, budget=20, seed=7, **kw):
    board = parse_board(board_lit)
    goal = parse_goal(goal_lit)
    build = dict(board=board, goal=goal, **{
        k: kw[k] for k in ("bias", "breaker_first") if k in kw
    })
    return run_game(
        board,
        goal,
        make_strategy(maker_lit, **build),
        make_strategy(breaker_lit, **build),
        budget=budget,
        seed=seed,
        **kw,
    )


def write(tmp_path, out, name="game.jsonl"):
    path = tmp_path / name
    out.transcript.write(path)
    return path


def edit(path, line_no, fn):
    """Apply fn to the JSON object on 1-based line `line_no`."""
    lines = path.read_text(encoding="utf-8").splitlines()
    obj = json.loads(lines[line_no - 1])
    fn(obj)
    lines[line_no - 1] = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def assert_violation(report, line_no, fragment):
    assert not report.ok
    hits = [v for v in report.violations if fragment in v]
    assert hits, f"no violation mentions {fragment!r}: {report.violations}"
    assert any(f"line {line_no}:" in v for v in hits), report.violations


# --- clean transcripts of every flavour ---------------------------------


CLEAN_GAMES = [
    ("K12", "clique:3", "goal-seeker", "random", {}),
    ("K12", "clique:4", "tree", "random", {}),
    ("K8,8", "biclique:2,3", "bipartite(p=3)", "random", {}),
    ("K12", "biclique:2,4", "goal-seeker", "catalogue(k=2,m=5)", {}),
    ("K10", "clique:3", "steal(greedy-blocker)", "random", {}),
    ("K4,4", "biclique:2,2", "goal-seeker", "restrict(fallback)", {}),
    ("K10", "clique:4", "random", "random", {"bias": 2}),
    ("K10", "clique:4", "random", "random", {"breaker_first": True}),
    ("K3", "clique:3", "fallback", "fallback", {}),  # exhaustion -> breaker
    ("K12", "clique:6", "random", "random", {"budget": 3}),  # budget stop
]


@pytest.mark.parametrize("board, goal, maker, breaker, kw", CLEAN_GAMES)
def test_clean_runs_verify_and_resimulate(tmp_path, board, goal, maker, breaker, kw):
    out = play(board, goal, maker, breaker, **kw)
    path = write(tmp_path, out)
    report = verify_file(str(path))
    assert report.ok, report.violations
    assert report.resimulated
    assert report.render().endswith("all invariants hold")


def test_report_render_lists_each_check(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    report = verify_transcript(out.transcript)
    rendered = report.render()
    assert rendered.count("ok   ") == len(report.checks) >= 2
    assert "FAIL" not in rendered
    assert "re-simulation reproduced the transcript byte for byte" in " ".join(
        report.checks
    )


def test_missing_file_is_reported_not_raised():
    report = verify_file("/no/such/transcript.jsonl")
    assert not report.ok
    assert any("cannot read" in v for v in report.violations)


def test_unparseable_line_is_cited(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    path = write(tmp_path, out)
    lines = path.read_text(encoding="utf-8").splitlines()
    lines[2] = "{not json"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    report = verify_file(str(path))
    assert_violation(report, 3, "")
    assert any(v.startswith("line 3:") for v in report.violations)


# --- structural tampers --------------------------------------------------


def test_duplicate_claim_is_flagged_at_its_line(tmp_path):
    out = play("K12", "clique:6", "random", "random", budget=5)
    path = write(tmp_path, out)
    first = json.loads(path.read_text(encoding="utf-8").splitlines()[1])
    edit(path, 4, lambda obj: obj.update(edge=first["edge"]))
    report = verify_file(str(path))
    assert_violation(report, 4, "illegal move on replay")


def test_turn_ordinal_forgery_is_flagged(tmp_path):
    out = play("K12", "clique:6", "random", "random", budget=4)
    path = write(tmp_path, out)
    edit(path, 3, lambda obj: obj.update(turn="w*9"))
    report = verify_file(str(path))
    assert_violation(report, 3, "does not match the discipline")


def test_step_forgery_is_flagged(tmp_path):
    out = play("K12", "clique:6", "random", "random", budget=4)
    path = write(tmp_path, out)
    edit(path, 3, lambda obj: obj.update(step=17))
    report = verify_file(str(path))
    assert_violation(report, 3, "out of order")


def test_forged_budget_result_on_a_win(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "far-fallback")
    assert out.result == "maker"
    path = write(tmp_path, out)
    final = len(out.transcript.moves) + 2
    edit(path, final, lambda obj: obj.update(result="budget"))
    report = verify_file(str(path))
    assert_violation(report, final, "must not carry a witness")


def test_forged_maker_result_without_witness(tmp_path):
    out = play("K12", "clique:6", "random", "random", budget=3)
    assert out.result == "budget"
    path = write(tmp_path, out)
    final = len(out.transcript.moves) + 2
    edit(path, final, lambda obj: obj.update(result="maker"))
    report = verify_file(str(path))
    assert_violation(report, final, "no witness is recorded")


def test_tampered_witness_is_rejected(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "far-fallback")
    assert out.result == "maker"
    path = write(tmp_path, out)
    final = len(out.transcript.moves) + 2

    def swap(obj):
        obj["witness"][0]["label"] = "11"

    edit(path, final, swap)
    report = verify_file(str(path))
    assert_violation(report, final, "not a Maker-claimed goal copy")


def test_play_past_a_completed_goal_is_flagged(tmp_path):
    out = play("K4", "clique:2", "fallback", "fallback", budget=1)
    assert out.result == "maker" and len(out.transcript.moves) == 1
    path = write(tmp_path, out)
    lines = path.read_text(encoding="utf-8").splitlines()
    extra = [
        {"turn": "0", "step": 2, "player": "B", "edge": [
            {"label": "0"}, {"label": "2"}]},
        {"turn": "1", "step": 3, "player": "M", "edge": [
            {"label": "1"}, {"label": "2"}]},
    ]
    tail = [json.dumps(o, sort_keys=True, separators=(",", ":")) for o in extra]
    lines[2:2] = tail
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    report = verify_file(str(path))
    assert_violation(report, 2, "play continued")


def test_bad_header_configuration_is_line_one(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    path = write(tmp_path, out)
    edit(path, 1, lambda obj: obj.update(board="Kx"))
    report = verify_file(str(path))
    assert_violation(report, 1, "bad configuration")


# --- strategy extras tampers ----------------------------------------------


def bipartite_game(tmp_path):
    out = play("K8,8", "biclique:2,3", "bipartite(p=3)", "random", budget=9)
    return write(tmp_path, out), len(out.transcript.moves) + 2


def test_phase_claim_never_made_is_flagged(tmp_path):
    path, final = bipartite_game(tmp_path)
    edit(path, final, lambda obj: obj["phases"][0]["claimed"].append("7"))
    report = verify_file(str(path))
    assert_violation(report, final, "Maker never claimed")


def test_phase_that_forgets_stolen_vertices_is_flagged(tmp_path):
    path, final = bipartite_game(tmp_path)

    def drop_nested(obj):
        phases = obj["phases"]
        # The nesting check compares against the predecessor, so the
        # tamper must hit a phase whose predecessor already stole.
        donor = next(
            i for i in range(1, len(phases)) if phases[i - 1]["stolen"]
        )
        phases[donor]["stolen"] = []

    edit(path, final, drop_nested)
    report = verify_file(str(path))
    assert_violation(report, final, "forgot previously stolen")


def test_phase_with_a_fabricated_steal_is_flagged(tmp_path):
    path, final = bipartite_game(tmp_path)
    # Left 7 is never a Breaker endpoint under this seed.
    edit(path, final, lambda obj: obj["phases"][0].update(stolen=["7"]))
    report = verify_file(str(path))
    assert_violation(report, final, "never touched")


def test_phase_center_on_the_left_is_flagged(tmp_path):
    path, final = bipartite_game(tmp_path)
    edit(path, final, lambda obj: obj["phases"][0]["center"].update(side="L"))
    report = verify_file(str(path))
    assert_violation(report, final, "not a right vertex")


def tree_game(tmp_path):
    out = play("K12", "clique:4", "tree", "random", budget=8)
    return write(tmp_path, out), len(out.transcript.moves) + 2


def test_tree_with_unclaimed_chain_edge_is_flagged(tmp_path):
    path, final = tree_game(tmp_path)
    edit(
        path,
        final,
        lambda obj: obj["tree"]["nodes"].append({"label": "11", "parent": "0"}),
    )
    report = verify_file(str(path))
    assert_violation(report, final, "never claimed")


def test_malformed_tree_extras_are_flagged(tmp_path):
    path, final = tree_game(tmp_path)
    edit(
        path,
        final,
        lambda obj: obj["tree"]["nodes"].append({"label": "9", "parent": None}),
    )
    report = verify_file(str(path))
    assert_violation(report, final, "valid tree")


def catalogue_game(tmp_path):
    out = play("K12", "biclique:2,4", "goal-seeker", "catalogue(k=2,m=5)", budget=12)
    path = write(tmp_path, out)
    final = len(out.transcript.moves) + 2
    obj = json.loads(path.read_text(encoding="utf-8").splitlines()[final - 1])
    if not obj.get("firings"):
        pytest.skip("the rule never fired under this seed")
    return path, final


def test_firing_with_wrong_slot_is_flagged(tmp_path):
    path, final = catalogue_game(tmp_path)

    def bend(obj):
        f = obj["firings"][0]
        f["setIndex"] = (f["setIndex"] + 1) % 5

    edit(path, final, bend)
    report = verify_file(str(path))
    assert_violation(report, final, "slot map sends")


def test_firing_with_phantom_edge_is_flagged(tmp_path):
    path, final = catalogue_game(tmp_path)

    def bend(obj):
        for f in obj["firings"]:
            if f["edge"] is not None:
                f["edge"] = ["9", "11"]
                return
        pytest.skip("no available reply fired under this seed")

    edit(path, final, bend)
    report = verify_file(str(path))
    assert_violation(report, final, "never claimed")


def test_firing_rank_outside_slot_map_is_flagged(tmp_path):
    path, final = catalogue_game(tmp_path)
    edit(path, final, lambda obj: obj["firings"][0].update(gamma=99))
    report = verify_file(str(path))
    assert_violation(report, final, "outside the slot map")


# --- re-simulation ---------------------------------------------------------


def test_foreign_generator_skips_resimulation(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    path = write(tmp_path, out)
    edit(path, 1, lambda obj: obj.update(generator="someone-else/v9"))
    report = verify_file(str(path))
    assert report.ok
    assert not report.resimulated
    assert "is not ours" in report.resim_note


def test_interactive_specs_skip_resimulation(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    path = write(tmp_path, out)
    edit(path, 1, lambda obj: obj["strategies"].update(maker="human"))
    report = verify_file(str(path))
    assert not report.resimulated
    assert "re-simulation skipped" in report.resim_note


def test_seed_tamper_diverges_at_the_first_move(tmp_path):
    out = play("K12", "clique:6", "random", "random", budget=5)
    path = write(tmp_path, out)
    edit(path, 1, lambda obj: obj.update(seed=out.transcript.seed + 1))
    report = verify_file(str(path))
    # The replay header echoes the tampered seed, so the header line
    # itself matches; the first random move is where the lie shows.
    assert_violation(report, 2, "diverged")


def test_structural_pass_without_resimulation(tmp_path):
    out = play("K12", "clique:3", "goal-seeker", "random")
    report = verify_transcript(out.transcript, resimulate=False)
    assert report.ok
    assert not report.resimulated
    assert all("re-simulation" not in c for c in report.checks)
