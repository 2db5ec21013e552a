"""Transcript serialization: byte determinism and line-numbered errors."""

import json

import pytest

from makerbreaker.boards import left, make_edge, plain, right
from makerbreaker.game import BicliqueGoal, CliqueGoal
from makerbreaker.ordinals import OMEGA, Ordinal
from makerbreaker.referee import run_game
from makerbreaker.specs import make_strategy, parse_board, parse_goal
from makerbreaker.transcript import (
    GENERATOR_ID,
    Transcript,
    TranscriptError,
    edge_from_json,
    edge_to_json,
    vertex_from_json,
    vertex_to_json,
    witness_from_json,
    witness_to_json,
)


def game(seed=7, board="K8", goal="clique:3", maker="random", breaker="random", budget=50):
    b, g = parse_board(board), parse_goal(goal)
    return run_game(
        b,
        g,
        make_strategy(maker, board=b, goal=g),
        make_strategy(breaker, board=b, goal=g),
        budget=budget,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# JSON atoms
# ---------------------------------------------------------------------------


def test_vertex_json_round_trip():
    for v in (plain(3), left(0), right(OMEGA), plain(Ordinal.parse("w+4"))):
        data = vertex_to_json(v)
        assert vertex_from_json(data, 1) == v
    assert vertex_to_json(plain(OMEGA)) == {"label": "w"}
    assert vertex_to_json(left(2)) == {"label": "2", "side": "L"}


def test_vertex_labels_stay_literals():
    # numbers would collapse transfinite labels; the format forbids them
    with pytest.raises(TranscriptError):
        vertex_from_json({"label": 3}, 9)
    with pytest.raises(TranscriptError):
        vertex_from_json({"label": "not-an-ordinal"}, 9)
    with pytest.raises(TranscriptError):
        vertex_from_json(["label"], 9)


def test_edge_json_round_trip():
    e = make_edge(left(1), right(OMEGA))
    assert edge_from_json(edge_to_json(e), 1) == e
    with pytest.raises(TranscriptError):
        edge_from_json([vertex_to_json(plain(1))], 4)  # one endpoint


def test_witness_json_shapes():
    clique = [plain(0), plain(1), plain(2)]
    assert witness_from_json(witness_to_json(clique), 1) == clique
    pair = ([left(0), left(1)], [right(0)])
    assert witness_from_json(witness_to_json(pair), 1) == pair


# ---------------------------------------------------------------------------
# whole transcripts
# ---------------------------------------------------------------------------


def test_lines_round_trip_byte_exact():
    out = game()
    lines = out.transcript.to_lines()
    again = Transcript.from_lines(lines)
    assert again.to_lines() == lines


def test_same_seed_same_bytes():
    a = game(seed=123).transcript.to_lines()
    b = game(seed=123).transcript.to_lines()
    assert a == b
    c = game(seed=124).transcript.to_lines()
    assert a != c


def test_file_round_trip(tmp_path):
    out = game()
    path = tmp_path / "game.jsonl"
    out.transcript.write(path)
    again = Transcript.read(path)
    assert again.to_lines() == out.transcript.to_lines()
    raw = path.read_text(encoding="utf-8")
    assert raw.endswith("\n")
    assert len(raw.splitlines()) == len(out.transcript.moves) + 2


def test_header_shape():
    out = game(board="K6,6", goal="biclique:2,2")
    header = json.loads(out.transcript.to_lines()[0])
    assert header == {
        "version": 1,
        "board": "K6,6",
        "goal": "biclique:2,2",
        "bias": 1,
        "breakerFirst": False,
        "seed": 7,
        "strategies": {"maker": "random", "breaker": "random"},
        "generator": GENERATOR_ID,
    }


def test_schedule_appears_in_header_only_when_set():
    lines = game().transcript.to_lines()
    assert "schedule" not in json.loads(lines[0])
    tr = Transcript(
        board="K4",
        goal="clique:3",
        bias=1,
        breaker_first=False,
        seed=0,
        strategies={"maker": "fallback", "breaker": "fallback"},
        schedule="blocks:5",
    )
    assert json.loads(tr.to_lines()[0])["schedule"] == "blocks:5"


def test_json_is_compact_and_key_sorted():
    for line in game().transcript.to_lines():
        obj = json.loads(line)
        assert line == json.dumps(obj, sort_keys=True, separators=(",", ":"))


def test_move_rows_carry_turn_step_player_edge():
    out = game()
    row = json.loads(out.transcript.to_lines()[1])
    assert set(row) == {"turn", "step", "player", "edge"}
    assert row["step"] == 0
    assert row["player"] == "M"
    assert row["turn"] == "0"


def test_final_line_merges_extras():
    out = game()
    tail = json.loads(out.transcript.to_lines()[-1])
    assert tail["result"] == out.result
    tr = Transcript.from_lines(out.transcript.to_lines())
    assert tr.extras == out.transcript.extras
    # witnesses survive the round trip
    if out.witness is not None:
        assert tr.witness == out.witness


def test_summary_counts():
    out = game()
    s = out.transcript.summary()
    assert s["steps"] == len(out.transcript.moves)
    assert s["makerMoves"] + s["breakerMoves"] == s["steps"]
    assert s["result"] == out.result
    if out.witness is not None:
        assert s["witnessSize"] == len(out.witness)


def test_blank_lines_are_ignored():
    lines = game().transcript.to_lines()
    padded = [lines[0], "", *lines[1:-1], "   ", lines[-1]]
    assert Transcript.from_lines(padded).to_lines() == lines


# ---------------------------------------------------------------------------
# malformed input, with the offending line number
# ---------------------------------------------------------------------------


def bad_lines(mutate):
    lines = game().transcript.to_lines()
    mutate(lines)
    return lines


def expect_error(lines, line_no, fragment):
    with pytest.raises(TranscriptError) as info:
        Transcript.from_lines(lines)
    assert info.value.line == line_no
    assert fragment in str(info.value)


def test_junk_json_reports_its_line():
    expect_error(bad_lines(lambda ls: ls.__setitem__(2, "{nope")), 3, "invalid JSON")


def test_header_validation():
    def kill_version(ls):
        h = json.loads(ls[0])
        h["version"] = 2
        ls[0] = json.dumps(h)

    expect_error(bad_lines(kill_version), 1, "version 1")

    def drop_board(ls):
        h = json.loads(ls[0])
        del h["board"]
        ls[0] = json.dumps(h)

    expect_error(bad_lines(drop_board), 1, "board")

    def bad_bias(ls):
        h = json.loads(ls[0])
        h["bias"] = 0
        ls[0] = json.dumps(h)

    expect_error(bad_lines(bad_bias), 1, "bias")


def test_move_row_validation():
    def bad_player(ls):
        row = json.loads(ls[1])
        row["player"] = "Q"
        ls[1] = json.dumps(row)

    expect_error(bad_lines(bad_player), 2, "player")

    def bad_edge(ls):
        row = json.loads(ls[2])
        row["edge"] = "nope"
        ls[2] = json.dumps(row)

    expect_error(bad_lines(bad_edge), 3, "edge")


def test_result_validation():
    def forge(ls):
        tail = json.loads(ls[-1])
        tail["result"] = "draw"
        ls[-1] = json.dumps(tail)

    lines = game().transcript.to_lines()
    forged = list(lines)
    forge(forged)
    expect_error(forged, len(lines), "result")

    expect_error([lines[0]], 1, "header and a result")

    headless = [json.dumps({"result": "maker"})] * 2
    with pytest.raises(TranscriptError):
        Transcript.from_lines(headless)
