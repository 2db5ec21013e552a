"""Transcript verification.

Two layers.  The structural replay feeds every recorded move back
through a fresh `GameState`, so turn discipline, board membership and
claim disjointness are re-checked by the same code that enforced them
live; on top of that it confirms the recorded result and witness, and
re-derives the strategy-side invariants from whatever extras the
transcript carries (tree shape, phase records, catalogue firings).
The second layer re-runs the whole game from the header configuration
and compares output byte for byte, which only works when both strategy
literals are reconstructible; transcripts of interactive play carry
specs like "human" and skip it.

Every complaint is tagged with the 1-based line it refers to, counting
the header as line 1, so failures point into the file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .boards import BoardError, left, make_edge, plain, right
from .catalogue import Catalogue, CatalogueError
from .game import (
    BicliqueGoal,
    CliqueGoal,
    IllegalMove,
    MAKER,
    verify_witness,
    witness_after_claim,
)
from .ordinals import Ordinal, OrdinalError
from .referee import run_game
from .specs import SpecError, make_strategy, parse_board, parse_goal, parse_schedule
from .transcript import GENERATOR_ID, RESULTS, Transcript, TranscriptError
from .treemaker import HausdorffTree, TreeError


@dataclass
class VerifyReport:
    """Outcome of one verification run."""

    path: str | None = None
    checks: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    resimulated: bool = False
    resim_note: str | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def passed(self, message: str) -> None:
        self.checks.append(message)

    def fail(self, line: int | None, message: str) -> None:
        if line is None:
            self.violations.append(message)
        else:
            self.violations.append(f"line {line}: {message}")

    def render(self) -> str:
        lines = []
        name = self.path or "<transcript>"
        for c in self.checks:
            lines.append(f"ok   {c}")
        for v in self.violations:
            lines.append(f"FAIL {v}")
        verdict = (
            "all invariants hold" if self.ok else f"{len(self.violations)} violation(s)"
        )
        lines.append(f"{name}: {verdict}")
        return "\n".join(lines)


def verify_file(
    path: str, *, horizon: Ordinal | None = None, resimulate: bool = True
) -> VerifyReport:
    report = VerifyReport(path=path)
    try:
        transcript = Transcript.read(path)
    except TranscriptError as exc:
        report.fail(exc.line, str(exc).split(": ", 1)[-1])
        return report
    except OSError as exc:
        report.fail(None, f"cannot read {path}: {exc}")
        return report
    _verify_into(report, transcript, horizon=horizon, resimulate=resimulate)
    return report


def verify_transcript(
    transcript: Transcript,
    *,
    horizon: Ordinal | None = None,
    resimulate: bool = True,
) -> VerifyReport:
    report = VerifyReport()
    _verify_into(report, transcript, horizon=horizon, resimulate=resimulate)
    return report


def _verify_into(
    report: VerifyReport,
    tr: Transcript,
    *,
    horizon: Ordinal | None,
    resimulate: bool,
) -> None:
    replayed = _replay(report, tr, horizon)
    if replayed is not None:
        state, goal, won_at = replayed
        _check_result(report, tr, state, goal, won_at)
        if "tree" in tr.extras:
            _check_tree(report, tr, state)
        if "phases" in tr.extras:
            _check_phases(report, tr, state)
        if "firings" in tr.extras:
            _check_firings(report, tr, state)
    if resimulate:
        _resimulate(report, tr, horizon)


# -- structural replay -------------------------------------------------------


def _final_line(tr: Transcript) -> int:
    return len(tr.moves) + 2


def _replay(report: VerifyReport, tr: Transcript, horizon: Ordinal | None):
    """Feed every move through a fresh GameState; None when that fails."""
    try:
        board = parse_board(tr.board, horizon=horizon)
        goal = parse_goal(tr.goal)
        schedule = parse_schedule(tr.schedule) if tr.schedule else None
    except SpecError as exc:
        report.fail(1, f"bad configuration: {exc}")
        return None

    from .game import GameState, check_goal_fits_board

    try:
        check_goal_fits_board(goal, board)
        state = GameState(
            board,
            bias=tr.bias,
            breaker_first=tr.breaker_first,
            schedule=schedule,
        )
    except (ValueError, BoardError) as exc:
        report.fail(1, f"bad configuration: {exc}")
        return None

    won_at: int | None = None
    for i, row in enumerate(tr.moves):
        line = i + 2
        try:
            expected_turn = str(state.next_turn_ordinal(row.player))
            move = state.claim(row.player, row.edge)
        except IllegalMove as exc:
            report.fail(line, f"illegal move on replay: {exc}")
            return None
        if row.turn != expected_turn:
            report.fail(
                line,
                f"turn ordinal {row.turn!r} does not match the "
                f"discipline, expected {expected_turn!r}",
            )
        if row.step != move.step:
            report.fail(line, f"step {row.step} out of order, expected {move.step}")
        if won_at is None:
            w = witness_after_claim(state, goal, row.edge, row.player)
            if w is not None:
                won_at = line
    report.passed(f"replayed {len(tr.moves)} moves under the turn discipline")

    last_move_line = len(tr.moves) + 1
    if won_at is not None and won_at != last_move_line:
        report.fail(
            won_at,
            "the goal was already complete here, but play continued",
        )
    return state, goal, won_at


def _check_result(report: VerifyReport, tr: Transcript, state, goal, won_at) -> None:
    line = _final_line(tr)
    if tr.result not in RESULTS:
        report.fail(line, f"unknown result {tr.result!r}")
        return

    if tr.result == "maker":
        if tr.witness is None:
            report.fail(line, "result is maker but no witness is recorded")
            return
        if not verify_witness(state, goal, tr.witness):
            report.fail(line, "recorded witness is not a Maker-claimed goal copy")
            return
        if won_at is None:
            report.fail(line, "result is maker but the goal never completed")
            return
        if isinstance(goal, (CliqueGoal, BicliqueGoal)):
            if tr.moves and tr.moves[-1].player != MAKER:
                report.fail(line, "a maker win must end on a Maker claim")
        report.passed("recorded witness holds in the final Maker graph")
        return

    if tr.witness is not None:
        report.fail(line, f"result {tr.result!r} must not carry a witness")
    if won_at is not None:
        report.fail(
            won_at,
            f"result is {tr.result!r} but Maker completed the goal here",
        )
    else:
        report.passed(f"no premature goal copy behind result {tr.result!r}")


# -- strategy extras ---------------------------------------------------------


def _check_tree(report: VerifyReport, tr: Transcript, state) -> None:
    line = _final_line(tr)
    data = tr.extras["tree"]
    try:
        tree = _tree_from_json(data)
        tree.validate()
    except (TreeError, OrdinalError, KeyError, TypeError) as exc:
        report.fail(line, f"tree extras do not form a valid tree: {exc}")
        return
    for v in tree.nodes():
        for w in tree.chain_of(v):
            if make_edge(w, v) not in state.maker_edges:
                report.fail(
                    line,
                    f"tree claims {w}-{v} is a Maker edge, but it was never claimed",
                )
                return
    report.passed(
        f"tree extras check out ({len(tree)} nodes, every chain pair Maker-claimed)"
    )


def _tree_from_json(data: Any) -> HausdorffTree:
    tree = HausdorffTree(
        int(data["arityBound"]), int(data.get("limitMultiplicity", 1))
    )
    for node in data["nodes"]:
        v = plain(Ordinal.parse(node["label"]))
        if node["parent"] is None:
            if v != tree.root:
                raise TreeError(f"parentless node {v} is not the root")
            continue
        tree.add(v, plain(Ordinal.parse(node["parent"])))
    return tree


def _check_phases(report: VerifyReport, tr: Transcript, state) -> None:
    line = _final_line(tr)
    phases = tr.extras["phases"]
    blocked_now = set()
    for e in state.breaker_edges:
        for v in e:
            if v.side == "L":
                blocked_now.add(str(v.label))
    previous: set[str] = set()
    for pos, ph in enumerate(phases):
        try:
            if ph["index"] != pos:
                report.fail(line, f"phase {pos} records index {ph['index']}")
                return
            if ph["center"]["side"] != "R":
                report.fail(line, f"phase {pos} center is not a right vertex")
                return
            centre = right(Ordinal.parse(ph["center"]["label"]))
            claimed = [Ordinal.parse(s) for s in ph["claimed"]]
            stolen = set(ph["stolen"])
        except (KeyError, TypeError, OrdinalError) as exc:
            report.fail(line, f"phase {pos} is malformed: {exc}")
            return
        if len(set(claimed)) != len(claimed):
            report.fail(line, f"phase {pos} claims a left vertex twice")
            return
        if {str(c) for c in claimed} & stolen:
            report.fail(line, f"phase {pos} claims into its own stolen set")
            return
        if not previous <= stolen:
            report.fail(line, f"phase {pos} forgot previously stolen vertices")
            return
        if not stolen <= blocked_now:
            report.fail(
                line,
                f"phase {pos} lists stolen vertices Breaker never touched",
            )
            return
        for lab in claimed:
            if make_edge(left(lab), centre) not in state.maker_edges:
                report.fail(
                    line,
                    f"phase {pos} lists L{lab}-{centre} but Maker never claimed it",
                )
                return
        previous = stolen
    report.passed(f"phase extras check out ({len(phases)} phases)")


def _check_firings(report: VerifyReport, tr: Transcript, state) -> None:
    line = _final_line(tr)
    try:
        cat = Catalogue.from_json(tr.extras["catalogue"])
    except (KeyError, CatalogueError) as exc:
        report.fail(line, f"catalogue extras are malformed: {exc}")
        return
    for pos, f in enumerate(tr.extras["firings"]):
        try:
            alpha, gamma, idx = int(f["alpha"]), int(f["gamma"]), int(f["setIndex"])
            edge = f["edge"]
        except (KeyError, TypeError, ValueError) as exc:
            report.fail(line, f"firing {pos} is malformed: {exc}")
            return
        if not 0 <= gamma < cat.slot_count:
            report.fail(line, f"firing {pos}: rank {gamma} outside the slot map")
            return
        if cat.slot(alpha, gamma) != idx:
            report.fail(
                line,
                f"firing {pos}: slot map sends ({alpha},{gamma}) to "
                f"{cat.slot(alpha, gamma)}, not {idx}",
            )
            return
        if edge is None:
            continue
        try:
            ends = [Ordinal.parse(s) for s in edge]
            labels = {o.as_int() for o in ends}
            played = make_edge(plain(ends[0]), plain(ends[1]))
        except (OrdinalError, ValueError, BoardError) as exc:
            report.fail(line, f"firing {pos} edge is malformed: {exc}")
            return
        if played not in state.breaker_edges:
            report.fail(line, f"firing {pos} edge {played} was never claimed")
            return
        if alpha not in labels or not labels & cat.sets[idx]:
            report.fail(
                line,
                f"firing {pos} reply {sorted(labels)} misses the target set",
            )
            return
    report.passed(
        f"catalogue extras check out ({len(tr.extras['firings'])} firings)"
    )


# -- re-simulation ------------------------------------------------------------


def _resimulate(report: VerifyReport, tr: Transcript, horizon: Ordinal | None) -> None:
    if tr.generator != GENERATOR_ID:
        report.resim_note = (
            f"re-simulation skipped: generator {tr.generator!r} is not ours"
        )
        return
    try:
        board = parse_board(tr.board, horizon=horizon)
        goal = parse_goal(tr.goal)
        schedule = parse_schedule(tr.schedule) if tr.schedule else None
        kw = dict(board=board, goal=goal, bias=tr.bias, breaker_first=tr.breaker_first)
        maker = make_strategy(tr.strategies["maker"], **kw)
        breaker = make_strategy(tr.strategies["breaker"], **kw)
    except (SpecError, KeyError) as exc:
        report.resim_note = f"re-simulation skipped: {exc}"
        return

    n_maker = sum(1 for m in tr.moves if m.player == MAKER)
    budget = n_maker if tr.result == "budget" else n_maker + 1
    outcome = run_game(
        board,
        goal,
        maker,
        breaker,
        budget=max(budget, 1),
        seed=tr.seed,
        bias=tr.bias,
        breaker_first=tr.breaker_first,
        schedule=schedule,
    )
    report.resimulated = True
    fresh = outcome.transcript.to_lines()
    original = tr.to_lines()
    if fresh == original:
        report.passed("re-simulation reproduced the transcript byte for byte")
        return
    for i, (a, b) in enumerate(zip(original, fresh)):
        if a != b:
            report.fail(i + 1, "re-simulation diverged here")
            return
    report.fail(
        min(len(original), len(fresh)) + 1,
        f"re-simulation produced {len(fresh)} lines, transcript has {len(original)}",
    )
