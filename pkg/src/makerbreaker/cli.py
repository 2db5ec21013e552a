"""Command line front end.

Subcommands: run, sweep, verify, solve, colour, ramsey-check, serve.
Exit codes: 0 for success, 1 when an invariant or verification check
fails, 2 for configuration problems (bad flags, bad literals, boards
out of range).

Every value a flag accepts can instead come from a flat config file
(`key = value` per line, # comments, same literal grammar); flags win
over file entries so a sweep file can be partially overridden.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .boards import BoardError
from .catalogue import (
    Catalogue,
    CatalogueError,
    Colouring,
    build_avoiding_colouring,
)
from .game import IllegalMove, InvariantViolation
from .oracle import (
    TooLarge,
    filter_intersect_finder,
    mono_biclique_scan,
    solve_minimax,
)
from .ordinals import Ordinal, OrdinalError
from .referee import run_game
from .specs import SpecError, make_strategy, parse_board, parse_goal, parse_schedule
from .verify import verify_file


class ConfigError(ValueError):
    pass


# -- config file and flag merging ---------------------------------------------


def load_config(path: str) -> dict[str, str]:
    """Flat `key = value` file; same keys as the long flag names."""
    out: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _parse_bool(text: str, key: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key} wants a boolean, got {text!r}")


class Settings:
    """Flag values backed by an optional config file."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key: str, default=None, kind=str):
        flag = getattr(self.args, key.replace("-", "_"), None)
        if flag is not None:
            return flag
        if key in self.config:
            raw = self.config[key]
            if kind is bool:
                return _parse_bool(raw, key)
            try:
                return kind(raw)
            except ValueError:
                raise ConfigError(f"{key} wants {kind.__name__}, got {raw!r}") from None
        return default

    def require(self, key: str, kind=str):
        value = self.get(key, None, kind)
        if value is None:
            raise ConfigError(f"missing required setting --{key}")
        return value


def _parse_horizon(text: str | None) -> Ordinal | None:
    if text is None:
        return None
    try:
        return Ordinal.parse(text)
    except OrdinalError as exc:
        raise ConfigError(f"--horizon: {exc}") from None


def _game_setup(settings: Settings):
    horizon = _parse_horizon(settings.get("horizon"))
    board = parse_board(settings.require("board"), horizon=horizon)
    goal = parse_goal(settings.require("goal"))
    schedule_lit = settings.get("schedule")
    schedule = parse_schedule(schedule_lit) if schedule_lit else None
    bias = settings.get("bias", 1, int)
    breaker_first = settings.get("breaker-first", False, bool)
    return board, goal, schedule, bias, breaker_first


# -- run -----------------------------------------------------------------------


def cmd_run(settings: Settings) -> int:
    board, goal, schedule, bias, breaker_first = _game_setup(settings)
    kw = dict(board=board, goal=goal, bias=bias, breaker_first=breaker_first)
    maker = make_strategy(settings.require("maker"), **kw)
    breaker = make_strategy(settings.require("breaker"), **kw)
    outcome = run_game(
        board,
        goal,
        maker,
        breaker,
        budget=settings.get("budget", 1000, int),
        seed=settings.get("seed", 0, int),
        bias=bias,
        breaker_first=breaker_first,
        schedule=schedule,
    )
    out = settings.get("out")
    if out:
        outcome.transcript.write(out)
    _print_summary(outcome, out)
    return 0


def _print_summary(outcome, out_path: str | None) -> None:
    s = outcome.summary
    print(f"result:   {outcome.result} ({outcome.reason})")
    print(f"moves:    {s['makerMoves']} Maker / {s['breakerMoves']} Breaker")
    if outcome.witness is not None:
        print(f"witness:  {_show_witness(outcome.witness)}")
    diags = outcome.transcript.extras.get("diagnostics", {})
    for role in ("maker", "breaker"):
        info = diags.get(role)
        if info:
            pairs = ", ".join(f"{k}={v}" for k, v in sorted(info.items()))
            print(f"{role}:    {pairs}"[: 4000])
    if out_path:
        print(f"transcript written to {out_path}")


def _show_witness(witness) -> str:
    if isinstance(witness, tuple):
        lefts, rights = witness
        return "{" + ",".join(map(str, lefts)) + "} x {" + ",".join(map(str, rights)) + "}"
    return "{" + ",".join(map(str, witness)) + "}"


# -- sweep ---------------------------------------------------------------------

SWEEP_COLUMNS = [
    "index",
    "board",
    "goal",
    "maker",
    "breaker",
    "seed",
    "budget",
    "bias",
    "breakerFirst",
    "result",
    "reason",
    "makerMoves",
    "breakerMoves",
    "witnessSize",
    "longestChain",
    "treeSize",
    "phases",
    "poolExhaustions",
]


def _int_list(text: str, key: str) -> list[int]:
    """Comma list of ints where an item may be an inclusive a..b range."""
    items: list[int] = []
    if not text.strip():
        return items
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                items.extend(range(int(lo), int(hi) + 1))
            else:
                items.append(int(part))
        except ValueError:
            raise ConfigError(f"{key}: bad integer item {part!r}") from None
    return items


def _str_list(text: str) -> list[str]:
    if not text.strip():
        return []
    depth, current, out = 0, [], []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(current).strip())
            current = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        current.append(ch)
    out.append("".join(current).strip())
    return [s for s in out if s]


def cmd_sweep(settings: Settings) -> int:
    horizon = _parse_horizon(settings.get("horizon"))
    board_lit = settings.require("board")
    goal_lit = settings.require("goal")
    schedule_lit = settings.get("schedule")
    bias = settings.get("bias", 1, int)
    breaker_first = settings.get("breaker-first", False, bool)
    makers = _str_list(settings.require("makers"))
    breakers = _str_list(settings.require("breakers"))
    seeds = _int_list(settings.get("seeds", "0"), "--seeds")
    budgets = _int_list(settings.get("budgets", "1000"), "--budgets")
    jobs = settings.get("jobs", 1, int)

    grid = [
        (mk, bk, seed, budget)
        for mk in makers
        for bk in breakers
        for seed in seeds
        for budget in budgets
    ]

    def one(item: tuple[int, tuple[str, str, int, int]]) -> list:
        index, (mk, bk, seed, budget) = item
        board = parse_board(board_lit, horizon=horizon)
        goal = parse_goal(goal_lit)
        schedule = parse_schedule(schedule_lit) if schedule_lit else None
        kw = dict(board=board, goal=goal, bias=bias, breaker_first=breaker_first)
        maker = make_strategy(mk, **kw)
        breaker = make_strategy(bk, **kw)
        outcome = run_game(
            board, goal, maker, breaker,
            budget=budget, seed=seed, bias=bias,
            breaker_first=breaker_first, schedule=schedule,
        )
        diags = outcome.transcript.extras.get("diagnostics", {})
        merged = {**diags.get("breaker", {}), **diags.get("maker", {})}
        s = outcome.summary
        return [
            index, board_lit, goal_lit, maker.spec, breaker.spec, seed, budget,
            bias, breaker_first, outcome.result, outcome.reason,
            s["makerMoves"], s["breakerMoves"], s.get("witnessSize", ""),
            merged.get("longestChain", ""), merged.get("treeSize", ""),
            merged.get("phases", ""), merged.get("poolExhaustions", ""),
        ]

    if jobs > 1 and grid:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, enumerate(grid)))
    else:
        rows = [one(item) for item in enumerate(grid)]
    rows.sort(key=lambda r: r[0])

    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(SWEEP_COLUMNS)
    writer.writerows(rows)
    text = buffer.getvalue()
    out = settings.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"{len(rows)} rows written to {out}")
    else:
        sys.stdout.write(text)
    return 0


# -- verify ---------------------------------------------------------------------


def cmd_verify(settings: Settings) -> int:
    horizon = _parse_horizon(settings.get("horizon"))
    failed = 0
    for path in settings.args.transcripts:
        if not os.path.exists(path):
            raise ConfigError(f"no such transcript: {path}")
        report = verify_file(
            path, horizon=horizon, resimulate=not settings.args.no_resim
        )
        print(report.render())
        if report.resim_note:
            print(f"note {report.resim_note}")
        failed += not report.ok
    return 1 if failed else 0


# -- solve -----------------------------------------------------------------------


def cmd_solve(settings: Settings) -> int:
    horizon = _parse_horizon(settings.get("horizon"))
    board = parse_board(settings.require("board"), horizon=horizon)
    goal = parse_goal(settings.require("goal"))
    result = solve_minimax(board, goal)
    label = "MakerWins" if result.winner == "maker" else "BreakerWins"
    print(label)
    if settings.args.play or settings.get("out"):
        kw = dict(board=board, goal=goal, bias=1, breaker_first=False)
        outcome = run_game(
            board, goal,
            make_strategy("oracle", **kw), make_strategy("oracle", **kw),
            budget=(board.edge_count() or 0) + 1, seed=0,
        )
        for line in outcome.transcript.to_lines():
            print(line)
        out = settings.get("out")
        if out:
            outcome.transcript.write(out)
    return 0


# -- colour ------------------------------------------------------------------------


def _load_catalogue(settings: Settings) -> Catalogue:
    sets_json = settings.get("sets")
    cat_path = settings.get("catalogue")
    k = settings.get("k", None, int)
    m = settings.get("m", None, int)
    given = sum(x is not None for x in (sets_json, cat_path, k))
    if given != 1:
        raise ConfigError("give exactly one of --sets, --catalogue, or --k with --m")
    if sets_json is not None:
        try:
            family = json.loads(sets_json)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--sets: {exc}") from None
        return Catalogue(family)
    if cat_path is not None:
        try:
            with open(cat_path, "r", encoding="utf-8") as fh:
                return Catalogue.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"--catalogue: {exc}") from None
    if m is None:
        raise ConfigError("--k needs --m (all k-subsets of the first m labels)")
    return Catalogue.all_k_subsets(k, m)


def cmd_colour(settings: Settings) -> int:
    catalogue = _load_catalogue(settings)
    top = max((max(s) for s in catalogue.sets), default=-1)
    left = settings.get("left", top + 1, int)
    right = settings.require("right", int)
    colouring = build_avoiding_colouring(catalogue, left, right)
    bad = colouring.constraint_violations(catalogue)
    if bad:
        raise InvariantViolation(f"built colouring violates constraints at {bad[:4]}")
    out = settings.get("out")
    if out:
        colouring.to_csv(out)
        print(f"colouring of {left}x{right} written to {out}")
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["u", "v", "colour"])
        for i in range(left):
            for j in range(right):
                writer.writerow([i, j, colouring.colour(i, j)])
    return 0


# -- ramsey-check --------------------------------------------------------------------


def cmd_ramsey_check(settings: Settings) -> int:
    path = settings.require("colouring")
    try:
        grid = Colouring.from_csv(path)
    except (OSError, CatalogueError) as exc:
        raise ConfigError(f"--colouring: {exc}") from None
    a = settings.get("a", 2, int)
    b = settings.get("b", 2, int)
    found = filter_intersect_finder(grid, a, b)
    if found:
        colour, lefts, rights = found
        print(f"finder:    {colour} K_{{{a},{b}}} on {lefts} x {rights}")
    else:
        print("finder:    none")
    if grid.left_size * grid.right_size <= 4096:
        scan = mono_biclique_scan(grid, a, b)
        if scan:
            colour, lefts, rights = scan
            print(f"exhaustive: {colour} K_{{{a},{b}}} on {lefts} x {rights}")
        else:
            print("exhaustive: none")
        if found and not scan:
            raise InvariantViolation("finder returned a witness the scan refutes")
    else:
        print("exhaustive: skipped (grid too large)")
    return 0


# -- serve ------------------------------------------------------------------------------


def cmd_serve(settings: Settings) -> int:
    import uvicorn

    from .service import create_app

    host = os.environ.get("MBGAME_BIND", "127.0.0.1")
    port = settings.get("port", 8128, int)
    app = create_app(transcript_dir=settings.get("transcripts"))
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


# -- wiring -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbgame",
        description="Maker-Breaker games on clique and biclique boards.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key = value file; flags override it")
        p.add_argument("--horizon", help="ordinal literal bounding lazy boards")

    p = sub.add_parser("run", help="play one game and print a summary")
    common(p)
    p.add_argument("--board", help="board literal, e.g. K12, Kw, K8,8")
    p.add_argument("--goal", help="clique:N, biclique:A,B, or club:ORD")
    p.add_argument("--maker", help="Maker strategy literal")
    p.add_argument("--breaker", help="Breaker strategy literal")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="Maker moves allowed (default 1000)")
    p.add_argument("--bias", type=int, help="Breaker claims per Maker claim")
    p.add_argument("--breaker-first", action="store_const", const=True)
    p.add_argument("--schedule", help="blocks:N to play limit-length blocks")
    p.add_argument("--out", help="write the transcript here")

    p = sub.add_parser("sweep", help="cross-product of runs, one CSV row each")
    common(p)
    p.add_argument("--board")
    p.add_argument("--goal")
    p.add_argument("--makers", help="comma list of Maker strategy literals")
    p.add_argument("--breakers", help="comma list of Breaker strategy literals")
    p.add_argument("--seeds", help="comma list of ints, ranges like 0..9 allowed")
    p.add_argument("--budgets", help="comma list of ints")
    p.add_argument("--bias", type=int)
    p.add_argument("--breaker-first", action="store_const", const=True)
    p.add_argument("--schedule")
    p.add_argument("--jobs", type=int, help="parallel games (rows stay in grid order)")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("verify", help="replay transcripts and re-check invariants")
    common(p)
    p.add_argument("transcripts", nargs="+", help="transcript files to verify")
    p.add_argument(
        "--no-resim",
        action="store_true",
        help="skip the byte-for-byte re-simulation pass",
    )

    p = sub.add_parser("solve", help="exact minimax winner on tiny boards")
    common(p)
    p.add_argument("--board")
    p.add_argument("--goal")
    p.add_argument("--play", action="store_true", help="print an optimal-play transcript")
    p.add_argument("--out", help="write the optimal-play transcript here")

    p = sub.add_parser("colour", help="build a constraint-avoiding 2-colouring")
    common(p)
    p.add_argument("--sets", help="JSON list of label sets, e.g. [[0,1],[0,2]]")
    p.add_argument("--catalogue", help="JSON file with a catalogue object")
    p.add_argument("--k", type=int, help="with --m: all k-subsets of 0..m-1")
    p.add_argument("--m", type=int)
    p.add_argument("--left", type=int, help="left side size (default: cover the sets)")
    p.add_argument("--right", type=int, help="right side size")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("ramsey-check", help="monochromatic biclique search on a CSV grid")
    common(p)
    p.add_argument("--colouring", help="CSV file with u,v,colour rows")
    p.add_argument("-a", type=int, help="left size of the target (default 2)")
    p.add_argument("-b", type=int, help="right size of the target (default 2)")

    p = sub.add_parser("serve", help="run the HTTP session service")
    common(p)
    p.add_argument("--port", type=int, help="listen port (default 8128)")
    p.add_argument("--transcripts", help="directory for per-session transcripts")

    return parser


COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "solve": cmd_solve,
    "colour": cmd_colour,
    "ramsey-check": cmd_ramsey_check,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = Settings(args)
        return COMMANDS[args.command](settings)
    except (
        ConfigError,
        SpecError,
        OrdinalError,
        BoardError,
        TooLarge,
        CatalogueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, IllegalMove) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
