"""Command-line interface: ``imark <command> ...``.

Exit codes: 0 success, 1 a verification found a mismatch, 2 usage error,
3 resource limit or overflow. Data goes to stdout, progress to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TextIO

from . import analysis
from .closed_form import sg_closed
from .errors import (
    CorruptFile,
    InvalidSpec,
    Overflow,
    PreconditionViolated,
    ResourceLimit,
    SpecMismatch,
)
from .game import (
    GameSpec,
    PeriodicOutcome,
    SOLVED_SG,
    Theorem1,
    Theorem2,
    Theorem3,
    classify_family,
    options,
    spec_for,
    validate_spec,
)
from .oracle import DEFAULT_MEM_LIMIT, load_or_build, load_table, read_header, sg
from .sums import Move, SgSource, SumPosition, evaluate, winning_move

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

# games exercised by `verify --all-families`
DEFAULT_FAMILIES = (
    [Theorem1(t, d) for t, d in [(2, 3), (3, 4), (3, 7), (4, 5), (5, 6), (5, 11)]]
    + [Theorem2(k) for k in (3, 7, 11, 15)]
    + [Theorem3(k) for k in (5, 9, 13, 17)]
    + [PeriodicOutcome(t, d) for t, d in [(2, 2), (3, 2), (3, 3), (4, 6), (5, 7)]]
)


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Integer literal, also accepting 10^6, 2^31-1 and 1e6."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(-?\d+)\^(\d+)([+-]\d+)?", s)
    if m:
        return int(m[1]) ** int(m[2]) + int(m[3] or 0)
    m = re.fullmatch(r"(\d+)[eE](\d+)", s)
    if m:
        return int(m[1]) * 10 ** int(m[2])
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_nonneg(text: str) -> int:
    v = parse_int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


def parse_list(text: str) -> list[int]:
    try:
        return [parse_int(x) for x in text.split(",") if x.strip()]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def parse_game(text: str) -> tuple[GameSpec, int]:
    """'S;D;n', e.g. '1;2,3;10'."""
    parts = text.split(";")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 'S;D;n', got {text!r}")
    try:
        spec = validate_spec(parse_list(parts[0]), parse_list(parts[1]))
    except InvalidSpec as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return spec, parse_nonneg(parts[2])


def get_spec(args) -> GameSpec:
    if args.sub is None or args.div is None:
        raise UsageError("--sub and --div are required")
    try:
        return validate_spec(args.sub, args.div)
    except InvalidSpec as exc:
        raise UsageError(str(exc))


def cache_path(args, spec: GameSpec) -> Optional[str]:
    if getattr(args, "cache", None):
        return args.cache
    root = os.environ.get("IMARK_CACHE_DIR")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    name = "S{}_D{}.imrk".format("-".join(map(str, spec.S)), "-".join(map(str, spec.D)))
    return os.path.join(root, name)


def get_table(args, spec: GameSpec, N: int):
    table, how = load_or_build(spec, N, cache_path(args, spec), args.mem_limit)
    print(f"table {spec} N={table.N}: {how}", file=sys.stderr)
    return table


# -- commands ------------------------------------------------------------------


def cmd_sg(args, out: TextIO) -> int:
    spec = get_spec(args)
    if args.n is None:
        raise UsageError("-n is required")
    value = None if args.force_oracle else sg_closed(spec, args.n)
    source = "closed-form"
    if value is None:
        value, source = sg(get_table(args, spec, args.n), args.n), "oracle"
    print(value, file=out)
    print(f"source: {source}", file=sys.stderr)
    return EXIT_OK


def cmd_seq(args, out: TextIO) -> int:
    spec = get_spec(args)
    if args.to is None:
        raise UsageError("--to is required")
    table = get_table(args, spec, max(args.to, 0))
    lines = analysis.export_sequence(table, args.start, args.to, args.format)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return EXIT_OK


def cmd_gaps(args, out: TextIO) -> int:
    spec = get_spec(args)
    N = args.to if args.to is not None else args.n
    if N is None:
        raise UsageError("-n/--to is required")
    report = analysis.gap_report(get_table(args, spec, N))
    print(report.to_json(), file=out)
    return EXIT_OK


def _verify_jobs(args) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    N = args.n if args.n is not None else 10**5
    specs = []
    if args.all_families:
        specs = [spec_for(tag) for tag in DEFAULT_FAMILIES] + [analysis.MARK_123]
    elif args.sub is not None or args.div is not None:
        specs = [get_spec(args)]
    else:
        raise UsageError("give --sub/--div or --all-families")

    jobs = []
    for spec in specs:
        tag = classify_family(spec)
        if isinstance(tag, SOLVED_SG + (PeriodicOutcome,)):
            def job(spec=spec, tag=tag):
                bad = analysis.equivalence_check(spec, N, mem_limit=args.mem_limit)
                what = "outcomes" if isinstance(tag, PeriodicOutcome) else "SG values"
                if bad is None:
                    return True, f"PASS equivalence {spec} ({what}) N={N}"
                return False, f"FAIL equivalence {spec} ({what}) N={N}: first mismatch at n={bad}"
            jobs.append(job)
        if spec == analysis.MARK_123:
            def gaps_job(spec=spec):
                from .oracle import build_table
                table = build_table(spec, N, args.mem_limit)
                res = analysis.verify_gap_theorems(table)
                lem = analysis.verify_lemma_5mod6(table)
                lines, ok = [], res.passed and lem.passed
                for c in res.checks:
                    status = "PASS" if c.passed else "FAIL"
                    extra = "" if c.passed else f", counterexample n={c.counterexample}"
                    lines.append(
                        f"{status} window value={c.value} width={c.window} N={N}"
                        f" (tightest observed {c.tightest}{extra})"
                    )
                status = "PASS" if lem.passed else "FAIL"
                extra = "" if lem.passed else f", counterexample m={lem.counterexample}"
                lines.append(
                    f"{status} lemma m=5 (mod 6) N={N} ({lem.nonvacuous} non-vacuous cases{extra})"
                )
                return ok, "\n".join(lines)
            jobs.append(gaps_job)
        if not isinstance(tag, SOLVED_SG + (PeriodicOutcome,)) and spec != analysis.MARK_123:
            def self_job(spec=spec):
                from .oracle import build_table, first_inconsistency, spot_check
                table = build_table(spec, N, args.mem_limit)
                bad = first_inconsistency(table)
                if bad is None:
                    bad = spot_check(table)
                if bad is None:
                    return True, f"PASS self-consistency {spec} N={N}"
                return False, f"FAIL self-consistency {spec} N={N}: n={bad}"
            jobs.append(self_job)
    return jobs


def cmd_verify(args, out: TextIO) -> int:
    jobs = _verify_jobs(args)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda job: job(), jobs))
    ok = True
    for passed, text in results:
        ok &= passed
        print(text, file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_conjecture(args, out: TextIO) -> int:
    spec = get_spec(args)
    N = args.to if args.to is not None else args.n
    if N is None:
        raise UsageError("-n/--to is required")
    table = get_table(args, spec, N)
    report = analysis.check_conjecture(spec, table)
    print(report.to_json(), file=out)
    if not report.holds:
        print(
            f"CONJECTURE VIOLATED for s={report.s}, d={report.d}: "
            f"{report.violation_count} position(s), first {report.violations[0]}",
            file=sys.stderr,
        )
        return EXIT_MISMATCH
    return EXIT_OK


def _games(args) -> SumPosition:
    if args.game:
        return SumPosition(tuple(args.game))
    spec = get_spec(args)
    if args.n is None:
        raise UsageError("give -n or one or more --game 'S;D;n'")
    return SumPosition(((spec, args.n),))


def _source(args) -> SgSource:
    return SgSource(mem_limit=args.mem_limit, force_oracle=args.force_oracle)


def describe_move(pos: SumPosition, move: Move) -> str:
    n = pos.components[move.index][1]
    if len(pos.components) == 1:
        return f"{n} -> {move.target}"
    return f"component {move.index}: {n} -> {move.target}"


def cmd_sum(args, out: TextIO) -> int:
    pos = _games(args)
    source = _source(args)
    value, result = evaluate(pos, source)
    print(f"sg: {value}", file=out)
    print(f"outcome: {result}", file=out)
    move = winning_move(pos, source)
    print(f"winning move: {describe_move(pos, move) if move else 'none'}", file=out)
    return EXIT_OK


def _read_move(pos: SumPosition, line: str) -> Optional[Move]:
    parts = line.replace(":", " ").split()
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        return None
    if len(nums) == 1 and len(pos.components) == 1:
        nums = [0] + nums
    if len(nums) != 2:
        return None
    move = Move(*nums)
    return move if move in pos.moves() else None


def cmd_play(args, out: TextIO, inp: TextIO = None) -> int:
    inp = inp or sys.stdin
    pos = _games(args)
    source = _source(args)
    engine_turn = args.first == "engine"
    say = lambda text: print(text, file=out, flush=True)
    while True:
        piles = ", ".join(str(n) for n in pos.piles)
        say(f"position: {piles}")
        moves = pos.moves()
        mover = "engine" if engine_turn else "you"
        if not moves:
            winner = "you" if engine_turn else "engine"
            say(f"{mover} cannot move; {winner} made the last move and win"
                + ("s" if winner == "engine" else ""))
            return EXIT_OK
        if engine_turn:
            move = winning_move(pos, source) or moves[0]
            say(f"engine plays {describe_move(pos, move)}")
        else:
            for i, (spec, n) in enumerate(pos.components):
                label = "" if len(pos.components) == 1 else f"component {i} "
                say(f"{label}options from {n}: {' '.join(map(str, options(spec, n)))}")
            while True:
                prompt = "your move (target pile): " if len(pos.components) == 1 else "your move (component target): "
                out.write(prompt)
                out.flush()
                line = inp.readline()
                if not line:
                    say("\ninput closed; game abandoned")
                    return EXIT_OK
                if line.strip().lower() in ("q", "quit"):
                    say("game abandoned")
                    return EXIT_OK
                move = _read_move(pos, line)
                if move is not None:
                    break
                say("not a legal move, try again")
        pos = pos.after(move)
        engine_turn = not engine_turn


def cmd_cache(args, out: TextIO) -> int:
    path = args.cache or (cache_path(args, get_spec(args)) if args.sub else None)
    if path is None:
        raise UsageError("--cache PATH (or IMARK_CACHE_DIR with --sub/--div) is required")
    if args.sub is not None or args.div is not None:
        spec = get_spec(args)
        N = args.to if args.to is not None else args.n
        if N is None:
            raise UsageError("-n/--to is required when building a cache")
        table, how = load_or_build(spec, N, path, args.mem_limit)
    else:
        table, how = load_table(path, mem_limit=args.mem_limit), "cache"
    info = {"path": path, "spec": table.spec.to_dict(), "N": table.N,
            "bits_per_value": table.bits, "bytes": table.nbytes, "status": how}
    print(json.dumps(info), file=out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sub", type=parse_list, help="subtraction set, e.g. 1,2,3")
    common.add_argument("--div", type=parse_list, help="division set, e.g. 2,3")
    common.add_argument("-n", type=parse_nonneg, help="pile size / scan limit")
    common.add_argument("--to", type=parse_nonneg, help="last position")
    common.add_argument("--from", dest="start", type=parse_nonneg, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache", help="SG table cache file")
    common.add_argument("--mem-limit", type=parse_nonneg, default=DEFAULT_MEM_LIMIT,
                        help="memory budget for tables, bytes")
    common.add_argument("--force-oracle", action="store_true",
                        help="use the DP table even when a closed form exists")

    p = argparse.ArgumentParser(prog="imark", description="Sprague-Grundy tools for i-Mark(S, D).")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("sg", parents=[common], help="SG value of one pile")
    s = sub.add_parser("seq", parents=[common], help="export the SG sequence")
    s.add_argument("--out", help="write to file instead of stdout")
    sub.add_parser("gaps", parents=[common], help="gap report per SG value (JSON)")
    s = sub.add_parser("verify", parents=[common], help="oracle checks of the solved families and window theorems")
    s.add_argument("--all-families", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    sub.add_parser("conjecture", parents=[common], help="check SG-2 positions of i-Mark({s},{d})")
    s = sub.add_parser("sum", parents=[common], help="evaluate a sum of games")
    s.add_argument("--game", action="append", type=parse_game, help="'S;D;n', repeatable")
    s = sub.add_parser("play", parents=[common], help="play against the engine")
    s.add_argument("--game", action="append", type=parse_game, help="'S;D;n', repeatable")
    s.add_argument("--first", choices=("engine", "human"), default="engine")
    sub.add_parser("cache", parents=[common], help="build, extend or inspect a table cache")
    return p


COMMANDS = {
    "sg": cmd_sg,
    "seq": cmd_seq,
    "gaps": cmd_gaps,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
    "sum": cmd_sum,
    "play": cmd_play,
    "cache": cmd_cache,
}


def main(argv=None, out: TextIO = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"imark: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimit, Overflow) as exc:
        print(f"imark: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PreconditionViolated, SpecMismatch, CorruptFile, ValueError) as exc:
        print(f"imark: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
