"""Command-line interface.

``check`` prints ``unsat`` or ``unknown`` and never ``sat``: a satisfiable
abstraction proves nothing about the original constraint.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .abstraction import Mode, abstract_script
from .errors import ParseError, SolverError, SolverTimeout, UnsupportedFeature
from .pipeline import check_script, gen_wordeq, load_pool_text
from .sfa import DEFAULT_STATE_CAP
from .smtlib import parse_script
from .solver import emit_smt2
from .symbolic import EncodeOpts

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_SOLVER = 4
EXIT_TIMEOUT = 5


def _encoding_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.REGEX.value,
                   help="predicate selection (default: regex)")
    p.add_argument("--no-buckets", action="store_true", help="disable bucket bounds")
    p.add_argument("--no-symmetry", action="store_true", help="disable symmetry breaking")
    p.add_argument("--complement-cap", type=int, default=DEFAULT_STATE_CAP, metavar="N",
                   help="state cap for regex complement (default: %(default)s)")


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", metavar="CMD",
                   help="solver command (default: $SYMPARIKH_SOLVER, else smt-solver, z3 or "
                        "cvc5 on PATH)")
    p.add_argument("--timeout", type=float, default=30.0, metavar="SECS",
                   help="solver timeout in seconds (default: %(default)s)")


def _opts(args) -> EncodeOpts:
    return EncodeOpts(use_buckets=not args.no_buckets, use_symmetry=not args.no_symmetry)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symparikh",
        description="Parikh-image overapproximation of SMT-LIB string constraints.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a script: prints unsat or unknown")
    p.add_argument("file", type=Path)
    _encoding_flags(p)
    _solver_flags(p)
    p.add_argument("--dump-smt2", type=Path, metavar="PATH", help="also write the abstraction here")
    p.add_argument("-v", "--verbose", action="store_true", help="explain unknown verdicts")

    p = sub.add_parser("dump", help="print the abstraction as an SMT-LIB QF_LIA script")
    p.add_argument("file", type=Path)
    _encoding_flags(p)

    p = sub.add_parser("gen-wordeq", help="generate word-equation benchmarks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--pool", type=Path, help="regex pool, one SMT-LIB regex per line")
    p.add_argument("--out", type=Path, help="output directory (default: print to stdout)")

    p = sub.add_parser("bench", help="check every .smt2 file of a directory, write CSV")
    p.add_argument("directory", type=Path)
    p.add_argument("--out", type=Path, help="CSV path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    _encoding_flags(p)
    _solver_flags(p)
    return parser


def _read(path: Path) -> bytes:
    return path.read_bytes()


def _run_check(args) -> int:
    try:
        result = check_script(parse_script(_read(args.file)), args.mode, _opts(args),
                              args.complement_cap, args.solver, args.timeout, args.dump_smt2)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedFeature as exc:
        print(f"unknown (unsupported: {exc.name})", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SolverTimeout as exc:
        print(f"error: solver timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except SolverError as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    line = result.verdict
    if args.verbose and result.reason:
        line += f" ({result.reason})"
    print(line)
    if args.verbose:
        for w in result.warnings:
            print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def _run_dump(args) -> int:
    try:
        formula, ctx = abstract_script(parse_script(_read(args.file)), args.mode, _opts(args),
                                       args.complement_cap)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedFeature as exc:
        print(f"error: unsupported: {exc.name}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    sys.stdout.write(emit_smt2(formula))
    for w in ctx.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def _run_gen(args) -> int:
    pool = None
    if args.pool is not None:
        try:
            pool = load_pool_text(args.pool.read_text())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        if not pool:
            print("error: regex pool is empty", file=sys.stderr)
            return EXIT_PARSE
    scripts = gen_wordeq(args.seed, args.count, pool)
    if args.out is None:
        sys.stdout.write("\n".join(scripts))
        return EXIT_OK
    args.out.mkdir(parents=True, exist_ok=True)
    for i, text in enumerate(scripts):
        (args.out / f"wordeq_{args.seed}_{i:03d}.smt2").write_text(text)
    return EXIT_OK


def _bench_one(path: Path, args) -> tuple[str, str, int, int]:
    start = time.monotonic()
    nvars = 0
    try:
        res = check_script(parse_script(_read(path)), args.mode, _opts(args), args.complement_cap,
                           args.solver, args.timeout)
        verdict, nvars = res.verdict, res.num_vars
    except (OSError, ParseError):
        verdict = "error:parse"
    except UnsupportedFeature:
        verdict = "unknown:unsupported"
    except SolverTimeout:
        verdict = "unknown:timeout"
    except SolverError:
        verdict = "error:solver"
    ms = round((time.monotonic() - start) * 1000)
    return path.name, verdict, ms, nvars


def _run_bench(args) -> int:
    files = sorted(args.directory.glob("*.smt2"))
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda f: _bench_one(f, args), files))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["file", "verdict", "wall-time-ms", "formula-var-count"])
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": _run_check, "dump": _run_dump, "gen-wordeq": _run_gen,
               "bench": _run_bench}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
