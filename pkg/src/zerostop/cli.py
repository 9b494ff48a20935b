"""Command-line entry point: ``zerostop {solve,simulate,table,verify,reduce}``.

Exit codes: 0 success, 1 domain/refusal errors (message printed verbatim
on stderr), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import combinatorics as comb
from .engine import MAX_ENUMERATION, count_distinct_permutations, exact_expected_payoff, monte_carlo
from .errors import ZeroStopError
from .multiset import Multiset, PayoffMode, load_multiset
from .numerics import format_rational, parse_rational, to_decimal
from .reduction import MAX_CHECK_SIZE, reduce_to_binary
from .strategies import MiddleStrategy, OptimalStrategy, ThresholdStrategy, build_tables, general_optimal_value
from .verify import SUITES, run_verify


def _even_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2 or n % 2:
        raise argparse.ArgumentTypeError(f"n must be even and >= 2, got {n}")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ZeroStopError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _both(x: Fraction, digits: int) -> str:
    return f"{format_rational(x, always_denominator=True)} ({to_decimal(x, digits)})"


def cmd_solve(args) -> int:
    if args.multiset is not None:
        if args.dump_t or args.dump_s:
            raise SystemExit(_usage(args, "--dump-t/--dump-s need --n"))
        M = load_multiset(args.multiset)
        print(_both(general_optimal_value(M, PayoffMode(args.mode)), args.digits))
        return 0
    if args.mode != "suffix":
        raise SystemExit(_usage(args, "--n solves the suffix game; use --multiset for prefix mode"))
    tables = build_tables(args.n // 2)
    print(_both(tables.value, args.digits))
    if args.dump_t:
        Path(args.dump_t).write_text(tables.t_csv())
    if args.dump_s:
        Path(args.dump_s).write_text(tables.s_csv())
    return 0


def _strategy(name: str, n: int, threshold_n: int | None):
    if name == "threshold":
        return ThresholdStrategy.for_approximate_length(threshold_n) if threshold_n else ThresholdStrategy.for_length(n)
    if name == "optimal":
        return OptimalStrategy.for_length(n)
    return MiddleStrategy()


def cmd_simulate(args) -> int:
    if args.threshold_n is not None and args.strategy != "threshold":
        raise SystemExit(_usage(args, "--threshold-n only applies to --strategy threshold"))
    M = Multiset.balanced(args.n) if args.n is not None else load_multiset(args.multiset)
    mode = PayoffMode(args.mode)
    strategy = _strategy(args.strategy, M.n, args.threshold_n)
    exact = None
    strategy.validate(M.elements)
    if count_distinct_permutations(M) <= MAX_ENUMERATION:
        exact = exact_expected_payoff(strategy, M, mode)
    report = monte_carlo(strategy, M, mode, args.reps, args.seed, workers=args.workers, exact=exact)
    print(report.to_json())
    return 0


TABLE_PARAMETER = {"w3": "n", "moser": "n", "reach": "t", "upper": "m", "w1": "m"}


def cmd_table(args) -> int:
    what = args.what
    if what == "w3":
        rows = [(n, comb.w3_exact(n)) for n in range(2, (args.max_n or 16) + 1, 2)]
    elif what == "moser":
        table = comb.moser_table(args.max_n or 20)
        rows = [(n, table[n]) for n in range(1, len(table))]
    elif what == "reach":
        m = args.m or 4
        rows = [(t, comb.reach_probability(m, t)) for t in range(0, m + 1)]
    elif what == "upper":
        rows = [(m, comb.payoff_upper_bound(m)) for m in range(1, (args.max_m or 10) + 1)]
    else:
        rows = [(m, comb.w1_exact(m)) for m in range(1, (args.max_m or 10) + 1)]
    exact = what != "moser" or table.exact
    print(f"{TABLE_PARAMETER[what]}\texact\tdecimal")
    for param, value in rows:
        print(f"{param}\t{format_rational(value) if exact else '-'}\t{to_decimal(value, args.digits)}")
    return 0


def cmd_verify(args) -> int:
    results = run_verify(args.what)
    passed = all(c.passed for checks in results.values() for c in checks)
    if args.json:
        payload = {"passed": passed, "suites": {k: [c.to_dict() for c in v] for k, v in results.items()}}
        print(json.dumps(payload, indent=2))
    else:
        for name, checks in results.items():
            ok = all(c.passed for c in checks)
            print(f"[{'PASS' if ok else 'FAIL'}] {name} ({len(checks)} checks)")
            for check in checks:
                print(f"  {check.line()}")
    return 0 if passed else 1


def cmd_reduce(args) -> int:
    M = load_multiset(args.multiset)
    if args.with_f and M.n > MAX_CHECK_SIZE:
        raise SystemExit(_usage(args, f"--with-f needs at most {MAX_CHECK_SIZE} elements"))
    chain = reduce_to_binary(M, args.epsilon, with_f=args.with_f)
    print(chain.render())
    print(f"mu: {format_rational(M.mu)} -> {format_rational(chain.final_mu)}")
    return 0


def _usage(args, message: str) -> int:
    args.parser.print_usage(sys.stderr)
    print(f"{args.parser.prog}: error: {message}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerostop", description="Stopping strategies for the zero-sum permutation game."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact optimal value (and tables) of the game")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=_even_n, help="binary game of n = 2m cards (m of each sign)")
    src.add_argument("--multiset", help="file (or literal text) with a zero-sum multiset")
    p.add_argument("--mode", choices=["suffix", "prefix"], default="suffix", help="payoff convention (default suffix)")
    p.add_argument("--dump-t", metavar="FILE", help="write the value matrix T as CSV")
    p.add_argument("--dump-s", metavar="FILE", help="write the 0/1 stop matrix S as CSV")
    p.add_argument("--digits", type=int, default=2, help="decimal digits to print (default 2)")
    p.set_defaults(func=cmd_solve, parser=p)

    p = sub.add_parser("simulate", help="seeded Monte Carlo run of a strategy, JSON report")
    p.add_argument("--strategy", choices=["threshold", "optimal", "middle"], required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=_even_n, help="balanced -1/+1 multiset of size n")
    src.add_argument("--multiset", help="file (or literal text) with a zero-sum multiset")
    p.add_argument("--mode", choices=["suffix", "prefix"], default="suffix")
    p.add_argument("--reps", type=_positive, default=100_000)
    p.add_argument("--seed", type=_seed, default=0, help="64-bit seed (decimal or 0x-hex)")
    p.add_argument("--threshold-n", type=_even_n, help="threshold rule from an approximate length N")
    p.add_argument("--workers", type=_positive, default=1, help="processes (result is independent of this)")
    p.set_defaults(func=cmd_simulate, parser=p)

    p = sub.add_parser("table", help="TSV table of exact values")
    p.add_argument("--what", choices=list(TABLE_PARAMETER), required=True)
    p.add_argument("--max-n", type=_positive, help="largest n for w3 (default 16) or moser (default 20)")
    p.add_argument("--max-m", type=_positive, help="largest m for upper/w1 (default 10)")
    p.add_argument("--m", type=_positive, help="half-length for reach (default 4)")
    p.add_argument("--digits", type=int, default=3, help="decimal digits (default 3)")
    p.set_defaults(func=cmd_table, parser=p)

    p = sub.add_parser("verify", help="reproduce the published values")
    p.add_argument("--what", choices=[*SUITES, "all"], default="all")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_verify, parser=p)

    p = sub.add_parser("reduce", help="reduce a multiset toward the balanced binary case")
    p.add_argument("--multiset", required=True, help="file (or literal text) with a zero-sum multiset")
    p.add_argument("--epsilon", type=_rational, default=Fraction(0), help="target spread per sign class (p/q)")
    p.add_argument("--with-f", action="store_true", help="print the exact middle-rule payoff per line")
    p.set_defaults(func=cmd_reduce, parser=p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", 0) is not None and not 0 <= getattr(args, "digits", 0) <= 64:
        parser.error("--digits must be in 0..64")
    try:
        return args.func(args)
    except ZeroStopError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
