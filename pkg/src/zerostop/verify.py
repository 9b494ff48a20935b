"""Self-checks that reproduce the published numbers of the stopping game.

Each suite returns a list of :class:`Check` records.  ``source`` says where
the expected value comes from: ``"published"`` for figures/tables printed
in the original analysis, ``"derived"`` for values recomputed by an
independent route (enumeration, a second formula).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from . import combinatorics as comb
from .engine import exact_expected_payoff
from .multiset import Multiset, PayoffMode
from .numerics import binomial, format_rational, to_decimal
from .reduction import f_value, reduce_to_binary, scaling_check
from .rng import PhiloxStream
from .strategies import OptimalStrategy, build_tables, general_optimal_value

VERIFY_SEED = 20240229


@dataclass(frozen=True)
class Check:
    id: str
    expected: str
    actual: str
    passed: bool
    source: str

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.id}: expected {self.expected} [{self.source}], got {self.actual}"


def _show(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    return format_rational(x) if isinstance(x, (Fraction, int)) else str(x)


def _eq(cid: str, expected, actual, source: str) -> Check:
    return Check(cid, _show(expected), _show(actual), expected == actual, source)


def _all(cid: str, results: list[bool], what: str, source: str = "derived") -> Check:
    ok = sum(results)
    return Check(cid, f"{len(results)}/{len(results)} {what}", f"{ok}/{len(results)} {what}", ok == len(results), source)


FIG2_LEFT = {
    # (i, j): T[i][j] for m = 4
    (0, 0): "1", (1, 0): "47/35", (2, 0): "2", (3, 0): "3", (4, 0): "4",
    (0, 1): "23/35", (1, 1): "17/20", (2, 1): "6/5", (3, 1): "2", (4, 1): "3",
    (0, 2): "2/5", (1, 2): "1/2", (2, 2): "2/3", (3, 2): "1", (4, 2): "2",
    (0, 3): "1/5", (1, 3): "1/4", (2, 3): "1/3", (3, 3): "1/2", (4, 3): "1",
    (0, 4): "0", (1, 4): "0", (2, 4): "0", (3, 4): "0", (4, 4): "0",
}  # fmt: skip
FIG2_LEFT_STOPS = [(2, 0), (3, 1), (3, 2), (4, 3), (4, 4)]
FIG2_RIGHT_STOPS = {
    (3, 0): 3, (4, 1): 3, (5, 2): 3, (6, 3): 3, (7, 4): 3,
    (7, 5): 2, (8, 6): 2, (9, 7): 2,
    (9, 8): 1, (10, 9): 1,
    (10, 10): 0,
}  # fmt: skip
TABLE1 = {1: ".500", 2: ".625", 3: ".695", 5: ".775", 10: ".861", 20: ".919", 100: ".981", 200: ".990", 300: ".993"}
TABLE2 = {
    2: Fraction(1, 2), 4: Fraction(1, 3), 6: Fraction(3, 5), 8: Fraction(18, 35), 10: Fraction(5, 7),
    12: Fraction(50, 77), 14: Fraction(350, 429), 16: Fraction(980, 1287),
}  # fmt: skip
TABLE2_APPROX = {32: "1.10", 64: "1.57"}
SECTION6_EXAMPLE = [-5, -3, -3, 1, 1, 1, 2, 6]


def suite_figure2() -> list[Check]:
    checks = []
    left = build_tables(4)
    for (i, j), text in FIG2_LEFT.items():
        checks.append(_eq(f"m=4 T[{i},{j}]", text, format_rational(left.T[i][j]), "published"))
    checks.append(_eq("m=4 reachable stops", FIG2_LEFT_STOPS, left.reachable_stops(), "published"))
    right = build_tables(10)
    stops = {(i, j): right.T[i][j] for i, j in right.reachable_stops()}
    checks.append(_eq("m=10 reachable stops", FIG2_RIGHT_STOPS, {k: int(v) for k, v in stops.items()}, "published"))
    checks.append(_eq("m=10 T[0,0] (2 digits)", "1.61", to_decimal(right.value, 2), "published"))
    below = all(i > j for m in range(1, 51) for i, j in _all_stops(build_tables(m)) if (i, j) != (m, m))
    checks.append(_eq("stops below diagonal, m<=50", True, below, "published"))
    return checks


def _all_stops(tables) -> list[tuple[int, int]]:
    m = tables.m
    return [(i, j) for i in range(m + 1) for j in range(m + 1) if tables.S[i][j]]


def suite_table1() -> list[Check]:
    table = comb.moser_table(300)
    return [
        _eq(f"E_{n} (first 3 digits)", text, to_decimal(table[n], 3, rounding="down")[1:], "published")
        for n, text in TABLE1.items()
    ]


def suite_table2() -> list[Check]:
    checks = [_eq(f"W3({n})", value, comb.w3_exact(n), "published") for n, value in TABLE2.items()]
    checks += [
        _eq(f"W3({n}) (first 2 digits)", text, to_decimal(comb.w3_exact(n), 2, rounding="down"), "published")
        for n, text in TABLE2_APPROX.items()
    ]
    return checks


def suite_lemma1() -> list[Check]:
    checks = []
    for m in range(1, 8):
        results = [comb.count_reaching_paths(m, t) == binomial(2 * m, m - t) for t in range(1, m + 1)]
        checks.append(_all(f"m={m} reaching-path counts", results, "t values match C(2m, m-t)"))
    return checks


def suite_lemma2() -> list[Check]:
    results = [lhs == rhs for lhs, rhs in map(comb.lemma2_sides, range(1, 201))]
    closed = [comb.w3_exact(4 * m) == comb.w3_closed_form(m) for m in range(1, 101)]
    return [
        _all("lemma2 sides, m=1..200", results, "equal"),
        _all("hypergeometric W3 vs closed form, m=1..100", closed, "equal"),
    ]


def random_triples(count: int, limit: int = 64, seed: int = VERIFY_SEED) -> list[tuple[int, int, int]]:
    stream = PhiloxStream(seed)
    return [tuple(stream.below(limit + 1) for _ in range(3)) for _ in range(count)]


def suite_vandermonde() -> list[Check]:
    results = [lhs == rhs for lhs, rhs in (comb.vandermonde_check(*t) for t in random_triples(500))]
    return [_all("vandermonde, 500 seeded triples", results, "equal")]


def suite_upperbound() -> list[Check]:
    identity = [comb.payoff_upper_bound(m) == comb.payoff_upper_bound_closed(m) for m in range(1, 201)]
    bounded = [build_tables(m).value <= comb.payoff_upper_bound(m) for m in range(1, 51)]
    return [
        _all("sum of reach probabilities = closed form, m=1..200", identity, "equal"),
        _all("optimal value <= upper bound, m=1..50", bounded, "bounded"),
    ]


def suite_deck52() -> list[Check]:
    bound = comb.w1_lower_bound(26)
    return [
        _eq("optimal value n=52 (2 digits)", "2.62", to_decimal(build_tables(26).value, 2), "published"),
        _eq("threshold lower bound n=52 (2 digits)", "1.54", f"{bound:.2f}", "published"),
        _eq("threshold lower bound n=52 in [1.53, 1.55]", True, 1.53 <= bound <= 1.55, "published"),
        _eq("threshold exact value n=52", Fraction(1300, 609), comb.w1_exact(26), "derived"),
    ]


def suite_example9over7() -> list[Check]:
    M = Multiset(SECTION6_EXAMPLE)
    chain = reduce_to_binary(M, 0, with_f=True)
    fs = chain.f_values()
    five_halves = Fraction(5, 2)
    lhs, rhs = scaling_check(Multiset.balanced(8), five_halves)
    return [
        _eq("mu of example", Fraction(11, 4), M.mu, "published"),
        _eq("first balancing pair", "(-5, 1)", "({}, {})".format(*map(format_rational, chain.steps[0].pair)), "published"),
        _eq("final multiset", str(Multiset.balanced(8, five_halves)), str(chain.final), "published"),
        _eq("f nonincreasing along chain", True, all(a >= b for a, b in zip(fs, fs[1:])), "published"),
        _eq("final f", Fraction(9, 7), fs[-1], "published"),
        _eq("f(5/2 B_8)", Fraction(9, 7), lhs, "published"),
        _eq("5/2 f(B_8)", Fraction(9, 7), rhs, "published"),
        _eq("f(B_8)", Fraction(18, 35), f_value(Multiset.balanced(8)), "published"),
    ]


def suite_dominance() -> list[Check]:
    w1 = [build_tables(m).value >= comb.w1_exact(m) for m in range(1, 13)]
    w3 = [build_tables(m).value >= comb.w3_exact(2 * m) for m in range(1, 13)]
    triangle = []
    for m in range(1, 7):
        tables = build_tables(m)
        M = Multiset.balanced(2 * m)
        triangle.append(
            tables.value == general_optimal_value(M) == exact_expected_payoff(OptimalStrategy(tables), M, PayoffMode.SUFFIX)
        )
    return [
        _all("optimal >= threshold, m=1..12", w1, "dominate"),
        _all("optimal >= middle, m=1..12", w3, "dominate"),
        _all("table = recursion = enumeration, m=1..6", triangle, "agree"),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "figure2": suite_figure2,
    "table1": suite_table1,
    "table2": suite_table2,
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "vandermonde": suite_vandermonde,
    "upperbound": suite_upperbound,
    "deck52": suite_deck52,
    "example9over7": suite_example9over7,
    "dominance": suite_dominance,
}


def run_verify(name: str) -> dict[str, list[Check]]:
    """Run one suite (or ``"all"``) and return checks keyed by suite name."""
    if name == "all":
        return {key: fn() for key, fn in SUITES.items()}
    if name not in SUITES:
        raise KeyError(name)
    return {name: SUITES[name]()}
