from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zerostop.combinatorics import w1_exact, w3_exact
from zerostop.errors import DomainError, NonZeroSumError, RefusalError
from zerostop.multiset import Multiset, PayoffMode
from zerostop.numerics import to_decimal
from zerostop.strategies import (
    BinaryState,
    Decision,
    approx_threshold,
    build_tables,
    general_optimal_value,
    middle_decide,
    optimal_decide,
    threshold_decide,
)

STOP, CONT = Decision.STOP, Decision.CONTINUE


@pytest.fixture(scope="module")
def tables4():
    return build_tables(4)


def test_threshold_decide():
    # (-1, 1, 1, 1, -1, 1, -1, -1): after the first card the state is (1, 0)
    assert threshold_decide(BinaryState(1, 0, 4), 1) is STOP
    assert threshold_decide(BinaryState(0, 0, 4), 1) is CONT
    assert threshold_decide(BinaryState(3, 1, 10), 3) is CONT
    assert threshold_decide(BinaryState(4, 1, 10), 3) is STOP


def test_binary_state_validation():
    with pytest.raises(DomainError):
        BinaryState(5, 0, 4)
    assert BinaryState(3, 1, 4).stop_payoff == 2


@pytest.mark.parametrize("N, t", [(8, 1), (52, 3), (2, 1), (100, 5)])
def test_approx_threshold(N, t):
    assert approx_threshold(N) == t


def test_approx_threshold_rejects_odd():
    with pytest.raises(DomainError):
        approx_threshold(7)


def test_figure2_left(tables4):
    T = tables4.T
    assert (T[0][0], T[1][0], T[2][0], T[4][4]) == (1, Fraction(47, 35), 2, 0)
    assert T[0][1] == Fraction(23, 35) and T[1][1] == Fraction(17, 20) and T[2][1] == Fraction(6, 5)
    assert tables4.reachable_stops() == [(2, 0), (3, 1), (3, 2), (4, 3), (4, 4)]


def test_figure2_right():
    tables = build_tables(10)
    stops = {(i, j): tables.T[i][j] for i, j in tables.reachable_stops()}
    assert stops == {
        (3, 0): 3, (4, 1): 3, (5, 2): 3, (6, 3): 3, (7, 4): 3,
        (7, 5): 2, (8, 6): 2, (9, 7): 2,
        (9, 8): 1, (10, 9): 1,
        (10, 10): 0,
    }  # fmt: skip
    assert to_decimal(tables.value, 2) == "1.61"


def test_deck_of_52():
    assert to_decimal(build_tables(26).value, 2) == "2.62"


def test_boundaries_and_floor():
    for m in range(1, 21):
        tables = build_tables(m)
        T, S = tables.T, tables.S
        for k in range(m + 1):
            assert T[k][m] == 0
            assert T[m][k] == m - k
        assert S[m][m]
        for i in range(m + 1):
            for j in range(m + 1):
                assert T[i][j] >= max(i - j, 0)


def test_stops_strictly_below_diagonal():
    for m in range(1, 51):
        S = build_tables(m).S
        for i in range(m + 1):
            for j in range(m + 1):
                if S[i][j] and (i, j) != (m, m):
                    assert i > j


def test_t_monotone():
    for m in range(1, 51):
        T = build_tables(m).T
        for i in range(m + 1):
            for j in range(m):
                assert T[i][j] >= T[i][j + 1]
        for i in range(m):
            for j in range(m + 1):
                assert T[i + 1][j] >= T[i][j]


def test_tie_conventions_same_values():
    ties_seen = 0
    for m in range(1, 31):
        a, b = build_tables(m, stop_on_ties=True), build_tables(m, stop_on_ties=False)
        assert a.T == b.T
        ties_seen += sum(x != y for ra, rb in zip(a.S, b.S) for x, y in zip(ra, rb))
    # (3,2) at m=4 is a tie: 1 = 1/3 * 2 + 2/3 * 1/2
    assert ties_seen > 0
    assert build_tables(4).S[3][2] and not build_tables(4, stop_on_ties=False).S[3][2]


def test_entries_exact_fraction():
    assert build_tables(4).T[1][0] == Fraction(47, 35)
    assert isinstance(build_tables(4).T[1][0], Fraction)


def test_build_tables_domain():
    with pytest.raises(DomainError):
        build_tables(0)
    with pytest.raises(DomainError):
        build_tables(4097)


def test_optimal_decide(tables4):
    assert optimal_decide(BinaryState(2, 0, 4), tables4) is STOP
    assert optimal_decide(BinaryState(0, 0, 4), tables4) is CONT
    assert optimal_decide(BinaryState(4, 4, 4), tables4) is STOP
    with pytest.raises(DomainError):
        optimal_decide(BinaryState(0, 0, 5), tables4)


def test_middle_decide():
    assert middle_decide(4, 8, 2) is STOP
    assert middle_decide(4, 8, 0) is CONT
    assert middle_decide(3, 8, 3) is CONT
    assert middle_decide(5, 8, 1) is CONT
    with pytest.raises(DomainError):
        middle_decide(1, 7, 1)


def test_general_optimal_value_examples():
    pair = Multiset([-1, 1])
    assert general_optimal_value(pair, PayoffMode.SUFFIX) == Fraction(1, 2)
    assert general_optimal_value(pair, PayoffMode.PREFIX) == Fraction(1, 2)
    assert general_optimal_value(Multiset.balanced(8)) == 1


def test_general_matches_tables():
    for m in range(1, 9):
        assert general_optimal_value(Multiset.balanced(2 * m)) == build_tables(m).value


def test_general_matches_tables_m12():
    assert general_optimal_value(Multiset.balanced(18)) == build_tables(9).value


def test_dominance():
    for m in range(1, 13):
        value = build_tables(m).value
        assert value >= w1_exact(m)
        assert value >= w3_exact(2 * m)


def test_general_guards():
    with pytest.raises(RefusalError):
        general_optimal_value(Multiset.balanced(20))
    with pytest.raises(NonZeroSumError):
        general_optimal_value([1, 2])


def test_general_odd_size_runs():
    # odd sizes are allowed in the engine even without reduction guarantees
    # first card -2 (p=1/3): collect 2; first card 1 (p=2/3): worth 1/2 more
    assert general_optimal_value(Multiset([-2, 1, 1])) == 1


small_multisets = st.lists(st.integers(-6, 6), min_size=1, max_size=7).map(lambda xs: xs + [-sum(xs)])


@settings(max_examples=60, deadline=None)
@given(small_multisets)
def test_negation_duality(values):
    M = Multiset(values)
    assert general_optimal_value(M, PayoffMode.PREFIX) == general_optimal_value(-M, PayoffMode.SUFFIX)


@settings(max_examples=60, deadline=None)
@given(small_multisets)
def test_general_value_nonnegative(values):
    assert general_optimal_value(Multiset(values)) >= 0


def test_csv_dumps(tables4):
    t_lines = tables4.t_csv().splitlines()
    assert t_lines[0] == "i\\j,0,1,2,3,4"
    assert t_lines[1] == "0,1,23/35,2/5,1/5,0"
    assert t_lines[2] == "1,47/35,17/20,1/2,1/4,0"
    s_lines = tables4.s_csv().splitlines()
    assert s_lines[3] == "2,1,0,0,0,0"
    assert s_lines[5] == "4,1,1,1,1,1"
