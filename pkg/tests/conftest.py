import itertools
from fractions import Fraction

import pytest


def pascal_rows(n_max):
    """Additive Pascal triangle, rows 0..n_max."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


def exp_neg_one_lower():
    """Rational lower bound on 1/e: alternating series cut after a negative term."""
    total, term = Fraction(0), Fraction(1)
    for k in range(0, 30):
        total += term if k % 2 == 0 else -term
        term /= k + 1
    # last added term (k = 29) was negative, so the partial sum is below 1/e
    return total


def brute_force_expectation(elements, stop_rule, payoff="suffix"):
    """Average payoff over every distinct ordering, found via itertools.permutations.

    ``stop_rule(prefix)`` returns True to stop after that prefix.
    """
    orders = set(itertools.permutations(elements))
    total = Fraction(0)
    for seq in orders:
        k = len(seq)
        for i in range(1, len(seq) + 1):
            if stop_rule(seq[:i]):
                k = i
                break
        total += sum(seq[k:]) if payoff == "suffix" else sum(seq[:k])
    return total / len(orders)


@pytest.fixture(scope="session")
def pascal():
    return pascal_rows(80)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line; the lines are repeated in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
