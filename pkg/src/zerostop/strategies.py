"""Stopping rules: threshold, exact optimal (backward induction), stop-in-the-middle.

Decision functions are pure.  The ``*Strategy`` classes adapt them to the
engine, which calls ``decide`` after every reveal with a :class:`Progress`
snapshot of the game so far.
"""

from __future__ import annotations

import csv
import enum
import functools
import io
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import threshold_value
from .errors import DomainError, RefusalError
from .multiset import Multiset, PayoffMode
from .numerics import format_rational

MAX_TABLE_M = 4096
MAX_ORACLE_SIZE = 18


class Decision(enum.Enum):
    STOP = "stop"
    CONTINUE = "continue"


@dataclass(frozen=True)
class BinaryState:
    """``i`` -1's and ``j`` +1's revealed out of ``m`` of each."""

    i: int
    j: int
    m: int

    def __post_init__(self):
        if not (0 <= self.i <= self.m and 0 <= self.j <= self.m):
            raise DomainError(f"invalid state ({self.i},{self.j}) for m={self.m}")

    @property
    def stop_payoff(self) -> int:
        """Sum of the unrevealed cards."""
        return self.i - self.j


def threshold_decide(state: BinaryState, t: int) -> Decision:
    if t < 1:
        raise DomainError(f"threshold must be >= 1, got {t}")
    return Decision.STOP if state.i - state.j >= t else Decision.CONTINUE


def approx_threshold(N: int) -> int:
    """Threshold to use when only N <= n <= 2N is known: pretend n = N."""
    if N < 2 or N % 2:
        raise DomainError(f"approximate length N must be even and >= 2, got {N}")
    return threshold_value(N // 2)


@dataclass(frozen=True)
class StrategyTables:
    """Value matrix ``T`` and stop matrix ``S``, both indexed ``[i][j]``."""

    m: int
    T: tuple[tuple[Fraction, ...], ...]
    S: tuple[tuple[bool, ...], ...]
    stop_on_ties: bool = True

    @property
    def value(self) -> Fraction:
        return self.T[0][0]

    def reachable_stops(self) -> list[tuple[int, int]]:
        """Stopping states reachable from (0,0) without passing another stop."""
        seen: set[tuple[int, int]] = set()
        stack = [(0, 0)]
        stops = []
        while stack:
            i, j = stack.pop()
            if (i, j) in seen:
                continue
            seen.add((i, j))
            if self.S[i][j]:
                stops.append((i, j))
                continue
            if i < self.m:
                stack.append((i + 1, j))
            if j < self.m:
                stack.append((i, j + 1))
        return sorted(stops)

    def _csv(self, cell) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i\\j", *range(self.m + 1)])
        for i in range(self.m + 1):
            writer.writerow([i, *(cell(i, j) for j in range(self.m + 1))])
        return buf.getvalue()

    def t_csv(self) -> str:
        return self._csv(lambda i, j: format_rational(self.T[i][j]))

    def s_csv(self) -> str:
        return self._csv(lambda i, j: int(self.S[i][j]))


def build_tables(m: int, stop_on_ties: bool = True) -> StrategyTables:
    """Backward induction over states (i, j) with exact rationals.

    T[i][j] = max(i - j, p0 T[i+1][j] + p1 T[i][j+1]) with
    p0 = (m-i)/(2m-i-j), p1 = (m-j)/(2m-i-j); boundary T[m][j] = m - j
    (only +1's remain) and T[i][m] = 0 (only -1's remain, ride to the end).
    """
    if not 1 <= m <= MAX_TABLE_M:
        raise DomainError(f"m must be in 1..{MAX_TABLE_M}, got {m}")
    T = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    S = [[False] * (m + 1) for _ in range(m + 1)]
    for j in range(m + 1):
        T[m][j] = Fraction(m - j)
        S[m][j] = True
    for i in range(m - 1, -1, -1):
        row, below = T[i], T[i + 1]
        for j in range(m - 1, -1, -1):
            left = 2 * m - i - j
            cont = Fraction((m - i) * below[j] + (m - j) * row[j + 1]) / left
            stop = i - j
            if stop > cont or (stop_on_ties and stop == cont):
                row[j] = Fraction(stop)
                S[i][j] = True
            else:
                row[j] = cont
    return StrategyTables(m, tuple(map(tuple, T)), tuple(map(tuple, S)), stop_on_ties)


def optimal_decide(state: BinaryState, tables: StrategyTables) -> Decision:
    if state.m != tables.m:
        raise DomainError(f"state has m={state.m} but tables were built for m={tables.m}")
    return Decision.STOP if tables.S[state.i][state.j] else Decision.CONTINUE


def middle_decide(index: int, n: int, prefix_sum) -> Decision:
    """Stop right after the (n/2)-th reveal iff the running sum is positive."""
    if n % 2:
        raise DomainError(f"stop-in-the-middle needs an even length, got {n}")
    if not 1 <= index <= n:
        raise DomainError(f"reveal index {index} outside 1..{n}")
    return Decision.STOP if index == n // 2 and prefix_sum > 0 else Decision.CONTINUE


def general_optimal_value(M: Multiset, mode: PayoffMode = PayoffMode.SUFFIX) -> Fraction:
    """Optimal expected payoff for any zero-sum multiset, by memoized recursion.

    States are the remaining multiplicity vectors; the player may stop in
    any state, including before the first reveal.
    """
    if not isinstance(M, Multiset):
        M = Multiset(M)
    if M.n > MAX_ORACLE_SIZE:
        raise RefusalError(f"general_optimal_value limited to {MAX_ORACLE_SIZE} elements, got {M.n}")
    values, counts = zip(*M.value_counts()) if M.n else ((), ())
    sign = 1 if mode is PayoffMode.SUFFIX else -1

    @functools.lru_cache(maxsize=None)
    def value(remaining: tuple[int, ...]) -> Fraction:
        size = sum(remaining)
        stop = sign * sum((v * c for v, c in zip(values, remaining)), Fraction(0))
        if size == 0:
            return stop
        cont = Fraction(0)
        for k, c in enumerate(remaining):
            if c:
                nxt = remaining[:k] + (c - 1,) + remaining[k + 1 :]
                cont += c * value(nxt)
        return max(stop, cont / size)

    return value(tuple(counts))


class Progress:
    """Mutable view of a game in progress, handed to ``Strategy.decide``."""

    __slots__ = ("n", "index", "prefix_sum", "minus_seen", "plus_seen")

    def __init__(self, n: int, index: int = 0, prefix_sum=0, minus_seen: int = 0, plus_seen: int = 0):
        self.n = n
        self.index = index
        self.prefix_sum = prefix_sum
        self.minus_seen = minus_seen
        self.plus_seen = plus_seen

    def advance(self, x) -> None:
        self.index += 1
        self.prefix_sum += x
        if x == -1:
            self.minus_seen += 1
        elif x == 1:
            self.plus_seen += 1

    def binary_state(self) -> BinaryState:
        return BinaryState(self.minus_seen, self.plus_seen, self.n // 2)


class Strategy:
    """Base for engine-facing strategies."""

    name = "strategy"
    binary = False

    def validate(self, sequence) -> None:
        if self.binary:
            if any(x != 1 and x != -1 for x in sequence):
                raise DomainError(f"{self.name} strategy needs a sequence of -1/+1 entries")
            if sum(sequence) != 0:
                raise DomainError(f"{self.name} strategy needs equally many -1 and +1 entries")

    def decide(self, progress: Progress) -> Decision:
        raise NotImplementedError


class ThresholdStrategy(Strategy):
    """Stop once the -1's lead the +1's by ``t``."""

    name = "threshold"
    binary = True

    def __init__(self, t: int):
        if t < 1:
            raise DomainError(f"threshold must be >= 1, got {t}")
        self.t = t

    @classmethod
    def for_length(cls, n: int) -> "ThresholdStrategy":
        if n < 2 or n % 2:
            raise DomainError(f"binary game length must be even and >= 2, got {n}")
        return cls(threshold_value(n // 2))

    @classmethod
    def for_approximate_length(cls, N: int) -> "ThresholdStrategy":
        return cls(approx_threshold(N))

    def decide(self, progress: Progress) -> Decision:
        return Decision.STOP if progress.minus_seen - progress.plus_seen >= self.t else Decision.CONTINUE


class OptimalStrategy(Strategy):
    name = "optimal"
    binary = True

    def __init__(self, tables: StrategyTables):
        self.tables = tables

    @classmethod
    def for_length(cls, n: int) -> "OptimalStrategy":
        if n < 2 or n % 2:
            raise DomainError(f"binary game length must be even and >= 2, got {n}")
        return cls(build_tables(n // 2))

    def validate(self, sequence) -> None:
        super().validate(sequence)
        if len(sequence) != 2 * self.tables.m:
            raise DomainError(f"tables built for n={2 * self.tables.m}, sequence has length {len(sequence)}")

    def decide(self, progress: Progress) -> Decision:
        return Decision.STOP if self.tables.S[progress.minus_seen][progress.plus_seen] else Decision.CONTINUE


class MiddleStrategy(Strategy):
    name = "middle"

    def validate(self, sequence) -> None:
        if len(sequence) % 2:
            raise DomainError(f"stop-in-the-middle needs an even length, got {len(sequence)}")

    def decide(self, progress: Progress) -> Decision:
        return middle_decide(progress.index, progress.n, progress.prefix_sum)
