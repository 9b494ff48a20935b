"""Playing games: single runs, Monte Carlo estimates and exact expectations."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import rng
from .errors import DomainError, RefusalError
from .multiset import Multiset, PayoffMode
from .numerics import binomial, format_rational
from .strategies import Decision, Progress, Strategy

MAX_ENUMERATION = 10**7


@dataclass(frozen=True)
class GameRun:
    permutation: tuple[Fraction, ...]
    stop_index: int
    payoff: Fraction
    mode: PayoffMode


@dataclass(frozen=True)
class SimReport:
    strategy: str
    n: int
    mode: PayoffMode
    reps: int
    seed: int
    mean: float
    stderr: float
    exact: Fraction | None = None

    def to_dict(self) -> dict:
        out = {
            "strategy": self.strategy,
            "n": self.n,
            "mode": self.mode.value,
            "reps": self.reps,
            "seed": self.seed,
            "mean": self.mean,
            "stderr": self.stderr,
        }
        if self.exact is not None:
            out["exact"] = format_rational(self.exact)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _plain(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _first_stop(strategy: Strategy, sequence: Sequence) -> int:
    progress = Progress(len(sequence))
    for x in sequence:
        progress.advance(x)
        if strategy.decide(progress) is Decision.STOP:
            return progress.index
    return len(sequence)


def play(strategy: Strategy, permutation: Sequence, mode: PayoffMode = PayoffMode.SUFFIX) -> GameRun:
    """Reveal left to right, asking the strategy after each reveal."""
    perm = tuple(Fraction(x) for x in permutation)
    strategy.validate(perm)
    stop = _first_stop(strategy, [_plain(x) for x in perm])
    return GameRun(perm, stop, mode.payoff(perm, stop), mode)


def shuffle(M: Multiset, seed: int) -> list[Fraction]:
    """Uniform random ordering of ``M`` determined by ``seed``."""
    return rng.shuffle(M.elements, seed)


def _payoffs(strategy: Strategy, elements: tuple, mode: PayoffMode, seed: int, start: int, stop: int) -> list[float]:
    out = []
    suffix = mode is PayoffMode.SUFFIX
    for r in range(start, stop):
        perm = rng.shuffle(elements, rng.mix64(seed, r))
        k = _first_stop(strategy, perm)
        out.append(float(sum(perm[k:]) if suffix else sum(perm[:k])))
    return out


def monte_carlo(
    strategy: Strategy,
    M: Multiset,
    mode: PayoffMode,
    reps: int,
    seed: int,
    workers: int = 1,
    exact: Fraction | None = None,
) -> SimReport:
    """Estimate the expected payoff from ``reps`` seeded plays.

    Replication r shuffles with seed ``mix64(seed, r)``, so the report does
    not depend on ``workers``.  Mean and variance use ``math.fsum``.
    """
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    strategy.validate(M.elements)
    elements = tuple(_plain(x) for x in M.elements)
    if workers <= 1 or reps < 2 * workers:
        payoffs = _payoffs(strategy, elements, mode, seed, 0, reps)
    else:
        bounds = [reps * w // workers for w in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(
                _payoffs,
                *zip(*[(strategy, elements, mode, seed, lo, hi) for lo, hi in zip(bounds, bounds[1:])]),
            )
            payoffs = [x for chunk in chunks for x in chunk]
    mean = math.fsum(payoffs) / reps
    if reps > 1:
        var = math.fsum((x - mean) ** 2 for x in payoffs) / (reps - 1)
        stderr = math.sqrt(var / reps)
    else:
        stderr = 0.0
    return SimReport(strategy.name, M.n, mode, reps, seed, mean, stderr, exact)


def multinomial(counts: Sequence[int]) -> int:
    """n! / prod(c!) as a product of binomials."""
    total, acc = 0, 1
    for c in counts:
        total += c
        acc *= binomial(total, c)
    return acc


def count_distinct_permutations(M: Multiset) -> int:
    return multinomial([c for _, c in M.value_counts()])


def distinct_permutations(M: Multiset) -> Iterator[tuple[Fraction, ...]]:
    """Each distinct ordering of ``M`` once, in lexicographic order."""
    seq = list(M.elements)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1 :] = reversed(seq[i + 1 :])


def exact_expected_payoff(strategy: Strategy, M: Multiset, mode: PayoffMode = PayoffMode.SUFFIX) -> Fraction:
    """Average payoff over all distinct orderings of ``M``.

    Orderings are walked as a lexicographic prefix tree.  When the strategy
    stops at a prefix, every completion of that prefix gets the same payoff,
    so it is credited once with weight ``multinomial(remaining counts)``.
    """
    strategy.validate(M.elements)
    pairs = M.value_counts()
    counts = [c for _, c in pairs]
    total = multinomial(counts)
    if total > MAX_ENUMERATION:
        raise RefusalError(f"{total} distinct permutations exceed the enumeration limit of {MAX_ENUMERATION}")
    scale = math.lcm(*(v.denominator for v, _ in pairs)) if pairs else 1
    values = [_plain(v) for v, _ in pairs]
    scaled = [int(v * scale) for v, _ in pairs]
    n = M.n
    suffix = mode is PayoffMode.SUFFIX
    full_sum = sum(s * c for s, c in zip(scaled, counts))

    def walk(progress: Progress, scaled_sum: int) -> int:
        acc = 0
        for k, c in enumerate(counts):
            if not c:
                continue
            counts[k] -= 1
            child = Progress(n, progress.index, progress.prefix_sum, progress.minus_seen, progress.plus_seen)
            child.advance(values[k])
            child_sum = scaled_sum + scaled[k]
            if child.index == n or strategy.decide(child) is Decision.STOP:
                payoff = full_sum - child_sum if suffix else child_sum
                acc += payoff * multinomial(counts)
            else:
                acc += walk(child, child_sum)
            counts[k] += 1
        return acc

    if n == 0:
        return Fraction(0)
    return Fraction(walk(Progress(n), 0), total * scale)
