"""Pair averaging and the reduction of a zero-sum multiset to the binary case.

``f_value(M)`` is the exact expected payoff of the stop-in-the-middle rule
in the prefix (dual) game.  Replacing two distinct elements by two copies
of their mean never increases it, which is what the chains built here
let one check step by step.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, InvariantViolation, RefusalError
from .multiset import Multiset
from .numerics import binomial, format_rational

MAX_F_SIZE = 20
MAX_CHECK_SIZE = 12
MAX_STEPS = 10_000


def positive_part(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


def _even_size(n: int, limit: int) -> None:
    if n % 2:
        raise DomainError(f"stop-in-the-middle analysis needs an even size, got {n}")
    if n > limit:
        raise RefusalError(f"multiset of size {n} exceeds the limit of {limit}")


def f_value(M: Multiset) -> Fraction:
    """Expected stop-in-the-middle payoff (prefix game) on a random ordering of M.

    The first half is a uniform n/2-subset of positions; summing over its
    composition by distinct value gives hypergeometric weights
    prod C(c_v, k_v) / C(n, n/2).  Values are scaled to integers so that
    compositions with equal (size, sum) merge into one DP state.
    """
    if not isinstance(M, Multiset):
        M = Multiset(M)
    _even_size(M.n, MAX_F_SIZE)
    if M.n == 0:
        return Fraction(0)
    pairs = M.value_counts()
    half = M.n // 2
    scale = math.lcm(*(v.denominator for v, _ in pairs))
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for v, c in pairs:
        step = int(v * scale)
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (size, s), weight in states.items():
            for take in range(min(c, half - size) + 1):
                nxt[size + take, s + take * step] += weight * binomial(c, take)
        states = nxt
    total = sum(weight * s for (size, s), weight in states.items() if size == half and s > 0)
    return Fraction(total, scale * binomial(M.n, half))


def average_pair(M: Multiset, a, b) -> Multiset:
    """Replace one ``a`` and one ``b`` by two copies of ``(a + b) / 2``."""
    a, b = Fraction(a), Fraction(b)
    if a == b:
        raise DomainError(f"pair averaging needs distinct elements, got {format_rational(a)} twice")
    rest = list(M.elements)
    for x in (a, b):
        try:
            rest.remove(x)
        except ValueError:
            raise DomainError(f"{format_rational(x)} is not an element of {M}") from None
    mid = (a + b) / 2
    return Multiset(rest + [mid, mid])


def lemma3_check(rest: Iterable, a, b) -> tuple[Fraction, Fraction]:
    """(f(rest + {a, b}), f(rest + {avg, avg})); the first is never smaller."""
    a, b = Fraction(a), Fraction(b)
    if a == b:
        raise DomainError("pair averaging needs distinct elements")
    rest = [Fraction(x) for x in rest]
    _even_size(len(rest) + 2, MAX_CHECK_SIZE)
    mid = (a + b) / 2
    return f_value(Multiset(rest + [a, b])), f_value(Multiset(rest + [mid, mid]))


def midpoint_inequality(x, a, b) -> tuple[Fraction, Fraction]:
    """(g(x+a)/2 + g(x+b)/2, g(x + (a+b)/2)) with g the positive part."""
    x, a, b = Fraction(x), Fraction(a), Fraction(b)
    if not a < b:
        raise DomainError("midpoint_inequality needs a < b")
    return (positive_part(x + a) + positive_part(x + b)) / 2, positive_part(x + (a + b) / 2)


@dataclass(frozen=True)
class ReductionStep:
    multiset: Multiset
    pair: tuple[Fraction, Fraction]
    f: Fraction | None = None

    @property
    def action(self) -> str:
        a, b = self.pair
        return f"average {format_rational(a)} and {format_rational(b)}"


@dataclass(frozen=True)
class ReductionChain:
    """Initial multiset followed by one pair-averaging step per entry."""

    initial: Multiset
    initial_f: Fraction | None = None
    steps: tuple[ReductionStep, ...] = field(default_factory=tuple)

    @property
    def final(self) -> Multiset:
        return self.steps[-1].multiset if self.steps else self.initial

    @property
    def final_mu(self) -> Fraction:
        return self.final.mu

    def multisets(self) -> list[Multiset]:
        return [self.initial, *(s.multiset for s in self.steps)]

    def f_values(self) -> list[Fraction | None]:
        return [self.initial_f, *(s.f for s in self.steps)]

    def extend(self, steps: Iterable[ReductionStep]) -> "ReductionChain":
        return ReductionChain(self.initial, self.initial_f, self.steps + tuple(steps))

    def render(self) -> str:
        """One multiset per line, aligned, with the action that produced it."""
        rows = [(str(self.initial), "start", self.initial_f)]
        rows += [(str(s.multiset), s.action, s.f) for s in self.steps]
        width = max(len(r[0]) for r in rows)
        awidth = max(len(r[1]) for r in rows)
        lines = []
        for text, action, f in rows:
            line = f"{text.ljust(width)}  {action.ljust(awidth)}"
            if f is not None:
                line += f"  f = {format_rational(f)}"
            lines.append(line.rstrip())
        return "\n".join(lines)


def _f_or_none(M: Multiset, with_f: bool) -> Fraction | None:
    if not with_f:
        return None
    _even_size(M.n, MAX_CHECK_SIZE)
    return f_value(M)


def balance_signs(M: Multiset, with_f: bool = False) -> ReductionChain:
    """Average across signs until there are n/2 negatives and n/2 positives.

    With more positives, each step averages the most negative element with
    the least positive one (mirrored when negatives are in excess).
    """
    if M.n % 2:
        raise DomainError(f"sign balancing needs an even size, got {M.n}")
    if M.n_zero:
        raise DomainError(
            f"multiset contains {M.n_zero} zero(s); sign balancing needs every element nonzero "
            "(perturb the zeros or remove them in pairs)"
        )
    chain = ReductionChain(M, _f_or_none(M, with_f))
    steps = []
    current = M
    while current.n_plus != current.n_minus:
        neg = [x for x in current.elements if x < 0]
        pos = [x for x in current.elements if x > 0]
        a, b = (neg[0], pos[0]) if current.n_plus > current.n_minus else (neg[-1], pos[-1])
        current = average_pair(current, a, b)
        steps.append(ReductionStep(current, (a, b), _f_or_none(current, with_f)))
    if steps and not current.mu > M.mu / 2:
        raise InvariantViolation(f"balanced mu {current.mu} is not above half of {M.mu}")
    return chain.extend(steps)


def _spread(values: list[Fraction]) -> Fraction:
    return values[-1] - values[0] if values else Fraction(0)


def reduce_to_binary(M: Multiset, epsilon=0, with_f: bool = False, max_steps: int = MAX_STEPS) -> ReductionChain:
    """Balance signs, then average within sign classes until both are nearly uniform.

    Each same-sign step averages the minimum and maximum of whichever class
    currently has the larger spread; it stops when both spreads are at most
    ``epsilon``.  With ``epsilon = 0`` this only terminates when exact
    uniformity is reachable, so ``max_steps`` guards it.
    """
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise DomainError("epsilon must be nonnegative")
    chain = balance_signs(M, with_f)
    current = chain.final
    steps = []
    while True:
        neg = [x for x in current.elements if x < 0]
        pos = [x for x in current.elements if x > 0]
        spread_neg, spread_pos = _spread(neg), _spread(pos)
        if max(spread_neg, spread_pos) <= epsilon:
            break
        if len(chain.steps) + len(steps) >= max_steps:
            raise RefusalError(
                f"reduction did not reach spread {format_rational(epsilon)} within {max_steps} steps "
                f"(residual spread {format_rational(max(spread_neg, spread_pos))})"
            )
        cls = neg if spread_neg >= spread_pos else pos
        a, b = cls[0], cls[-1]
        current = average_pair(current, a, b)
        steps.append(ReductionStep(current, (a, b), _f_or_none(current, with_f)))
    return chain.extend(steps)


def scaling_check(M: Multiset, factor) -> tuple[Fraction, Fraction]:
    """(f(factor * M), factor * f(M))."""
    factor = Fraction(factor)
    if factor <= 0:
        raise DomainError("scaling factor must be positive")
    _even_size(M.n, MAX_CHECK_SIZE)
    return f_value(M.scale(factor)), factor * f_value(M)
