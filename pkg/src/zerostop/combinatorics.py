"""Closed-form probabilities, payoff bounds and binomial identities.

Conventions: ``m`` is the half-length (the binary game has ``n = 2m``
cards, ``m`` of each sign), and a lattice path steps right on a revealed
-1 and up on a revealed +1.  The path "reaches line t" when it touches
``y = x - t``, i.e. when the running count of -1's exceeds the count of
+1's by ``t``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError, RefusalError
from .numerics import binomial

MOSER_EXACT_MAX = 20
MOSER_DECIMAL_PRECISION = 40


def _require_positive(name: str, value: int) -> None:
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")


def reach_probability(m: int, t: int) -> Fraction:
    """Probability that a uniform path in the m-by-m square touches y = x - t."""
    _require_positive("m", m)
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return Fraction(binomial(2 * m, m - t), binomial(2 * m, m))


def count_reaching_paths(m: int, t: int) -> int:
    """Count paths from (0,0) to (m,m) touching y = x - t by brute force.

    Independent of the reflection-principle formula; only meant for small m.
    """
    count = 0
    for ups in itertools.combinations(range(2 * m), m):
        up_set = set(ups)
        lead = 0
        for step in range(2 * m):
            lead += -1 if step in up_set else 1
            if lead >= t:
                count += 1
                break
    return count


def threshold_value(m: int) -> int:
    """floor(sqrt((m+1)/2)) in integer arithmetic."""
    _require_positive("m", m)
    # sqrt(x/2) >= k  <=>  x >= 2k^2  <=>  x // 2 >= k^2
    return math.isqrt((m + 1) // 2)


def w1_exact(m: int) -> Fraction:
    """Exact expected payoff of the threshold rule with the standard threshold."""
    t = threshold_value(m)
    return t * reach_probability(m, t)


def w1_lower_bound(m: int) -> float:
    """Analytic lower bound t * exp(-2t^2/(m+1)) on :func:`w1_exact`.

    Rounded down by a few ulps so the float stays on the safe side of the
    real-valued bound.
    """
    t = threshold_value(m)
    value = t * math.exp(-2.0 * t * t / (m + 1))
    for _ in range(4):
        value = math.nextafter(value, -math.inf)
    return value


def payoff_upper_bound(m: int) -> Fraction:
    """Sum over t = 1..m of the reach probabilities."""
    _require_positive("m", m)
    total = sum(binomial(2 * m, m - t) for t in range(1, m + 1))
    return Fraction(total, binomial(2 * m, m))


def payoff_upper_bound_closed(m: int) -> Fraction:
    """2^(2m-1) / C(2m, m) - 1/2."""
    _require_positive("m", m)
    return Fraction(2 ** (2 * m - 1), binomial(2 * m, m)) - Fraction(1, 2)


def w3_closed_form(m: int) -> Fraction:
    """Stop-in-the-middle expectation for n = 4m: 2m C(2m-1,m-1)^2 / C(4m,2m)."""
    _require_positive("m", m)
    return Fraction(2 * m * binomial(2 * m - 1, m - 1) ** 2, binomial(4 * m, 2 * m))


def w3_exact(n: int) -> Fraction:
    """Stop-in-the-middle expectation on n/2 copies each of -1 and +1, any even n.

    The first half holds k plus-ones with hypergeometric probability
    C(h,k) C(h,h-k) / C(n,h) (h = n/2) and then sums to 2k - h.
    """
    if n < 2 or n % 2:
        raise DomainError(f"w3_exact needs an even n >= 2, got {n}")
    h = n // 2
    total = sum((2 * k - h) * binomial(h, k) * binomial(h, h - k) for k in range(h + 1) if 2 * k > h)
    return Fraction(total, binomial(n, h))


def lemma2_sides(m: int) -> tuple[int, int]:
    """Both sides of sum_k 2k C(2m,m-k) C(2m,m+k) = 2m C(2m-1,m-1)^2."""
    _require_positive("m", m)
    lhs = sum(2 * k * binomial(2 * m, m - k) * binomial(2 * m, m + k) for k in range(1, m + 1))
    rhs = 2 * m * binomial(2 * m - 1, m - 1) ** 2
    return lhs, rhs


def vandermonde_check(s: int, t: int, r: int) -> tuple[int, int]:
    """Both sides of sum_i C(s,i) C(t,r-i) = C(s+t, r)."""
    if min(s, t, r) < 0:
        raise DomainError("vandermonde_check arguments must be nonnegative")
    lhs = sum(binomial(s, i) * binomial(t, r - i) for i in range(r + 1))
    return lhs, binomial(s + t, r)


@dataclass(frozen=True)
class MoserTable:
    """E_0..E_n of the uniform keep-or-redraw game.

    ``exact`` is False when the values were produced in decimal mode; they
    are still stored as Fractions (exact images of the decimals).
    """

    values: tuple[Fraction, ...]
    exact: bool

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def moser_table(n_max: int, exact: bool | None = None) -> MoserTable:
    """Iterate E_{n+1} = (1 + E_n^2) / 2 from E_0 = 0.

    Exact denominators are 2^(2^n - 1), so exact mode stops at
    ``MOSER_EXACT_MAX``.  ``exact=None`` picks exact mode when it fits.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if exact is None:
        exact = n_max <= MOSER_EXACT_MAX
    if exact:
        if n_max > MOSER_EXACT_MAX:
            raise RefusalError(
                f"exact Moser table limited to n <= {MOSER_EXACT_MAX} "
                f"(E_n has a 2^(2^n - 1) denominator); request decimal mode"
            )
        values = [Fraction(0)]
        for _ in range(n_max):
            values.append((1 + values[-1] ** 2) / 2)
        return MoserTable(tuple(values), True)
    with localcontext() as ctx:
        ctx.prec = MOSER_DECIMAL_PRECISION
        e = Decimal(0)
        values = [Fraction(0)]
        for _ in range(n_max):
            e = (1 + e * e) / 2
            values.append(Fraction(e))
    return MoserTable(tuple(values), False)
