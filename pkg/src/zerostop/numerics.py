"""Exact integer and rational primitives.

Every expected value in the package is a :class:`fractions.Fraction`;
floating point appears only in Monte Carlo aggregation and in the one
documented analytic lower bound.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction

from .errors import ParseError, ZeroDenominatorError

Rational = Fraction

MAX_DIGITS = 64

_INT_RE = re.compile(r"[+-]?\d+")
_DECIMAL_RE = re.compile(r"([+-]?)(\d*)(?:\.(\d*))?")


@functools.lru_cache(maxsize=65536)
def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero outside ``0 <= k <= n``.

    Uses the multiplicative recurrence C(n, i+1) = C(n, i) * (n - i) / (i + 1);
    the division is exact at every step because each partial product is
    itself a binomial coefficient.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    acc = 1
    for i in range(k):
        acc = acc * (n - i) // (i + 1)
    return acc


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a finite decimal such as ``"-2.5"`` exactly."""
    raw = text
    text = text.strip().replace("−", "-")
    if not text:
        raise ParseError(f"empty numeric token {raw!r}")
    if "/" in text:
        num, _, den = text.partition("/")
        num, den = num.strip(), den.strip()
        if not _INT_RE.fullmatch(num):
            raise ParseError(f"bad numerator {num!r} in {raw!r}")
        if not _INT_RE.fullmatch(den) or den.startswith(("-", "+")):
            raise ParseError(f"bad denominator {den!r} in {raw!r}")
        if int(den) == 0:
            raise ZeroDenominatorError(f"zero denominator in {raw!r}")
        return Fraction(int(num), int(den))
    match = _DECIMAL_RE.fullmatch(text)
    if match is None or not (match.group(2) or match.group(3)):
        raise ParseError(f"bad numeric token {raw!r}")
    sign, whole, frac = match.group(1), match.group(2) or "0", match.group(3) or ""
    value = Fraction(int(whole + frac), 10 ** len(frac))
    return -value if sign == "-" else value


def format_rational(x: Fraction, always_denominator: bool = False) -> str:
    """Canonical ``p/q`` text; the denominator is dropped when it is 1."""
    x = Fraction(x)
    if x.denominator == 1 and not always_denominator:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_decimal(x: Fraction, digits: int, rounding: str = "half-even") -> str:
    """Render ``x`` with exactly ``digits`` fractional digits.

    ``rounding`` is ``"half-even"`` (default) or ``"down"`` (truncate
    toward zero, i.e. "the first ``digits`` digits").
    """
    if not 0 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be in 0..{MAX_DIGITS}, got {digits}")
    if rounding not in ("half-even", "down"):
        raise ValueError(f"unknown rounding mode {rounding!r}")
    x = Fraction(x)
    negative = x < 0
    num, den = abs(x.numerator) * 10**digits, x.denominator
    q, r = divmod(num, den)
    if rounding == "half-even" and (2 * r > den or (2 * r == den and q % 2 == 1)):
        q += 1
    body = str(q).rjust(digits + 1, "0")
    text = body if digits == 0 else f"{body[:-digits]}.{body[-digits:]}"
    return f"-{text}" if negative and q != 0 else text
