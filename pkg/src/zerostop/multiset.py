"""Zero-sum multisets, payoff conventions and multiset file loading."""

from __future__ import annotations

import enum
import functools
import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import DomainError, NonZeroSumError, ParseError
from .numerics import format_rational, parse_rational


class PayoffMode(enum.Enum):
    """Which part of the sequence the player collects when stopping.

    SUFFIX pays the sum of the unrevealed elements; PREFIX (the dual game)
    pays the sum of the revealed ones.
    """

    SUFFIX = "suffix"
    PREFIX = "prefix"

    def payoff(self, sequence, stop_index: int) -> Fraction:
        part = sequence[stop_index:] if self is PayoffMode.SUFFIX else sequence[:stop_index]
        return Fraction(sum(part, Fraction(0)))


@functools.total_ordering
@dataclass(frozen=True, eq=True)
class Multiset:
    """Sorted, exactly zero-sum collection of rationals."""

    elements: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        elements = tuple(sorted(Fraction(v) for v in values))
        residual = sum(elements, Fraction(0))
        if residual != 0:
            raise NonZeroSumError(residual)
        object.__setattr__(self, "elements", elements)

    def __lt__(self, other: "Multiset") -> bool:
        return self.elements < other.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.elements if x > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.elements if x < 0)

    @property
    def n_zero(self) -> int:
        return self.n - self.n_plus - self.n_minus

    @property
    def mu(self) -> Fraction:
        """Average absolute value."""
        if not self.elements:
            return Fraction(0)
        return sum((abs(x) for x in self.elements), Fraction(0)) / self.n

    @property
    def is_binary(self) -> bool:
        return all(x == 1 or x == -1 for x in self.elements)

    def value_counts(self) -> tuple[tuple[Fraction, int], ...]:
        """Distinct values in ascending order with their multiplicities."""
        return tuple(sorted(Counter(self.elements).items()))

    def scale(self, factor) -> "Multiset":
        factor = Fraction(factor)
        return Multiset(factor * x for x in self.elements)

    def __neg__(self) -> "Multiset":
        return Multiset(-x for x in self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(format_rational(x) for x in self.elements) + "}"

    @classmethod
    def balanced(cls, n: int, magnitude=1) -> "Multiset":
        """n/2 copies each of -magnitude and +magnitude."""
        if n < 0 or n % 2:
            raise DomainError(f"balanced multiset needs an even size, got {n}")
        magnitude = Fraction(magnitude)
        return cls([-magnitude] * (n // 2) + [magnitude] * (n // 2))


def _parse_tokens(text: str) -> list[Fraction]:
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            items = json.loads(stripped, parse_float=str, parse_int=str)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON multiset: {exc}") from None
        if not isinstance(items, list):
            raise ParseError("JSON multiset must be an array")
        values = []
        for pos, item in enumerate(items):
            if not isinstance(item, str):
                raise ParseError(f"JSON item {pos}: expected number or string, got {item!r}")
            try:
                values.append(parse_rational(item))
            except ParseError as exc:
                raise ParseError(f"JSON item {pos}: {exc}") from None
        return values
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for token in line.split("#", 1)[0].split():
            try:
                values.append(parse_rational(token))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
    return values


def load_multiset(source: str | os.PathLike) -> Multiset:
    """Load a multiset from a file path or from literal text.

    Accepts rational/decimal tokens separated by newlines or spaces
    (``#`` starts a comment)
    or a JSON array of numbers/strings.
    """
    if isinstance(source, os.PathLike) or ("\n" not in str(source) and Path(str(source)).is_file()):
        text = Path(source).read_text()
    else:
        text = str(source)
    return Multiset(_parse_tokens(text))
