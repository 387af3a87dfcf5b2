"""Exact rational scalars and closed rational enclosures.

Every certified computation in the package runs on :class:`fractions.Fraction`
(always stored in lowest terms, so equality and hashing are canonical).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal digits, optional leading ``-``)."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted on certified paths")
    return Fraction(value)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain some value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Fraction) -> "Enclosure":
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def within(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def render(self) -> str:
        return f"[{render_rational(self.lo)}, {render_rational(self.hi)}]"


def enclose_sum(terms: Iterable[Tuple[Fraction, Enclosure]]) -> Enclosure:
    """Enclose ``sum(w * v)`` for non-negative weights ``w``."""
    lo = Fraction(0)
    hi = Fraction(0)
    for weight, enc in terms:
        if weight < 0:
            raise ValueError("weights must be non-negative")
        lo += weight * enc.lo
        hi += weight * enc.hi
    return Enclosure(lo, hi)


def pad(enc: Enclosure, tail_lo: Fraction, tail_hi: Fraction) -> Enclosure:
    if tail_lo > tail_hi:
        raise ValueError("tail_lo must not exceed tail_hi")
    return Enclosure(enc.lo + tail_lo, enc.hi + tail_hi)
