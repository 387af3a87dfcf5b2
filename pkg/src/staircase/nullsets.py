"""Closed Lebesgue-null subsets of [0, 1] and nested chains of them.

A :class:`ClosedNullSet` is a finite union of generators:

* :class:`Point` -- a single rational point;
* :class:`Grid` -- the finite point set ``{k/q : 0 <= k <= q}``;
* :class:`AffineCantor` -- the ternary Cantor set mapped onto ``[a, b]``.

All queries (membership, nearest point on either side, distance, gap
component) are exact on rational inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from .errors import DomainError, ScanDepthExceeded, SpecError
from .foundation import render_rational

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


def ternary_gap(t: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
    """Locate ``t`` in ``[0, 1]`` relative to the ternary Cantor set.

    Returns None when ``t`` is in the Cantor set, otherwise the removed open
    middle-third interval ``(u, v)`` that contains ``t``; ``u`` and ``v`` are
    themselves Cantor points.
    """
    offset = Fraction(0)
    scale = Fraction(1)
    s = t
    seen = set()
    while True:
        if s == 0 or s == 1:
            return None
        # a rational has an eventually periodic ternary expansion
        if s in seen:
            return None
        seen.add(s)
        if s <= ONE_THIRD:
            s = 3 * s
            scale /= 3
        elif s >= TWO_THIRDS:
            offset += 2 * scale / 3
            s = 3 * s - 2
            scale /= 3
        else:
            return offset + scale / 3, offset + 2 * scale / 3


@dataclass(frozen=True)
class Point:
    q: Fraction

    @property
    def hull(self):
        return self.q, self.q

    def contains(self, x: Fraction) -> bool:
        return x == self.q

    def below(self, x: Fraction) -> Optional[Fraction]:
        return self.q if self.q <= x else None

    def above(self, x: Fraction) -> Optional[Fraction]:
        return self.q if self.q >= x else None

    def to_json(self):
        return render_rational(self.q)


@dataclass(frozen=True)
class Grid:
    """All multiples of ``1/q`` in ``[0, 1]`` (a finite point set)."""

    q: int

    hull = (Fraction(0), Fraction(1))

    def contains(self, x: Fraction) -> bool:
        n, d = x.numerator, x.denominator
        return 0 <= n <= d and (n * self.q) % d == 0

    def below(self, x: Fraction) -> Optional[Fraction]:
        n, d = x.numerator, x.denominator
        if n < 0:
            return None
        if n >= d:
            return Fraction(1)
        return Fraction(n * self.q // d, self.q)

    def above(self, x: Fraction) -> Optional[Fraction]:
        n, d = x.numerator, x.denominator
        if n > d:
            return None
        if n <= 0:
            return Fraction(0)
        return Fraction(-(-n * self.q // d), self.q)


@dataclass(frozen=True)
class AffineCantor:
    """Image of the ternary Cantor set under ``t -> a + (b - a) t``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if not (0 <= self.a < self.b <= 1):
            raise DomainError(f"AffineCantor needs 0 <= a < b <= 1, got ({self.a}, {self.b})")

    @property
    def hull(self):
        return self.a, self.b

    def _gap(self, x: Fraction):
        gap = ternary_gap((x - self.a) / (self.b - self.a))
        if gap is None:
            return None
        width = self.b - self.a
        return self.a + width * gap[0], self.a + width * gap[1]

    def contains(self, x: Fraction) -> bool:
        return self.a <= x <= self.b and self._gap(x) is None

    def below(self, x: Fraction) -> Optional[Fraction]:
        if x < self.a:
            return None
        if x >= self.b:
            return self.b
        gap = self._gap(x)
        return x if gap is None else gap[0]

    def above(self, x: Fraction) -> Optional[Fraction]:
        if x > self.b:
            return None
        if x <= self.a:
            return self.a
        gap = self._gap(x)
        return x if gap is None else gap[1]

    def to_json(self):
        return {"a": render_rational(self.a), "b": render_rational(self.b)}


Generator = Union[Point, Grid, AffineCantor]


def _check_unit(x: Fraction) -> None:
    if not (0 <= x <= 1):
        raise DomainError(f"point {x} outside [0, 1]")


@dataclass(frozen=True)
class ClosedNullSet:
    generators: Tuple[Generator, ...] = ()

    def __post_init__(self):
        # grids are queried in integer arithmetic; they dominate dense chains
        object.__setattr__(self, "_grids", tuple(g.q for g in self.generators
                                                 if isinstance(g, Grid)))
        object.__setattr__(self, "_others", tuple(g for g in self.generators
                                                  if not isinstance(g, Grid)))

    def __iter__(self):
        return iter(self.generators)

    def __bool__(self):
        return bool(self.generators)

    def contains(self, x: Fraction) -> bool:
        n, d = x.numerator, x.denominator
        if 0 <= n <= d and any((n * q) % d == 0 for q in self._grids):
            return True
        return any(g.contains(x) for g in self._others)

    def _grid_below(self, x: Fraction) -> Optional[Fraction]:
        n, d = x.numerator, x.denominator
        if not self._grids or n < 0:
            return None
        if n >= d:
            return Fraction(1)
        bk, bq = 0, 1
        for q in self._grids:
            k = n * q // d
            if k * bq > bk * q:
                bk, bq = k, q
        return Fraction(bk, bq)

    def _grid_above(self, x: Fraction) -> Optional[Fraction]:
        n, d = x.numerator, x.denominator
        if not self._grids or n > d:
            return None
        if n <= 0:
            return Fraction(0)
        bk, bq = 1, 1
        for q in self._grids:
            k = -(-n * q // d)
            if k * bq < bk * q:
                bk, bq = k, q
        return Fraction(bk, bq)

    def below(self, x: Fraction) -> Optional[Fraction]:
        """Largest point of the set that is ``<= x``."""
        best = self._grid_below(x)
        for g in self._others:
            p = g.below(x)
            if p is not None and (best is None or p > best):
                best = p
        return best

    def above(self, x: Fraction) -> Optional[Fraction]:
        """Smallest point of the set that is ``>= x``."""
        best = self._grid_above(x)
        for g in self._others:
            p = g.above(x)
            if p is not None and (best is None or p < best):
                best = p
        return best

    def distance(self, x: Fraction) -> Optional[Fraction]:
        """Exact distance from ``x`` to the set, None for the empty set."""
        lo = self.below(x)
        hi = self.above(x)
        cands = [x - lo] if lo is not None else []
        if hi is not None:
            cands.append(hi - x)
        return min(cands) if cands else None

    def restricted(self, lo: Fraction, hi: Fraction) -> "ClosedNullSet":
        """Generators whose hull meets ``[lo, hi]``; same trace on that interval."""
        if all(g.hull[0] <= hi and g.hull[1] >= lo for g in self._others):
            return self
        return ClosedNullSet(tuple(
            g for g in self.generators if g.hull[0] <= hi and g.hull[1] >= lo))

    def union(self, other: Iterable[Generator]) -> "ClosedNullSet":
        return ClosedNullSet(_simplify(self.generators + tuple(other)))


def _simplify(gens: Tuple[Generator, ...]) -> Tuple[Generator, ...]:
    """Drop generators contained in another one; keeps first-seen order."""
    grids = [g.q for g in gens if isinstance(g, Grid)]
    out = []
    seen = set()
    for g in gens:
        if g in seen:
            continue
        if isinstance(g, Grid) and any(q != g.q and q % g.q == 0 for q in grids):
            continue
        if isinstance(g, Point) and any((g.q * q).denominator == 1 for q in grids):
            continue
        seen.add(g)
        out.append(g)
    return tuple(out)


def contains(s: ClosedNullSet, x: Fraction) -> bool:
    _check_unit(x)
    return s.contains(x)


def dist_to(s: ClosedNullSet, x: Fraction) -> Fraction:
    _check_unit(x)
    d = s.distance(x)
    if d is None:
        raise DomainError("distance to the empty set is undefined")
    return d


def gap_component(s: ClosedNullSet, x: Fraction) -> Tuple[Fraction, Fraction]:
    """The component ``(a, b)`` of ``[0, 1] \\ s`` containing ``x``."""
    _check_unit(x)
    if s.contains(x):
        raise DomainError(f"{x} lies in the set; it has no gap component")
    a = s.below(x)
    b = s.above(x)
    if a is None or b is None:
        raise DomainError("gap_component needs a set containing 0 and 1")
    return a, b


def clear_subinterval(J: Tuple[Fraction, Fraction], avoid: ClosedNullSet,
                      scan_depth_cap: int = 48,
                      margin: Fraction = Fraction(1, 2)) -> Tuple[Fraction, Fraction]:
    """A closed interval inside the interior of ``J`` that misses ``avoid``.

    Candidate centres run over the dyadic grid of ``J`` coarse to fine
    (depth 1, 2, ...; odd multiples ascending).  The first centre ``c`` with
    positive clearance ``d`` (distance to ``avoid`` and to the ends of ``J``)
    yields ``[c - d*margin/2, c + d*margin/2]``, clipped to length ``|J|/4``.
    """
    left, right = J
    length = right - left
    if length <= 0:
        raise DomainError("J must be nondegenerate")
    local = avoid.restricted(left, right)
    half_cap = length / 8
    for depth in range(1, scan_depth_cap + 1):
        step = length / 2 ** depth
        for k in range(1, 2 ** depth, 2):
            c = left + k * step
            d = min(c - left, right - c)
            dist = local.distance(c)
            if dist is not None:
                d = min(d, dist)
            if d > 0:
                half = min(d * margin / 2, half_cap)
                return c - half, c + half
    raise ScanDepthExceeded(
        f"no clear centre in [{left}, {right}] within scan depth {scan_depth_cap}")


STREAM_KINDS = ("none", "rationals")


@dataclass(frozen=True)
class LevelChain:
    """The nested family ``F_1 <= F_2 <= ...`` whose union is ``M``.

    ``levels[i]`` lists the generators *introduced* at level ``i + 1``; the
    level sets are cumulative.  Past the finite levels the chain either
    stabilizes or keeps growing through the ``"rationals"`` stream (level
    ``n >= 2`` adds ``Grid(2n-2)`` and ``Grid(2n-1)``) and/or ``densify``
    (level ``n`` adds ``Grid(2**n)``).
    """

    levels: Tuple[Tuple[Generator, ...], ...] = ()
    stream: str = "none"
    densify: bool = False
    stream_level_cap: int = 64
    scan_depth_cap: int = 48
    _memo: Dict[int, ClosedNullSet] = field(default_factory=dict, compare=False,
                                            hash=False, repr=False)

    def __post_init__(self):
        if self.stream not in STREAM_KINDS:
            raise SpecError("stream.kind", f"unknown stream kind {self.stream!r}")
        for i, gens in enumerate(self.levels):
            for g in gens:
                if isinstance(g, Grid):
                    continue
                lo, hi = g.hull
                if lo < 0 or hi > 1:
                    raise SpecError(f"levels[{i}]", "generator outside [0, 1]")
        if not self.levels and self.stream == "none":
            raise SpecError("levels", "a chain needs at least one level")
        first = self.level(1)
        if not (first.contains(Fraction(0)) and first.contains(Fraction(1))):
            raise SpecError("levels[0].points", "level 1 must contain 0 and 1")

    @property
    def finite_depth(self) -> int:
        return len(self.levels)

    @property
    def stabilizes(self) -> bool:
        return self.stream == "none" and not self.densify

    def canonical(self, n: int) -> int:
        """Smallest level index whose set equals ``F_n``."""
        if n < 1:
            raise DomainError("levels are numbered from 1")
        if self.stabilizes:
            return min(n, self.finite_depth)
        return n

    def new_generators(self, n: int) -> Tuple[Generator, ...]:
        gens = tuple(self.levels[n - 1]) if n <= self.finite_depth else ()
        if self.stream == "rationals":
            gens += (Grid(1),) if n == 1 else (Grid(2 * n - 2), Grid(2 * n - 1))
        if self.densify:
            gens += (Grid(2 ** n),)
        return gens

    def level(self, n: int) -> ClosedNullSet:
        """The cumulative set ``F_n``."""
        n = self.canonical(n)
        memo = self._memo
        if n in memo:
            return memo[n]
        start = max((k for k in memo if k < n), default=0)
        current = memo.get(start, ClosedNullSet())
        for k in range(start + 1, n + 1):
            current = current.union(self.new_generators(k))
            memo[k] = current
        return current
