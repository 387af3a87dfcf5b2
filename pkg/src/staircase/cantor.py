"""Deterministic Cantor schemes and their staircase functions.

Inside a cell ``[p_lo, p_hi]`` a scheme is a binary tree of closed intervals.
The root is a clear subinterval of the cell; the children of a node at depth
``l`` are clear subintervals of its left and right thirds, chosen to miss the
obstruction set ``avoid(l + 1)``.  The limit set ``C`` (intersection over
depths of the union of nodes) carries the measure giving mass ``2**-l`` to
every depth-``l`` node, and the staircase is

    phi(x) = p_lo + (p_hi - p_lo) * nu(C & [p_lo, x]).

``phi`` is exactly constant off the nodes, so it is flat near every avoided
point and on ``[p_lo, left(root)]`` and ``[right(root), p_hi]``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .errors import DomainError
from .foundation import Enclosure
from .nullsets import ClosedNullSet, clear_subinterval

Interval = Tuple[Fraction, Fraction]


class CantorScheme:
    """A nested interval scheme living strictly inside ``cell``.

    ``avoid_levels(l)`` gives the closed null set that every depth-``l`` node
    must miss; it should grow with ``l``.  Nodes are memoized; the memo is a
    pure cache (same inputs always give the same interval).
    """

    def __init__(self, cell: Interval,
                 avoid_levels: Callable[[int], ClosedNullSet],
                 scan_depth_cap: int = 48):
        lo, hi = Fraction(cell[0]), Fraction(cell[1])
        if lo >= hi:
            raise DomainError("a scheme needs a nondegenerate cell")
        self.cell = (lo, hi)
        self.avoid_levels = avoid_levels
        self.scan_depth_cap = scan_depth_cap
        self._nodes: Dict[str, Interval] = {}
        self._avoid: Dict[int, ClosedNullSet] = {}

    def avoid(self, level: int) -> ClosedNullSet:
        s = self._avoid.get(level)
        if s is None:
            s = self._avoid[level] = self.avoid_levels(level)
        return s

    def node(self, path: str) -> Interval:
        got = self._nodes.get(path)
        if got is not None:
            return got
        if path == "":
            got = clear_subinterval(self.cell, self.avoid(0), self.scan_depth_cap)
        else:
            if path[-1] not in "LR":
                raise DomainError(f"bad path symbol in {path!r}")
            u, v = self.node(path[:-1])
            third = (v - u) / 3
            J = (u, u + third) if path[-1] == "L" else (v - third, v)
            got = clear_subinterval(J, self.avoid(len(path)), self.scan_depth_cap)
        self._nodes[path] = got
        return got

    def children(self, path: str) -> Tuple[Interval, Interval]:
        return self.node(path + "L"), self.node(path + "R")


def scheme_node(s: CantorScheme, path: str) -> Interval:
    return s.node(path)


def nu_cdf(s: CantorScheme, x: Fraction, depth: int) -> Enclosure:
    """Enclose ``nu(C & [p_lo, x])`` to width at most ``2**-depth``."""
    if depth < 0:
        raise DomainError("depth must be non-negative")
    u, v = s.node("")
    if x <= u:
        return Enclosure.exact(Fraction(0))
    if x >= v:
        return Enclosure.exact(Fraction(1))
    below = Fraction(0)
    mass = Fraction(1)
    path = ""
    for _ in range(depth):
        (l1, r1), (l2, r2) = s.children(path)
        half = mass / 2
        assert half + half == mass
        if x <= l1:
            return Enclosure.exact(below)
        if x < r1:
            path += "L"
        elif x <= l2:
            return Enclosure.exact(below + half)
        elif x < r2:
            below += half
            path += "R"
        else:
            return Enclosure.exact(below + mass)
        mass = half
    return Enclosure(below, below + mass)


def depth_for(width: Fraction, eps: Fraction) -> int:
    """Smallest ``l >= 0`` with ``width * 2**-l <= eps``."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    if width <= eps:
        return 0
    l = max(0, math.ceil(math.log2(width / eps)) - 1)
    while width / 2 ** l > eps:
        l += 1
    return l


def phi_eval(s: CantorScheme, x: Fraction, eps: Fraction) -> Enclosure:
    """Enclose the staircase value at ``x`` to width at most ``eps``."""
    lo, hi = s.cell
    if not lo <= x <= hi:
        raise DomainError(f"{x} outside cell [{lo}, {hi}]")
    if x == lo or x == hi:
        return Enclosure.exact(x)
    width = hi - lo
    nu = nu_cdf(s, x, depth_for(width, eps))
    return Enclosure(lo + width * nu.lo, lo + width * nu.hi)


def flat_around(s: CantorScheme, x: Fraction, max_depth: int = 256) -> Optional[Interval]:
    """A closed interval containing ``x`` on which the staircase is constant.

    ``x`` lies strictly inside the returned interval unless ``x`` is a cell
    end.  Returns None if ``x`` is still inside a node at ``max_depth`` (so
    ``x`` may belong to the limit set).
    """
    lo, hi = s.cell
    u, v = s.node("")
    if x < u:
        return lo, u
    if x > v:
        return v, hi
    left_free, right_free = lo, hi
    path = ""
    for _ in range(max_depth):
        (l1, r1), (l2, r2) = s.children(path)
        if x < l1:
            return left_free, l1
        if x <= r1:
            right_free = l2
            path += "L"
        elif x < l2:
            return r1, l2
        elif x <= r2:
            left_free = r1
            path += "R"
        else:
            return r2, right_free
    return None
