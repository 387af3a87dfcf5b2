"""The functions ``g_n`` and ``f = sum 2**-n g_n`` built from a level chain.

``g_n`` is the identity on ``F_n``.  On each gap of ``F_n`` it is pieced
together from staircases, one per partition cell, whose schemes avoid every
later level ``F_{n+l+1}`` from depth ``l`` on.  Consequently

* ``|g_n(x) - x| <= dist(x, F_n)**2``;
* ``g_n`` is locally constant at every point of ``M \\ F_n``;
* ``f`` has derivative ``2**(1-n)`` at each point first appearing in ``F_n``.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .cantor import CantorScheme, flat_around, phi_eval
from .errors import DomainError, LevelCapExceeded, NotInM
from .foundation import Enclosure, enclose_sum, pad
from .nullsets import LevelChain
from .partition import Cell, locate_cell, previous_cell


def terms_for(eps: Fraction) -> int:
    """``N = ceil(log2(2/eps))``, so the series tail ``2**-N`` is ``<= eps/2``."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    n = 1
    while Fraction(1, 2 ** n) > eps / 2:
        n += 1
    return n


class SingularFunction:
    """Evaluator for ``f`` and its summands ``g_n`` over a fixed chain."""

    def __init__(self, chain: LevelChain, scheme_cache_size: int = 65536):
        self.chain = chain
        self._schemes: "OrderedDict[Tuple[int, Fraction, Fraction], CantorScheme]" = OrderedDict()
        self._cache_size = scheme_cache_size
        self._lock = threading.Lock()

    # -- plumbing -----------------------------------------------------------

    def cell_at(self, n: int, x: Fraction) -> Optional[Cell]:
        """The partition cell used by ``g_n`` at ``x``; None when ``x`` is in ``F_n``."""
        if not 0 <= x <= 1:
            raise DomainError(f"{x} outside [0, 1]")
        F = self.chain.level(n)
        if F.contains(x):
            return None
        gap = (F.below(x), F.above(x))
        return locate_cell(gap, x)

    def scheme(self, n: int, cell: Cell) -> CantorScheme:
        k = self.chain.canonical(n)
        key = (k, cell.p_lo, cell.p_hi)
        with self._lock:
            s = self._schemes.get(key)
            if s is not None:
                self._schemes.move_to_end(key)
                return s
        chain = self.chain

        # the cell ends need no entry: every node lies inside the cell interior
        def avoid(level: int):
            return chain.level(k + level + 1)

        s = CantorScheme((cell.p_lo, cell.p_hi), avoid, chain.scan_depth_cap)
        with self._lock:
            s = self._schemes.setdefault(key, s)
            while len(self._schemes) > self._cache_size:
                self._schemes.popitem(last=False)
        return s

    # -- evaluation ---------------------------------------------------------

    def g_eval(self, n: int, x: Fraction, eps: Fraction) -> Enclosure:
        if n < 1:
            raise DomainError("levels are numbered from 1")
        if eps <= 0:
            raise DomainError("eps must be positive")
        cell = self.cell_at(n, x)
        if cell is None:
            return Enclosure.exact(x)
        return phi_eval(self.scheme(n, cell), x, eps)

    def f_eval(self, x: Fraction, eps: Fraction) -> Enclosure:
        N = terms_for(eps)
        term_eps = eps / (2 * N)
        values: Dict[int, Enclosure] = {}
        terms = []
        for n in range(1, N + 1):
            k = self.chain.canonical(n)
            if k not in values:
                values[k] = self.g_eval(k, x, term_eps)
            terms.append((Fraction(1, 2 ** n), values[k]))
        return pad(enclose_sum(terms), Fraction(0), Fraction(1, 2 ** N))

    # -- derivative data ----------------------------------------------------

    def level_of(self, a: Fraction) -> int:
        return level_of(self.chain, a)

    def claimed_derivative(self, a: Fraction) -> Fraction:
        return claimed_derivative(self.chain, a)

    def flat_radius(self, k: int, a: Fraction) -> Fraction:
        """Radius around ``a`` (not in ``F_k``) on which ``g_k`` is constant."""
        cell = self.cell_at(k, a)
        if cell is None:
            raise DomainError(f"{a} lies in F_{k}; g_{k} is not flat there")
        s = self.scheme(k, cell)
        if a == cell.p_lo:
            prev = self.scheme(k, previous_cell(cell))
            return min(a - prev.node("")[1], s.node("")[0] - a)
        flat = flat_around(s, a)
        if flat is None:
            raise DomainError(f"no flat found around {a} for g_{k}")
        return min(a - flat[0], flat[1] - a)

    def constancy_radius(self, a: Fraction) -> Fraction:
        """``rho > 0`` with every ``g_k`` (``k < level_of(a)``) constant on ``(a-rho, a+rho)``.

        Level-1 points have no earlier summands; they get the sentinel 1.
        """
        n = self.level_of(a)
        rho = Fraction(1)
        for k in range(1, n):
            rho = min(rho, self.flat_radius(k, a))
        return rho


def level_of(chain: LevelChain, a: Fraction) -> int:
    """Minimal ``n`` with ``a`` in ``F_n``."""
    if not 0 <= a <= 1:
        raise NotInM(f"{a} lies outside [0, 1]")
    if chain.stabilizes:
        limit = chain.finite_depth
    elif chain.stream == "none":
        # densify only: past the finite levels, only dyadic points are added
        limit = chain.finite_depth
        den = a.denominator
        if den & (den - 1) == 0:
            limit = max(limit, den.bit_length() - 1, 1)
    else:
        limit = chain.stream_level_cap
    for n in range(1, limit + 1):
        if chain.level(n).contains(a):
            return n
    if chain.stream != "none":
        raise LevelCapExceeded(f"{a} not found in levels 1..{limit} (stream level cap)")
    raise NotInM(f"{a} is not in M")


def claimed_derivative(chain: LevelChain, a: Fraction) -> Fraction:
    """The derivative the construction guarantees at ``a``: ``2**(1 - level_of(a))``."""
    return Fraction(1, 2 ** (level_of(chain, a) - 1))


def g_eval(sf: SingularFunction, n: int, x: Fraction, eps: Fraction) -> Enclosure:
    return sf.g_eval(n, x, eps)


def f_eval(sf: SingularFunction, x: Fraction, eps: Fraction) -> Enclosure:
    return sf.f_eval(x, eps)


def constancy_radius(sf: SingularFunction, a: Fraction) -> Fraction:
    return sf.constancy_radius(a)
