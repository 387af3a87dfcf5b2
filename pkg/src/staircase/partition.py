"""Infinite partitions of an open gap ``(a, b)`` whose cells shrink quadratically.

Base points are ``a + (b-a) 2**-i`` (i >= 1) and ``b - (b-a) 2**-i`` (i >= 2).
Base interval ``z`` is ``[a + w/2**(1-z), a + w/2**-z]`` for ``z <= -1`` and
``[b - w/2**(z+1), b - w/2**(z+2)]`` for ``z >= 0`` (``w = b - a``).  Each base
interval of length ``L`` is cut into ``k = floor(L/m) + 1`` equal cells, where
``m = min((p*_z - a)**2, (b - p*_{z+1})**2)``, so every cell satisfies

    p_hi - p_lo < min((p_lo - a)**2, (b - p_hi)**2)

strictly.  Nothing is materialized; cells are computed on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from .errors import DomainError

Gap = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Cell:
    gap: Gap
    p_lo: Fraction
    p_hi: Fraction
    base_index: int
    sub_index: int

    @property
    def width(self) -> Fraction:
        return self.p_hi - self.p_lo


def _floor_log2(r: Fraction) -> int:
    """``floor(log2(r))`` for ``r >= 1``, exactly."""
    i = math.floor(r).bit_length() - 1
    return i


def base_interval(gap: Gap, z: int) -> Tuple[Fraction, Fraction]:
    a, b = gap
    w = b - a
    if z <= -1:
        i = -z
        return a + w / 2 ** (i + 1), a + w / 2 ** i
    i = z + 1
    return b - w / 2 ** i, b - w / 2 ** (i + 1)


def base_split(gap: Gap, z: int) -> Tuple[Fraction, Fraction, int]:
    """``(start, sublength, k)`` of the finite refinement of base interval ``z``."""
    a, b = gap
    lo, hi = base_interval(gap, z)
    length = hi - lo
    m = min((lo - a) ** 2, (b - hi) ** 2)
    k = math.floor(length / m) + 1
    return lo, length / k, k


def cell_at(gap: Gap, z: int, j: int) -> Cell:
    lo, sub, k = base_split(gap, z)
    if not 0 <= j < k:
        raise DomainError(f"sub-index {j} outside 0..{k - 1}")
    return Cell(gap, lo + j * sub, lo + (j + 1) * sub, z, j)


def locate_cell(gap: Gap, x: Fraction) -> Cell:
    """The unique half-open cell ``[p_lo, p_hi)`` containing ``x``."""
    a, b = gap
    if not a < x < b:
        raise DomainError(f"{x} is not inside the open gap ({a}, {b})")
    w = b - a
    t = (x - a) / w
    if t < Fraction(1, 2):
        i = _floor_log2(1 / t)
        # 2**-(i+1) < t <= 2**-i; the left end belongs to interval i-1
        if t == Fraction(1, 2 ** i):
            i -= 1
        z = -i
    else:
        s = 1 - t
        z = _floor_log2(1 / s)
        z -= 1
    lo, sub, k = base_split(gap, z)
    j = math.floor((x - lo) / sub)
    return Cell(gap, lo + j * sub, lo + (j + 1) * sub, z, j)


def previous_cell(cell: Cell) -> Cell:
    """The cell whose right end is ``cell.p_lo``."""
    if cell.sub_index > 0:
        return cell_at(cell.gap, cell.base_index, cell.sub_index - 1)
    z = cell.base_index - 1
    _, _, k = base_split(cell.gap, z)
    return cell_at(cell.gap, z, k - 1)


def next_cell(cell: Cell) -> Cell:
    _, _, k = base_split(cell.gap, cell.base_index)
    if cell.sub_index + 1 < k:
        return cell_at(cell.gap, cell.base_index, cell.sub_index + 1)
    return cell_at(cell.gap, cell.base_index + 1, 0)


def satisfies_eq1(cell: Cell) -> bool:
    a, b = cell.gap
    return (a < cell.p_lo < cell.p_hi < b
            and cell.p_hi - cell.p_lo < min((cell.p_lo - a) ** 2, (b - cell.p_hi) ** 2))


def check_eq1(gap: Gap, cells: Iterable[Cell]) -> bool:
    """True iff every cell obeys the strict quadratic width bound in ``gap``."""
    gap = tuple(gap)
    return all(tuple(c.gap) == gap and satisfies_eq1(c) for c in cells)
