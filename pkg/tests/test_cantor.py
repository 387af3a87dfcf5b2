import random
from fractions import Fraction

import pytest

from staircase.cantor import CantorScheme, flat_around, nu_cdf, phi_eval, scheme_node
from staircase.errors import DomainError
from staircase.nullsets import ClosedNullSet, Grid, Point

F = Fraction
EMPTY = ClosedNullSet()


def empty_scheme(lo=F(0), hi=F(1)):
    return CantorScheme((lo, hi), lambda level: EMPTY)


def avoiding(points, lo=F(0), hi=F(1)):
    """Scheme whose depth-l nodes miss the first l+1 listed points."""
    pts = list(points)
    return CantorScheme((lo, hi), lambda l: ClosedNullSet(tuple(Point(p) for p in pts[:l + 1])))


def test_node_examples():
    s = empty_scheme()
    assert scheme_node(s, "") == (F(3, 8), F(5, 8))
    # left third of the root is [3/8, 11/24]: centre 5/12, d = 1/24, half-width 1/96
    assert scheme_node(s, "L") == (F(5, 12) - F(1, 96), F(5, 12) + F(1, 96))
    root, left, lr = s.node(""), s.node("L"), s.node("LR")
    assert root[0] < left[0] < lr[0] < lr[1] < left[1] < root[1]


def test_nodes_are_deterministic():
    a, b = avoiding([F(1, 2), F(5, 12)]), avoiding([F(1, 2), F(5, 12)])
    for path in ("", "L", "R", "LR", "RRL"):
        assert a.node(path) == b.node(path)


def test_nodes_nest_shrink_and_avoid():
    pts = [F(1, 2), F(5, 12), F(7, 12), F(13, 32), F(3, 7)]
    s = avoiding(pts)
    for depth in range(0, 5):
        total = F(0)
        for i in range(2 ** depth):
            path = format(i, f"0{depth}b").replace("0", "L").replace("1", "R") if depth else ""
            u, v = s.node(path)
            total += v - u
            for p in pts[:depth + 1]:
                assert not u <= p <= v
            if path:
                pu, pv = s.node(path[:-1])
                assert pu < u < v < pv and v - u <= (pv - pu) / 3
        root = s.node("")
        assert total <= (root[1] - root[0]) * F(2, 3) ** depth


def test_nu_cdf_examples():
    s = empty_scheme()
    u, v = s.node("")
    assert nu_cdf(s, u - F(1, 100), 10) == nu_cdf(s, F(0), 3)
    assert nu_cdf(s, F(0), 3).lo == nu_cdf(s, F(0), 3).hi == 0
    assert nu_cdf(s, v + F(1, 100), 4).lo == 1
    e = nu_cdf(s, s.node("L")[1], 1)
    assert F(1, 2) in e and e.width <= F(1, 2)


def test_phi_examples_and_refinement():
    lo, hi = F(7, 20), F(2, 5)
    s = avoiding([F(3, 8)], lo, hi)
    assert phi_eval(s, lo, F(1, 10)).lo == phi_eval(s, lo, F(1, 10)).hi == lo
    assert phi_eval(s, hi, F(1, 10)).lo == hi
    rng = random.Random(5)
    for _ in range(100):
        x = lo + (hi - lo) * F(rng.randrange(10 ** 6), 10 ** 6)
        coarse = phi_eval(s, x, F(1, 2 ** 20))
        fine = phi_eval(s, x, F(1, 2 ** 40))
        assert coarse.width <= F(1, 2 ** 20) and fine.width <= F(1, 2 ** 40)
        assert fine.within(coarse)
    with pytest.raises(DomainError):
        phi_eval(s, F(1, 2), F(1, 10))


def test_phi_monotone_on_pairs():
    lo, hi = F(1, 2), F(11, 20)
    s = empty_scheme(lo, hi)
    eps = F(1, 2 ** 24)
    rng = random.Random(9)
    for _ in range(100):
        x1, x2 = sorted(lo + (hi - lo) * F(rng.randrange(10 ** 9), 10 ** 9) for _ in range(2))
        assert phi_eval(s, x1, eps).hi <= phi_eval(s, x2, eps).lo + 2 * eps


def test_one_sided_flats():
    lo, hi = F(1, 2), F(11, 20)
    s = empty_scheme(lo, hi)
    u, v = s.node("")
    eps = F(1, 2 ** 30)
    for t in (F(0), F(1, 3), F(1)):
        assert phi_eval(s, lo + (u - lo) * t, eps) == phi_eval(s, lo, eps)
        assert phi_eval(s, v + (hi - v) * t, eps) == phi_eval(s, hi, eps)


def test_local_constancy_at_avoided_points():
    lo, hi = F(0), F(1)
    obstacles = [F(1, 2), F(5, 12), F(13, 32), F(41, 96)]
    s = CantorScheme((lo, hi), lambda l: ClosedNullSet(
        tuple(Point(p) for p in obstacles) + (Grid(2 ** (l + 3)),)))
    eps = F(1, 2 ** 40)
    for q in obstacles + [F(3, 8), F(37, 64)]:
        a, b = flat_around(s, q)
        assert a < q < b
        r = min(q - a, b - q)
        left, mid, right = (phi_eval(s, q + d, eps) for d in (-r / 2, F(0), r / 2))
        assert left == mid == right and left.width == 0
