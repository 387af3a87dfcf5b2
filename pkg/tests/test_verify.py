from fractions import Fraction

import pytest

from staircase.errors import DomainError, NotInM
from staircase.foundation import Enclosure
from staircase.verify import (check_derivative, check_growth_bound, check_monotone,
                              check_partition, check_singular, derivative_points, m_points,
                              random_rationals)

F = Fraction


def test_random_rationals_reproducible():
    a, b = random_rationals(7, 5), random_rationals(7, 5)
    assert a == b
    assert all(0 <= x <= 1 and (x * 2 ** 64).denominator == 1 for x in a)


def test_growth_report(midpoint):
    r = check_growth_bound(midpoint, 2, 20, 1, extra_points=[F(3, 8), F(1, 2)])
    assert r.passed
    first, second = r.cases[0], r.cases[1]
    assert first["bound"] == F(1, 64) + F(1, 2 ** 30)
    assert second["observed"] == 0 and second["verdict"] == "pass"


def test_growth_catches_bad_evaluator(midpoint):
    bad = lambda n, x, eps: Enclosure(x + F(1, 4), x + F(1, 4))
    r = check_growth_bound(midpoint, 2, 10, 1, evaluator=bad)
    assert not r.passed and r.summary()["verdict"] == "fail"


def test_growth_rejects_empty(midpoint):
    with pytest.raises(DomainError):
        check_growth_bound(midpoint, 1, 0, 0)


def test_derivative_midpoint(midpoint):
    r = check_derivative(midpoint, F(1, 2), [12])
    assert r.passed
    cases = [c for c in r.cases if c["verdict"] == "pass"]
    assert len(cases) == 2
    for c in cases:
        assert c["bound"] == F(1, 2 ** 12) + 2 * F(1, 2 ** 40) * 2 ** 12
        assert c["observed"] <= c["bound"]


def test_derivative_left_endpoint(midpoint):
    r = check_derivative(midpoint, F(0), [10])
    verdicts = sorted(c["verdict"] for c in r.cases)
    assert verdicts == ["pass", "skipped-outside"]
    assert r.params["claimed"] == 1


def test_derivative_filters_large_h(midpoint):
    r = check_derivative(midpoint, F(1, 2), [2, 3])
    assert {c["verdict"] for c in r.cases} == {"filtered"}


def test_derivative_not_in_m(midpoint):
    with pytest.raises(NotInM):
        check_derivative(midpoint, F(1, 3), [10])


def test_singular(midpoint):
    with pytest.raises(DomainError):
        check_singular(midpoint, 0, 0)
    r = check_singular(midpoint, 10, 3, threshold=F(2))
    assert r.passed and r.summary()["heuristic"]
    assert "heuristic" in r.to_json()


def test_monotone(midpoint, midpoint_dense):
    r = check_monotone(midpoint, [(F(0), F(1))])
    assert r.cases[0]["verdict"] == "strict" and r.cases[0]["bound"] == 8
    r = check_monotone(midpoint_dense, [(F(1, 4), F(3, 8))], max_bits=60, require_strict=True)
    assert r.passed
    with pytest.raises(DomainError):
        check_monotone(midpoint, [(F(1, 2), F(1, 2))])


def test_partition_report(cantor_chain):
    assert check_partition(cantor_chain, [1, 4], 30, 2).passed


def test_report_json_is_deterministic(midpoint):
    a = check_growth_bound(midpoint, 1, 10, 5).to_json()
    b = check_growth_bound(midpoint, 1, 10, 5).to_json()
    assert a == b
    assert '"check": "growth"' in a


def test_m_points(dense, midpoint):
    assert m_points(midpoint, 6) == [(1, F(0)), (1, F(1)), (2, F(1, 2))]
    pts = m_points(dense, 6)
    assert len(pts) == 43
    assert (6, F(1, 11)) in pts
    assert len(derivative_points(dense, 7)) == 20
    assert derivative_points(dense, 7) == derivative_points(dense, 7)
