import math
from fractions import Fraction

import pytest

from polyconj.ledger import trial_rng
from polyconj.tropical import (
    PosCoeffPoly,
    check_bounds,
    ctilde,
    cvals,
    run_check,
    sample_poscoeff,
    trop_corner_count,
    vc,
    vtilde,
)

F = Fraction


def test_corner_count_examples():
    assert trop_corner_count((1, 2, 1)) == 2
    assert trop_corner_count((1, 1)) == 1
    assert trop_corner_count((1, 10**6, 1)) == 2
    # middle point well below the chord: one corner
    assert trop_corner_count((1, F(1, 10**6), 1)) == 1


def test_float_route_matches_exact():
    for a in [(1, 2, 1), (1, 10**6, 1), (3, F(1, 100), 7, 2)]:
        assert trop_corner_count(PosCoeffPoly(tuple(float(v) for v in a))) == trop_corner_count(a)


def test_vtilde_examples():
    assert ctilde((1, 2, 1)) == [1, 7, 3]
    assert vtilde((1, 2, 1)) == 2
    assert vtilde((1, F(1, 10), 1)) == 0
    assert vtilde((1, 1)) == 1


def test_vc_examples():
    assert cvals((1, 1, 1)) == [1, 0, 1]
    assert vc((1, 1, 1)) == 2
    assert cvals((1, 2, 1)) == [1, 3, 1]
    assert vc((1, 2, 1)) == 2
    assert vc((1, 1)) == 1


def test_check_bounds_examples():
    r = check_bounds((1, 2, 1))
    assert r.real_zeros == 2 and min(r.corner_bound, r.vtilde, r.vc) >= 2 and not r.violations
    r = check_bounds((1, 3, 3, 1))
    assert r.real_zeros == 3 and r.real_zeros_distinct == 1 and not r.violations
    r = check_bounds((1, F(1, 10), 1))
    assert r.real_zeros == 0 and r.vtilde == 0
    assert r.all_negative


def test_binomial_tight_for_corner_bound():
    for n in range(1, 9):
        a = tuple(math.comb(n, k) for k in range(n + 1))
        r = check_bounds(a)
        assert r.real_zeros == n == r.corner_bound


def test_invalid_coefficients():
    with pytest.raises(ValueError):
        PosCoeffPoly((1, 0, 1))
    with pytest.raises(ValueError):
        PosCoeffPoly((1,))


def test_scaling_invariance():
    for t in range(100):
        rng = trial_rng(9, t)
        f = sample_poscoeff(rng, int(rng.integers(2, 9)), L=3)
        c = F(int(rng.integers(1, 100)), int(rng.integers(1, 100)))
        s = F(int(rng.integers(1, 20)), int(rng.integers(1, 20)))
        scaled = PosCoeffPoly(tuple(c * v for v in f.a))
        dilated = PosCoeffPoly(tuple(v * s**k for k, v in enumerate(f.a)))
        for g in (scaled, dilated):
            assert vtilde(g) == vtilde(f)
            assert vc(g) == vc(f)
            assert [x > 0 for x in ctilde(g)] == [x > 0 for x in ctilde(f)]


def test_batch_no_violations_and_deterministic():
    a = run_check(300, seed=2)
    assert a["violations"] == {"conj12": 0, "conj13": 0, "conj14": 0}
    b = run_check(300, seed=2)
    assert a["tight"] == b["tight"]
