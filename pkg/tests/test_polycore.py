import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polyconj.errors import DegreeMismatch, NotRealRooted, NotSimple, ZeroPolynomial
from polyconj.polycore import (
    RatInterval,
    RatPoly,
    complex_roots_numeric,
    count_roots,
    derivative,
    interlace_check,
    is_strictly_positive,
    isolate_roots,
    mesh,
    mesh_at_least,
    order_roots,
    poly_gcd,
    real_zero_counts,
    refine,
    squarefree_part,
    sturm_count,
)

from conftest import P

X = sympy.Symbol("x")


def to_sympy(p: RatPoly) -> sympy.Poly:
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(p.coeffs)), X)


small_int = st.integers(-6, 6)
polys = st.lists(small_int, min_size=2, max_size=8).map(RatPoly).filter(lambda p: p.degree >= 1)


# ---- arithmetic -----------------------------------------------------------


def test_parse_and_str_roundtrip():
    p = P("x^2 - 3*x + 2")
    assert p.coeffs == (2, -3, 1)
    assert RatPoly.parse(str(p)) == p
    assert P("x^3 - 1/2x") == RatPoly([0, Fraction(-1, 2), 0, 1])


def test_derivative_examples():
    assert derivative(P("x^3")) == P("3x^2")
    assert derivative(RatPoly.from_roots([0, 1, 2])) == P("3x^2 - 6x + 2")
    assert derivative(P("5")) == RatPoly()


def test_derivative_negative_order():
    with pytest.raises(ValueError):
        derivative(P("x"), -1)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    expected = sympy.gcd(to_sympy(p), to_sympy(q))
    assert g.degree == expected.degree()
    if g.degree > 0:
        assert to_sympy(g.monic()).all_coeffs() == expected.monic().all_coeffs()


def test_squarefree_part():
    p = RatPoly.from_roots([1, 1, 2, 3, 3, 3])
    assert squarefree_part(p).monic() == RatPoly.from_roots([1, 2, 3])


# ---- real roots -----------------------------------------------------------


def test_sturm_count_examples():
    assert sturm_count(P("x^2 - 1"), (-2, 2)) == 2
    assert sturm_count(P("x^2 - 1"), (0, 2)) == 1
    assert sturm_count(P("x^2 + 1")) == 0
    # endpoints excluded
    assert sturm_count(P("x^2 - 1"), (-1, 1)) == 0


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        sturm_count(RatPoly())


def test_multiplicity_counts():
    p = RatPoly.from_roots([1, 1, 1, -2]) * P("x^2 + 1")
    assert real_zero_counts(p) == (2, 4)
    assert count_roots(p, (0, None), multiplicity=True) == 3
    rep = isolate_roots(p)
    assert rep.nonreal == 2 and not rep.all_real_simple


@settings(max_examples=80, deadline=None)
@given(polys)
def test_count_matches_sympy(p):
    roots = sympy.real_roots(to_sympy(p))  # repeated by multiplicity
    assert sturm_count(p) == len(set(roots))
    assert real_zero_counts(p) == (len(set(roots)), len(roots))


def test_isolate_and_refine_sqrt2():
    p = P("x^2 - 2")
    rep = isolate_roots(p)
    assert rep.distinct_real == 2
    iv = refine(p, rep.isolating[1], Fraction(1, 10**12))
    assert iv.width < Fraction(1, 10**12)
    assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi


def test_isolating_intervals_are_disjoint_and_sorted():
    p = RatPoly.from_roots([0, Fraction(1, 3), Fraction(1, 2), 5, -7])
    ivs = isolate_roots(p).isolating
    assert len(ivs) == 5
    for a, b in zip(ivs, ivs[1:]):
        assert a.before(b)
    for iv, r in zip(ivs, [-7, 0, Fraction(1, 3), Fraction(1, 2), 5]):
        assert iv.lo <= r <= iv.hi


def test_order_roots_certified():
    p, q = P("x^2 - 2"), P("x^2 - 3")
    order = [k for k, _ in order_roots([p, q])]
    assert order == [1, 0, 0, 1]


# ---- mesh and interlacing -------------------------------------------------


def test_mesh_examples():
    assert mesh_at_least(RatPoly.from_roots([0, 1, 2]), 1)
    lo, hi = mesh(RatPoly.from_roots([0, 3]))
    assert lo <= 3 <= hi
    lo, hi = mesh(RatPoly.from_roots([0, Fraction(3, 2), 2]))
    assert lo <= Fraction(1, 2) <= hi
    assert not mesh_at_least(RatPoly.from_roots([0, Fraction(3, 2), 2]), 1)
    assert mesh(P("x")) == (math.inf, math.inf)


@pytest.mark.parametrize("m", range(1, 11))
def test_pochhammer_mesh_is_one(m):
    p = RatPoly.from_roots(range(m))
    assert mesh_at_least(p, 1)
    if m >= 2:
        assert not mesh_at_least(p, Fraction(1000001, 1000000))


def test_mesh_needs_real_simple():
    with pytest.raises(NotRealRooted):
        mesh(P("x^2 + 1"))
    with pytest.raises(NotSimple):
        mesh(P("x^2"))


def test_interlace_examples():
    assert interlace_check(P("x^2 - 1"), P("x"))
    assert not interlace_check(P("x^2 - 1"), P("x - 5"))
    assert interlace_check(RatPoly.from_roots([0, 1, 2]), P("x^2 - 2x + 3/4"))
    with pytest.raises(DegreeMismatch):
        interlace_check(P("x^2 - 1"), P("x^2"))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-20, 20, max_denominator=8), min_size=2, max_size=7, unique=True))
def test_real_rooted_interlaces_with_derivative(roots):
    p = RatPoly.from_roots(roots)
    assert interlace_check(p, derivative(p))


# ---- numerics -------------------------------------------------------------


def test_complex_roots_simple_cases():
    r = complex_roots_numeric(P("x^2 + 1"))
    assert sorted(round(z.value.imag, 12) for z in r) == [-1.0, 1.0]
    assert all(z.surely_nonreal for z in r)
    r = complex_roots_numeric(P("x^2 - 2"))
    assert np.allclose(sorted(z.value.real for z in r), [-math.sqrt(2), math.sqrt(2)], atol=1e-13)
    assert all(z.value.imag == 0 for z in r)


def test_complex_roots_degree8_residual():
    rng = np.random.default_rng(7)
    p = RatPoly([int(v) for v in rng.integers(-9, 10, size=8)] + [3])
    r = complex_roots_numeric(p)
    assert len(r) == 8
    a = p.to_numpy()
    for z in r:
        val = abs(np.polyval(a[::-1], z.value))
        scale = sum(abs(c) * abs(z.value) ** k for k, c in enumerate(a))
        assert val <= 1e-12 * scale


def test_complex_input_coefficients():
    # (x - i)(x - 2i) = x^2 - 3i x - 2
    r = complex_roots_numeric([-2, -3j, 1])
    assert np.allclose(sorted(z.value.imag for z in r), [1, 2], atol=1e-12)


def test_is_strictly_positive():
    assert is_strictly_positive(P("2x^2 + 2"))
    assert not is_strictly_positive(P("-4"))
    assert not is_strictly_positive(P("x^2"))
    assert is_strictly_positive(P("3"))


def test_sturm_matches_numeric_oracle():
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(300):
        deg = int(rng.integers(1, 11))
        p = RatPoly([int(v) for v in rng.integers(-20, 21, size=deg)] + [int(rng.integers(1, 5))])
        roots = complex_roots_numeric(p)
        if any(abs(z.value.imag) <= z.radius and z.value.imag != 0 for z in roots):
            continue
        real = [z for z in roots if z.value.imag == 0]
        # disks touching each other make the distinct count ambiguous
        vals = sorted(z.value.real for z in real)
        rad = max((z.radius for z in real), default=0.0)
        if any(b - a <= 2 * rad for a, b in zip(vals, vals[1:])):
            continue
        assert sturm_count(p) == len(real)
        checked += 1
    assert checked > 200


def test_rat_interval_point():
    iv = RatInterval(Fraction(1), Fraction(1))
    assert iv.is_point and iv.width == 0
