import math

import numpy as np
import pytest

from polyconj.errors import EqualRealParts, NotReal, PolyconjError
from polyconj.expsum import (
    INDETERMINATE,
    ExpSum,
    char_roots,
    count_real_zeros,
    descartes_bound,
    in_omega,
    max_zero_search,
    residual_at_zeros,
    search_findings,
)
from polyconj.ledger import INFO, replay_finding


def test_char_roots_examples():
    assert sorted(char_roots([0, -1]).real) == pytest.approx([-1, 1])
    assert sorted(char_roots([0, 1]).imag) == pytest.approx([-1, 1])
    a = [2.5, -1, 0.75]
    for r in char_roots(a):
        assert abs(r**3 + a[0] * r**2 + a[1] * r + a[2]) < 1e-12


def test_in_omega_examples():
    # roots {0, 1}: t^2 - t
    assert in_omega([-1, 0]) is True
    # roots {i, -i}
    assert in_omega([0, 1]) is False
    # roots {0, 5e-10}: real parts inside the band
    eps = 5e-10
    assert in_omega([-eps, 0]) == INDETERMINATE


def test_in_omega_symmetric_under_permutation_and_conjugation():
    rng = np.random.default_rng(0)
    for _ in range(30):
        roots = rng.normal(size=3) + 1j * rng.normal(size=3)
        perm = roots[rng.permutation(3)]
        a, b, c = np.poly(roots)[1:], np.poly(perm)[1:], np.poly(np.conj(roots))[1:]
        assert in_omega(a) == in_omega(b) == in_omega(c)


def test_zero_counts_examples():
    z = count_real_zeros(ExpSum((0, 1), (1, 1)))
    assert z.count == 0
    z = count_real_zeros(ExpSum((0, 1), (1, -1)))
    assert z.count == 1 and z.zeros[0] == pytest.approx(0, abs=1e-14)
    z = count_real_zeros(ExpSum((1, -1), (1, -2)))
    assert z.count == 1 and z.zeros[0] == pytest.approx(math.log(2) / 2, abs=1e-13)
    assert z.certified_outside


def test_zero_count_input_checks():
    with pytest.raises(EqualRealParts):
        count_real_zeros(ExpSum((1j, -1j), (1, 1)))
    with pytest.raises(NotReal):
        count_real_zeros(ExpSum((1j, 2), (1, 1)))


def test_polynomial_like_product():
    # (e^x - 1)(e^x - 2)(e^x - 3) has zeros 0, ln 2, ln 3
    s = ExpSum((0, 1, 2, 3), (-6, 11, -6, 1))
    z = count_real_zeros(s)
    assert z.count == 3 == descartes_bound(s)
    assert z.zeros == pytest.approx([0, math.log(2), math.log(3)], abs=1e-12)


def test_scaling_invariance():
    rng = np.random.default_rng(1)
    for _ in range(20):
        lam = np.sort(rng.normal(0, 2, size=4))
        c = rng.normal(size=4)
        base = count_real_zeros(ExpSum(tuple(lam), tuple(c)))
        for k in (0.5, 3.0):
            sc = count_real_zeros(ExpSum(tuple(lam * k), tuple(c)))
            assert sc.count == base.count
            assert np.allclose(np.array(sc.zeros) * k, base.zeros, atol=1e-8)


def test_residuals_at_zeros():
    s = ExpSum((-1.3, 0.2, 0.9, 2.1), (1.0, -4.0, 4.5, -0.7))
    z = count_real_zeros(s)
    assert z.count >= 1
    assert max(residual_at_zeros(s, z.zeros)) < 1e-9


def test_search_k2_and_empty():
    rec = max_zero_search(2, 200, seed=0)
    assert rec.max_count == 1 and rec.bound_violations == 0
    empty = max_zero_search(3, 0, seed=0)
    assert empty.max_count == 0 and empty.witness is None and empty.histogram == {}


def test_search_k3_witness_replays():
    rec = max_zero_search(3, 60, seed=2)
    assert rec.witness is not None and rec.max_count <= 2
    (f,) = search_findings(rec)
    assert f.severity == INFO
    assert replay_finding(f) == "CONFIRMED"
    s = ExpSum(tuple(sorted(char_roots(rec.witness["a"]).real)), tuple(rec.witness["c"]))
    assert max(residual_at_zeros(s, rec.witness["zeros"]), default=0) < 1e-9


def test_from_ode_rejects_clusters():
    with pytest.raises(PolyconjError):
        ExpSum.from_ode([-2, 1], [1, 1])  # (t - 1)^2
    s = ExpSum.from_ode([-1, 0], [2, -1])  # roots 0 and 1
    assert s.lambdas == pytest.approx([0, 1]) and s.coeffs == (2, -1)
