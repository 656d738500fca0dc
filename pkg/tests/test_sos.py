import itertools
from fractions import Fraction

import pytest

from polyconj.errors import DuplicateAxisRoots
from polyconj.sos import bounds_table, grid_sos, verify_isolated


def test_grid_examples():
    g = grid_sos(1, 1, [0])
    assert g.terms() == ["(x1)^2"]
    assert verify_isolated(g).zero_count == 1
    g = grid_sos(2, 2, [0, 1])
    assert len(g.zeros) == 4
    assert g((Fraction(1, 2), 0)) == Fraction(1, 16)
    assert len(grid_sos(2, 3).zeros) == 8


def test_hessian_example():
    g = grid_sos(2, 2, [0, 1])
    # A = x(x-1), A'(0) = -1, so each diagonal entry is 2 * 1
    assert g.hessian_diag((0, 0)) == [2, 2]


@pytest.mark.parametrize("k, l", [(k, l) for k in range(1, 5) for l in range(1, 4)])
def test_verify_isolated(k, l):
    rep = verify_isolated(grid_sos(k, l))
    assert rep.ok and rep.zero_count == k**l


def test_per_axis_roots_and_duplicates():
    g = grid_sos(2, 2, [[0, 1], [Fraction(-1, 2), 3]])
    assert verify_isolated(g).ok
    with pytest.raises(DuplicateAxisRoots):
        grid_sos(2, 2, [0, 0])
    with pytest.raises(ValueError):
        grid_sos(2, 2, [0, 1, 2])


def test_positive_off_grid():
    g = grid_sos(3, 2, [0, 1, 2])
    pts = [Fraction(n, 4) for n in range(-4, 13)]
    zeros = set(g.zeros)
    for pt in itertools.product(pts, repeat=2):
        assert (g(pt) == 0) == (pt in zeros)
        assert g(pt) >= 0


def test_bounds_table_examples():
    b = bounds_table(2, 2)
    assert (b.lower, b.upper) == (4, 4)
    b = bounds_table(3, 2)
    assert (b.lower, b.upper, b.sos_known) == (9, 10, 9)
    b = bounds_table(1, 5)
    assert (b.lower, b.upper) == (1, 1)


def test_bounds_chain_monotone():
    for k in range(1, 12):
        for l in range(1, 5):
            b = bounds_table(k, l)
            assert b.consistent and k**l <= (2 * k - 1) ** l
        if k >= 2:
            assert k * k <= 3 * k * (k - 1) // 2 + 1
