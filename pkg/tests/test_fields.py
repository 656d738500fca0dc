from fractions import Fraction

import numpy as np
import pytest

from polyconj.errors import AtChargeSingularity, SingularOnLine
from polyconj.fields import (
    ChargeConfig,
    EquilibriumOptions,
    field_and_jacobian,
    field_eval,
    find_equilibria,
    maxwell_census,
    potential,
    psi_census,
    psi_derivative,
    psi_eval,
    psi_finding,
    psi_local_maxima,
    psi_numerator,
    square_config,
)
from polyconj.ledger import replay_finding


def test_field_examples():
    two = ChargeConfig([[1, 0, 0], [-1, 0, 0]], [1, 1])
    assert np.allclose(field_eval(two, [0, 0, 0]), 0)
    one = ChargeConfig([[0, 0, 0]], [1])
    assert np.allclose(field_eval(one, [1, 0, 0]), [1, 0, 0])
    assert np.linalg.norm(field_eval(square_config(), [0, 0, 1])) < 1e-12
    with pytest.raises(AtChargeSingularity):
        field_eval(one, [0, 0, 0])


def test_config_validation():
    with pytest.raises(ValueError):
        ChargeConfig([[0, 0, 0], [0, 0, 0]], [1, 1])
    with pytest.raises(ValueError):
        ChargeConfig([[0, 0, 0]], [0])


def test_field_is_minus_gradient_of_potential():
    rng = np.random.default_rng(0)
    cfg = ChargeConfig(rng.uniform(-1, 1, size=(4, 3)), rng.uniform(-2, 2, size=4))
    h = 1e-6
    for x in rng.uniform(-3, 3, size=(100, 3)):
        if np.min(np.linalg.norm(cfg.positions - x, axis=1)) < 0.2:
            continue
        grad = np.array([(potential(cfg, x + h * e) - potential(cfg, x - h * e)) / (2 * h) for e in np.eye(3)])
        E = field_eval(cfg, x)
        assert np.linalg.norm(E + grad) <= 1e-6 * max(np.linalg.norm(E), 1e-3)


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(1)
    cfg = ChargeConfig(rng.uniform(-1, 1, size=(3, 3)), [1.0, -2.0, 0.5])
    X = rng.uniform(-2, 2, size=(20, 3))
    _, J = field_and_jacobian(cfg, X)
    h = 1e-6
    for b, x in enumerate(X):
        fd = np.column_stack([(field_eval(cfg, x + h * e) - field_eval(cfg, x - h * e)) / (2 * h) for e in np.eye(3)])
        assert np.allclose(J[b], fd, rtol=1e-5, atol=1e-6)


def test_two_equal_charges_single_equilibrium():
    eq = find_equilibria(ChargeConfig([[1, 0, 0], [-1, 0, 0]], [1, 1]))
    assert eq.count == 1
    assert np.allclose(eq.points[0], 0, atol=1e-8)
    assert eq.nondegenerate == 1 and not eq.suspected_curve


def test_square_gives_a_curve():
    eq = find_equilibria(square_config())
    assert eq.suspected_curve
    for z in np.linspace(-5, 5, 11):
        assert np.linalg.norm(field_eval(square_config(), [0, 0, z])) < 1e-10


def test_mirror_symmetric_config_gives_symmetric_set():
    # mirror in the plane x = 0
    cfg = ChargeConfig([[1, 0.3, 0], [-1, 0.3, 0], [0, -0.8, 0.2]], [1, 1, 1.5])
    eq = find_equilibria(cfg, EquilibriumOptions(random_starts=500, grid=5))
    pts = np.array(eq.points)
    mirrored = pts * [-1, 1, 1]
    for m in mirrored:
        assert np.min(np.linalg.norm(pts - m, axis=1)) < 1e-6 * cfg.scale() * 10


def test_maxwell_census_small():
    res = maxwell_census(3, 3, seed=0)
    assert res["findings"] == [] and res["max_count"] <= 4


def test_psi_examples():
    # one charge: a single bump at its abscissa
    r = psi_local_maxima([[0.7, 1.0]], [1.0], 1)
    assert r.count == 1 and r.locations[0] == pytest.approx(0.7, abs=1e-10)
    r = psi_local_maxima([[0.7, 1.0]], [1.0], 1.3)
    assert r.count == 1 and r.method == "grid" and r.locations[0] == pytest.approx(0.7, abs=1e-8)
    # two symmetric equal charges: even about the midpoint
    pts = [[-1.0, 0.5], [3.0, 0.5]]
    xs = np.linspace(0, 5, 11)
    assert np.allclose(psi_eval(pts, [1, 1], 1, 1 + xs), psi_eval(pts, [1, 1], 1, 1 - xs))
    with pytest.raises(SingularOnLine):
        psi_eval([[0, 0]], [1], 1, 0.5)
    with pytest.raises(ValueError):
        psi_eval([[0, 1]], [1], 0.25, 0.5)


def test_psi_derivative_matches_finite_difference():
    pts, xi = [[0, 1], [1.5, -0.3], [-2, 2]], [1, -0.5, 2]
    for a in (0.5, 1, 2.5):
        x = np.linspace(-4, 4, 37)
        h = 1e-6
        fd = (psi_eval(pts, xi, a, x + h) - psi_eval(pts, xi, a, x - h)) / (2 * h)
        assert np.allclose(psi_derivative(pts, xi, a, x), fd, rtol=1e-5, atol=1e-7)


def test_psi_numerator_sign_matches_derivative():
    pts, xi = [[0, 1], [1.5, -0.3], [-2, 2]], [1, 1, 1]
    num = psi_numerator(pts, xi, 1)
    for x in np.linspace(-5, 5, 41):
        d = psi_derivative(pts, xi, 1, x)
        if abs(d) > 1e-9:
            assert np.sign(float(num(Fraction(x)))) == np.sign(d)


def test_exact_and_grid_routes_agree():
    rng = np.random.default_rng(5)
    for _ in range(30):
        pts = np.round(rng.uniform(-3, 3, size=(3, 2)), 4)
        ex = psi_local_maxima(pts, [1, 1, 1], 1, method="exact")
        gr = psi_local_maxima(pts, [1, 1, 1], 1, method="grid")
        assert ex.count == gr.count
        assert np.allclose(ex.locations, gr.locations, atol=1e-6)


def test_psi_translation_equivariance():
    rng = np.random.default_rng(6)
    for _ in range(10):
        pts = np.round(rng.uniform(-3, 3, size=(3, 2)), 3)
        c = 1.25
        a = psi_local_maxima(pts, [1, 1, 1], 1)
        b = psi_local_maxima(pts + [c, 0], [1, 1, 1], 1)
        assert a.count == b.count
        assert np.allclose(np.array(a.locations) + c, b.locations, atol=1e-9)


def test_psi_census_and_alpha_half():
    res = psi_census(3, 100, seed=0)
    assert res["max_count"] <= 3 and res["findings"] == []
    res = psi_census(3, 20, seed=1, alpha=0.5)
    assert res["max_count"] <= 3


def test_psi_finding_replays():
    f = psi_finding([[0, 1], [2, 1], [1, 3]], [1, 1, 1], 1)
    assert replay_finding(f) == "CONFIRMED"
