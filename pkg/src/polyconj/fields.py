"""Equilibria of point-charge fields and local maxima of a 1-D potential.

``E(x) = sum_i q_i (x - x_i) / |x - x_i|^m`` with ``m = 3`` by default
(configurable for other dimensions).  Equilibria are found by multistart
Levenberg-Marquardt on ``E = 0`` with the closed-form Jacobian; the result
is a census (a lower bound), not a certified count.

``Psi(x) = sum_i q_i / ((x - x_i)^2 + y_i^2)^alpha`` is handled exactly for
integer alpha (sign of the numerator polynomial of Psi') and on an
adaptive grid otherwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import AtChargeSingularity, SingularOnLine
from .ledger import VIOLATION_CANDIDATE, Finding, register_replay, trial_rng
from .polycore import RatPoly, _sign_at, isolate_roots, refine

SINGULAR_DIST = 1e-12


@dataclass
class ChargeConfig:
    positions: np.ndarray
    charges: np.ndarray

    def __post_init__(self):
        self.positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        self.charges = np.asarray(self.charges, dtype=float).ravel()
        if len(self.positions) != len(self.charges):
            raise ValueError("positions and charges differ in length")
        if np.any(self.charges == 0):
            raise ValueError("charges must be nonzero")
        d = self.positions[:, None, :] - self.positions[None, :, :]
        dist = np.linalg.norm(d, axis=-1) + np.eye(len(self.charges))
        if np.any(dist == 0):
            raise ValueError("charge positions must be distinct")

    @property
    def N(self) -> int:
        return len(self.charges)

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    @classmethod
    def from_json(cls, d: dict) -> "ChargeConfig":
        return cls(d["positions"], d["charges"])

    def to_json(self) -> dict:
        return {"positions": self.positions.tolist(), "charges": self.charges.tolist()}

    def scale(self) -> float:
        ext = np.ptp(self.positions, axis=0).max() if self.N > 1 else 0.0
        return float(ext) if ext > 0 else 1.0


def square_config() -> ChargeConfig:
    """Unit charges at the corners of a square, alternating in sign; E vanishes on the z-axis."""
    return ChargeConfig([[1, 1, 0], [-1, -1, 0], [1, -1, 0], [-1, 1, 0]], [1, 1, -1, -1])


def _field_batch(cfg: ChargeConfig, X: np.ndarray, exponent: float = 3):
    d = X[:, None, :] - cfg.positions[None, :, :]
    r = np.linalg.norm(d, axis=-1)
    return d, r


def field_eval(cfg: ChargeConfig, x, exponent: float = 3) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    d, r = _field_batch(cfg, x[None, :], exponent)
    if np.any(r < SINGULAR_DIST):
        raise AtChargeSingularity(f"{x.tolist()} coincides with a charge")
    return ((cfg.charges / r[0] ** exponent)[:, None] * d[0]).sum(axis=0)


def field_and_jacobian(cfg: ChargeConfig, X: np.ndarray, exponent: float = 3):
    """Batched E and dE/dx; points at a charge come back as NaN."""
    d, r = _field_batch(cfg, X, exponent)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = cfg.charges[None, :] / r ** exponent
        E = np.einsum("bn,bnk->bk", w, d)
        w2 = exponent * cfg.charges[None, :] / r ** (exponent + 2)
        eye = np.eye(X.shape[1])
        J = w.sum(axis=1)[:, None, None] * eye[None] - np.einsum("bn,bnk,bnl->bkl", w2, d, d)
    return E, J


def potential(cfg: ChargeConfig, x) -> float:
    """``sum q_i / |x - x_i|``; E is minus its gradient in R^3."""
    r = np.linalg.norm(np.asarray(x, dtype=float)[None, :] - cfg.positions, axis=1)
    return float((cfg.charges / r).sum())


@dataclass
class EquilibriumOptions:
    grid: int = 7
    random_starts: int = 2000
    seed: int = 0
    maxiter: int = 200
    res_tol: float = 1e-10
    dedupe: float = 1e-6
    pad: float = 2.0
    exponent: float = 3
    curve_factor: int = 50
    degenerate_tol: float = 1e-8


@dataclass
class EquilibriumSet:
    points: list
    residuals: list
    jacobian_class: list
    suspected_curve: bool
    starts: int
    converged: int
    options: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def nondegenerate(self) -> int:
        return sum(1 for c in self.jacobian_class if c == "nondegenerate")

    def to_json(self) -> dict:
        return {"count": self.count, "points": [list(map(float, p)) for p in self.points],
                "residuals": list(map(float, self.residuals)), "jacobian_class": self.jacobian_class,
                "suspected_curve": self.suspected_curve, "starts": self.starts,
                "converged": self.converged, "options": self.options}


def _starts(cfg: ChargeConfig, opts: EquilibriumOptions) -> np.ndarray:
    lo, hi = cfg.positions.min(axis=0), cfg.positions.max(axis=0)
    center, half = (lo + hi) / 2, np.maximum((hi - lo) / 2, cfg.scale() / 2) * opts.pad
    axes = [np.linspace(c - h, c + h, opts.grid + 2)[1:-1] for c, h in zip(center, half)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, cfg.dim)
    rng = np.random.default_rng(opts.seed)
    rand = center + half * rng.uniform(-1, 1, size=(opts.random_starts, cfg.dim))
    return np.vstack([grid, rand])


def _lm(cfg: ChargeConfig, X: np.ndarray, opts: EquilibriumOptions):
    """Batched Levenberg-Marquardt on E(x) = 0."""
    n, dim = X.shape
    mu = np.full(n, 1e-3)
    E, J = field_and_jacobian(cfg, X, opts.exponent)
    res = np.linalg.norm(E, axis=1)
    active = np.isfinite(res)
    eye = np.eye(dim)
    for _ in range(opts.maxiter):
        act = active & (res > opts.res_tol)
        if not act.any():
            break
        Ja, Ea = J[act], E[act]
        JT = np.transpose(Ja, (0, 2, 1))
        A = JT @ Ja
        lam = mu[act][:, None, None] * (np.einsum("bii->bi", A)[:, :, None] * eye + eye)
        step = -np.linalg.solve(A + lam, (JT @ Ea[:, :, None]))[:, :, 0]
        Xn = X[act] + step
        En, Jn = field_and_jacobian(cfg, Xn, opts.exponent)
        rn = np.linalg.norm(En, axis=1)
        better = np.isfinite(rn) & (rn < res[act])
        idx = np.flatnonzero(act)
        good, bad = idx[better], idx[~better]
        X[good], E[good], J[good], res[good] = Xn[better], En[better], Jn[better], rn[better]
        mu[good] = np.maximum(mu[good] / 3, 1e-12)
        mu[bad] *= 4
        active &= mu < 1e12
    return X, res


def _dedupe(points: np.ndarray, radius: float) -> list[int]:
    order = np.lexsort(points.T[::-1])
    kept: list[int] = []
    for i in order:
        if all(np.linalg.norm(points[i] - points[j]) > radius for j in kept):
            kept.append(int(i))
    return kept


def find_equilibria(cfg: ChargeConfig, opts: Optional[EquilibriumOptions] = None) -> EquilibriumSet:
    """Multistart census of zeros of E inside (and near) the padded charge box."""
    opts = opts or EquilibriumOptions()
    scale = cfg.scale()
    X0 = _starts(cfg, opts)
    X, res = _lm(cfg, X0.copy(), opts)
    qscale = np.abs(cfg.charges).sum() / scale ** (opts.exponent - 1)
    center = cfg.positions.mean(axis=0)
    dist_c = np.min(np.linalg.norm(X[:, None, :] - cfg.positions[None], axis=-1), axis=1)
    ok = (
        (res < opts.res_tol * max(qscale, 1.0))
        & (np.linalg.norm(X - center, axis=1) < 10 * opts.pad * scale)
        & (dist_c > 1e-8 * scale)
    )
    pts = X[ok]
    keep = _dedupe(pts, opts.dedupe * scale) if len(pts) else []
    pts, rr = pts[keep], res[ok][keep]
    classes = []
    if len(pts):
        _, J = field_and_jacobian(cfg, pts, opts.exponent)
        sv = np.linalg.svd(J, compute_uv=False)
        for s in sv:
            classes.append("degenerate" if s[-1] <= opts.degenerate_tol * max(s[0], 1e-300) else "nondegenerate")
    suspected = len(pts) > opts.curve_factor * cfg.N ** 2
    return EquilibriumSet([p for p in pts], list(rr), classes, suspected, len(X0), int(ok.sum()), asdict(opts))


def maxwell_bound(N: int) -> int:
    return (N - 1) ** 2


def maxwell_census(N: int, trials: int, seed: int, dim: int = 3, same_sign: bool = True,
                   opts: Optional[EquilibriumOptions] = None) -> dict:
    """Random configurations; counts above (N-1)^2 on a finite set go to the ledger."""
    opts = opts or EquilibriumOptions(random_starts=300, grid=5)
    counts, findings, curves = [], [], 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        pos = np.round(rng.uniform(-1, 1, size=(N, dim)), 6)
        q = np.round(rng.uniform(0.2, 2.0, size=N), 6)
        if not same_sign:
            q *= rng.choice([-1, 1], size=N)
        cfg = ChargeConfig(pos, q)
        eq = find_equilibria(cfg, opts)
        counts.append(eq.count)
        if eq.suspected_curve:
            curves += 1
        elif eq.count > maxwell_bound(N):
            findings.append(maxwell_finding(cfg, opts, seed, t))
    return {"N": N, "trials": trials, "seed": seed, "bound": maxwell_bound(N), "max_count": max(counts, default=0),
            "histogram": {str(k): counts.count(k) for k in sorted(set(counts))}, "suspected_curves": curves,
            "findings": findings}


def _maxwell_obs(cfg, opts) -> str:
    eq = find_equilibria(cfg, opts)
    return f"count={eq.count} nondegenerate={eq.nondegenerate} suspected_curve={eq.suspected_curve}"


def maxwell_finding(cfg: ChargeConfig, opts: EquilibriumOptions, seed=None, trial=None) -> Finding:
    return Finding("fields.maxwell", {"config": cfg.to_json(), "options": asdict(opts)},
                   _maxwell_obs(cfg, opts), VIOLATION_CANDIDATE, seed=seed, trial_index=trial,
                   tolerances={"res_tol": opts.res_tol, "dedupe": opts.dedupe})


@register_replay("fields.maxwell")
def _replay_maxwell(inp, tol):
    opts = EquilibriumOptions(**inp["options"])
    return _maxwell_obs(ChargeConfig.from_json(inp["config"]), opts)


# ---- the 1-D potential ----------------------------------------------------


def _check_psi(points, charges, alpha):
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    xi = np.asarray(charges, dtype=float).ravel()
    if len(pts) != len(xi):
        raise ValueError("points and charges differ in length")
    if alpha < 0.5:
        raise ValueError("alpha must be >= 1/2")
    if np.any(pts[:, 1] == 0):
        raise SingularOnLine("a charge sits on the real line")
    return pts, xi


def psi_eval(points, charges, alpha: float, x) -> np.ndarray:
    pts, xi = _check_psi(points, charges, alpha)
    x = np.asarray(x, dtype=float)
    Q = (x[..., None] - pts[:, 0]) ** 2 + pts[:, 1] ** 2
    return (xi / Q ** alpha).sum(axis=-1)


def psi_derivative(points, charges, alpha: float, x) -> np.ndarray:
    pts, xi = _check_psi(points, charges, alpha)
    x = np.asarray(x, dtype=float)
    u = x[..., None] - pts[:, 0]
    Q = u ** 2 + pts[:, 1] ** 2
    return (-2 * alpha * xi * u / Q ** (alpha + 1)).sum(axis=-1)


@dataclass
class PsiMaxima:
    count: int
    locations: list
    method: str
    indeterminate: bool = False

    def to_json(self) -> dict:
        return asdict(self)


def psi_numerator(points, charges, alpha: int) -> RatPoly:
    """Polynomial with the sign of Psi' (positive denominator cleared).

    Coordinates and charges are converted to the rationals their floats
    represent, so the result is exact for the given binary data.
    """
    pts, xi = _check_psi(points, charges, alpha)
    x = RatPoly.x()
    Qs = [(x - Fraction(float(a))) ** 2 + Fraction(float(b)) ** 2 for a, b in pts]
    powers = [Q ** (alpha + 1) for Q in Qs]
    out = RatPoly()
    for i, (a, _) in enumerate(pts):
        term = (x - Fraction(float(a))) * Fraction(float(xi[i]))
        for j, P in enumerate(powers):
            if j != i:
                term = term * P
        out = out - term
    return out


def _maxima_exact(points, charges, alpha: int) -> PsiMaxima:
    num = psi_numerator(points, charges, alpha)
    if num.is_zero():
        return PsiMaxima(0, [], "exact", True)
    ivs = list(isolate_roots(num).isolating)
    sq = num.integer_coeffs()
    locs = []
    tangential = False
    for k, iv in enumerate(ivs):
        # points strictly between neighbouring isolating intervals
        left = iv.lo - 1 if k == 0 else (ivs[k - 1].hi + iv.lo) / 2
        right = iv.hi + 1 if k == len(ivs) - 1 else (iv.hi + ivs[k + 1].lo) / 2
        sl, sr = _sign_at(sq, left), _sign_at(sq, right)
        if sl == sr:
            tangential = True
        elif sl > 0 > sr:
            locs.append(float(refine(num, iv, Fraction(1, 2**52)).mid))
    return PsiMaxima(len(locs), locs, "exact", tangential)


def _window(pts: np.ndarray, alpha: float) -> tuple[float, float, float]:
    c = float(np.mean(pts[:, 0]))
    spread = float(np.ptp(pts[:, 0])) + float(np.abs(pts[:, 1]).max())
    return c, 10 * spread + 1, spread


def _maxima_grid(points, charges, alpha: float, resolution: int = 4000) -> PsiMaxima:
    pts, xi = _check_psi(points, charges, alpha)
    c, W, spread = _window(pts, alpha)
    inner = np.linspace(c - W, c + W, max(resolution, 200))
    # geometric tails out to where only the far-field term matters
    tail = W * np.geomspace(1.0, 1e6, 400)[1:]
    grid = np.concatenate([c - tail[::-1], inner, c + tail])
    # extra nodes near each charge, where Psi' varies fastest
    near = [a + np.abs(b) * np.linspace(-4, 4, 81) for a, b in pts]
    grid = np.unique(np.concatenate([grid] + near))
    d = psi_derivative(pts, xi, alpha, grid)
    f = lambda t: float(psi_derivative(pts, xi, alpha, t))  # noqa: E731
    scale = np.abs(d).max()
    # a near-zero of Psi' with the same sign on both sides is a touch point
    tiny = np.abs(d[1:-1]) < 1e-13 * scale
    same = np.sign(d[:-2]) == np.sign(d[2:])
    inside = np.abs(grid[1:-1] - c) < W
    tangential = bool(np.any(tiny & same & inside))
    locs = []
    for a, b, da, db in zip(grid, grid[1:], d, d[1:]):
        if da > 0 > db:
            locs.append(brentq(f, a, b, xtol=1e-14 * max(1.0, abs(a))))
        elif da > 0 and db == 0:
            locs.append(float(b))
    return PsiMaxima(len(locs), locs, "grid", tangential)


def psi_local_maxima(points, charges, alpha: float, method: str = "auto", resolution: int = 4000) -> PsiMaxima:
    """Local maxima of Psi on the real line.

    ``auto`` uses the exact numerator polynomial when alpha is an integer.
    """
    _check_psi(points, charges, alpha)
    if method == "auto":
        method = "exact" if float(alpha).is_integer() else "grid"
    if method == "exact":
        if not float(alpha).is_integer():
            raise ValueError("exact route needs integer alpha")
        return _maxima_exact(points, charges, int(alpha))
    if method == "grid":
        return _maxima_grid(points, charges, alpha, resolution)
    raise ValueError(f"unknown method {method!r}")


def psi_census(N: int, trials: int, seed: int, alpha: float = 1, unit: bool = True, method: str = "auto") -> dict:
    """Random geometries; more than N maxima is a violation candidate."""
    counts, findings, tangential = [], [], 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        pts = np.round(rng.uniform(-3, 3, size=(N, 2)), 4)
        pts[:, 1] = np.where(np.abs(pts[:, 1]) < 1e-3, 1e-3, pts[:, 1])
        xi = np.ones(N) if unit else np.round(rng.uniform(-2, 2, size=N), 4)
        xi[xi == 0] = 1.0
        res = psi_local_maxima(pts, xi, alpha, method)
        counts.append(res.count)
        tangential += res.indeterminate
        if res.count > N:
            findings.append(psi_finding(pts, xi, alpha, method, seed, t))
    return {"N": N, "alpha": alpha, "trials": trials, "seed": seed, "max_count": max(counts, default=0),
            "histogram": {str(k): counts.count(k) for k in sorted(set(counts))},
            "indeterminate": tangential, "findings": findings}


def _psi_obs(inp) -> str:
    r = psi_local_maxima(inp["points"], inp["charges"], inp["alpha"], inp.get("method", "auto"))
    return f"maxima={r.count} method={r.method}"


def psi_finding(points, charges, alpha, method="auto", seed=None, trial=None) -> Finding:
    inp = {"points": np.asarray(points, dtype=float).tolist(), "charges": np.asarray(charges, dtype=float).tolist(),
           "alpha": alpha, "method": method}
    return Finding("fields.psi", inp, _psi_obs(inp), VIOLATION_CANDIDATE, seed=seed, trial_index=trial)


@register_replay("fields.psi")
def _replay_psi(inp, tol):
    return _psi_obs(inp)
