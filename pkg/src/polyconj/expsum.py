"""Real zeros of exponential sums solving constant-coefficient linear ODEs.

For ``y^(k) + a_1 y^(k-1) + ... + a_k y = 0`` with characteristic roots of
pairwise distinct real parts, every solution has finitely many real zeros.
A real-valued solution can then only use real exponents (a non-real
exponent would need its conjugate, which has the same real part), so
counting works on ``sum c_j exp(l_j x)`` with real ``l_j, c_j``.

Zeros are counted inside a window outside of which one term provably
dominates; inside it, the sum is divided by its first exponential and
differentiated, which drops a term, and the critical points found
recursively split the window into monotone pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import EqualRealParts, NotReal, PolyconjError
from .ledger import CRITICAL, INFO, Finding, register_replay, trial_rng
from .polycore import complex_roots_numeric

INDETERMINATE = "INDETERMINATE"


def _char_coeffs(a: Sequence[complex]) -> np.ndarray:
    """Ascending coefficients of ``t^k + a_1 t^(k-1) + ... + a_k``."""
    return np.array(list(a)[::-1] + [1], dtype=complex)


def char_roots_detail(a: Sequence[complex], tol: float = 1e-14):
    if len(a) < 1:
        raise ValueError("need k >= 1")
    return complex_roots_numeric(_char_coeffs(a), tol=tol)


def char_roots(a: Sequence[complex]) -> np.ndarray:
    return np.array([r.value for r in char_roots_detail(a)])


def _noise(r) -> float:
    return r.radius + 1e-12 * max(1.0, abs(r.value))


def in_omega(a: Sequence[complex], tol: float = 1e-9):
    """True if distinct characteristic roots have distinct real parts.

    Real parts closer than ``tol`` (but not equal within root accuracy)
    give INDETERMINATE.
    """
    roots = char_roots_detail(a)
    verdict: object = True
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            ri, rj = roots[i], roots[j]
            noise = _noise(ri) + _noise(rj)
            if abs(ri.value - rj.value) <= noise:
                continue  # the same (multiple) root
            dre = abs(ri.value.real - rj.value.real)
            if dre <= noise:
                return False
            if dre <= tol:
                verdict = INDETERMINATE
    return verdict


@dataclass
class ExpSum:
    """``y(x) = sum c_j exp(l_j x)``."""

    lambdas: tuple
    coeffs: tuple
    real: bool = True

    def __post_init__(self):
        self.lambdas = tuple(complex(v) for v in self.lambdas)
        self.coeffs = tuple(complex(v) for v in self.coeffs)
        if len(self.lambdas) != len(self.coeffs):
            raise ValueError("lambdas and coeffs differ in length")
        if len(set(self.lambdas)) != len(self.lambdas):
            raise ValueError("exponents must be distinct")

    @classmethod
    def from_ode(cls, a: Sequence[complex], c: Sequence[complex], cluster: float = 1e-8) -> "ExpSum":
        """Solution with coefficient ``c_j`` on the j-th characteristic root
        (roots sorted by real part, then imaginary part)."""
        det = sorted(char_roots_detail(a), key=lambda r: (r.value.real, r.value.imag))
        # overlapping inclusion disks cannot be told apart from a multiple root
        for i, r in enumerate(det):
            for q in det[i + 1:]:
                if abs(r.value - q.value) <= r.radius + q.radius + cluster * max(1.0, abs(r.value)):
                    raise PolyconjError("characteristic roots cluster; multiple roots are not supported")
        lam = [r.value for r in det]
        if len(c) != len(lam):
            raise ValueError(f"need {len(lam)} coefficients")
        return cls(tuple(lam), tuple(c))

    def is_real_valued(self, tol: float = 1e-12) -> bool:
        pairs = dict(zip(self.lambdas, self.coeffs))
        for lam, c in pairs.items():
            if c == 0:
                continue
            match = [c2 for l2, c2 in pairs.items() if abs(l2 - lam.conjugate()) <= tol * max(1.0, abs(lam))]
            if not match or abs(match[0] - c.conjugate()) > tol * max(1.0, abs(c)):
                return False
        return True

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lam = np.array(self.lambdas)
        c = np.array(self.coeffs)
        return (c * np.exp(np.multiply.outer(x, lam))).sum(axis=-1)

    def to_json(self) -> dict:
        return {"lambdas": [[v.real, v.imag] for v in self.lambdas], "coeffs": [[v.real, v.imag] for v in self.coeffs]}


@dataclass
class ZeroCount:
    count: int
    window: tuple
    certified_outside: bool
    indeterminate: bool = False
    zeros: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"count": self.count, "window": list(self.window), "certified_outside": self.certified_outside,
                "indeterminate": self.indeterminate, "zeros": self.zeros}


def _real_terms(s: ExpSum, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    if not s.real or not s.is_real_valued(tol):
        raise NotReal("exponential sum is not real-valued")
    lam, c = [], []
    for l, v in zip(s.lambdas, s.coeffs):
        if v != 0:
            lam.append(l)
            c.append(v)
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if abs(lam[i].real - lam[j].real) <= tol * max(1.0, abs(lam[i])):
                raise EqualRealParts(f"exponents {lam[i]} and {lam[j]} share a real part")
    # conjugate pairs were ruled out above, so every exponent is real
    order = np.argsort([l.real for l in lam])
    return np.array([lam[i].real for i in order]), np.array([c[i].real for i in order])


def _dominance_T(mu: np.ndarray, c: np.ndarray) -> float:
    """Smallest-ish T >= 0 with |c_top| > 2 sum_j |c_j| exp((mu_j - mu_top) T); mu_top last."""
    gaps = mu[-1] - mu[:-1]
    rest = np.abs(c[:-1])
    top = abs(c[-1])
    f = lambda T: top - 2 * float((rest * np.exp(-gaps * T)).sum())  # noqa: E731
    if f(0.0) > 0:
        return 0.0
    hi = 1.0
    while f(hi) <= 0:
        hi *= 2
    T = brentq(f, hi / 2 if hi > 1 else 0.0, hi)
    return 2 * T + 1.0  # safety doubling


def _scaled(mu: np.ndarray, c: np.ndarray):
    """Same sign and zeros as sum c_j exp(mu_j x), without overflow."""
    def g(x):
        e = mu * x
        m = e.max()
        return float((c * np.exp(e - m)).sum())

    def mag(x):
        e = mu * x
        m = e.max()
        return float((np.abs(c) * np.exp(e - m)).sum())

    return g, mag


def _zeros_rec(mu, c, a, b, rel_tol, flags) -> list[float]:
    """Zeros of sum c_j exp(mu_j x) on [a, b]; mu sorted ascending."""
    if len(mu) <= 1:
        return []
    # divide by exp(mu_0 x) and differentiate: one term fewer
    dmu = mu[1:] - mu[0]
    dc = c[1:] * dmu
    crit = _zeros_rec(mu[1:], dc, a, b, rel_tol, flags)
    g, mag = _scaled(mu, c)
    pts = [a] + crit + [b]
    out = []
    vals = [g(x) for x in pts]
    for x in crit:
        if abs(g(x)) <= rel_tol * mag(x):
            flags["tangent"] = True
    for (x0, x1), (v0, v1) in zip(zip(pts, pts[1:]), zip(vals, vals[1:])):
        if v0 == 0:
            out.append(x0)
        elif v0 * v1 < 0:
            out.append(brentq(g, x0, x1, xtol=1e-15, rtol=1e-15))
    if vals[-1] == 0:
        out.append(b)
    return sorted(set(out))


def count_real_zeros(s: ExpSum, rel_tol: float = 1e-10) -> ZeroCount:
    """Real zeros of a real-valued exponential sum with distinct-real-part exponents."""
    mu, c = _real_terms(s)
    if len(mu) <= 1:
        return ZeroCount(0, (0.0, 0.0), True)
    TR = _dominance_T(mu, c)
    TL = _dominance_T(-mu[::-1], c[::-1])
    flags = {"tangent": False}
    zs = _zeros_rec(mu, c, -TL, TR, rel_tol, flags)
    return ZeroCount(len(zs), (-TL, TR), True, flags["tangent"], [float(z) for z in zs])


def descartes_bound(s: ExpSum) -> int:
    """Sign changes of the coefficients ordered by exponent; bounds the zero count."""
    _, c = _real_terms(s)
    sg = np.sign(c)
    return int(np.sum(sg[1:] != sg[:-1]))


# ---- search ---------------------------------------------------------------


def _sample_real_omega(rng, k: int, tries: int = 100) -> Optional[np.ndarray]:
    """Real ``a`` whose characteristic roots are k distinct reals.

    Real-valued solutions only ever use the real characteristic roots, so
    drawing the roots directly covers every case; ``in_omega`` still
    screens the result.
    """
    for _ in range(tries):
        lam = np.round(rng.normal(0, 2, size=k), 3)
        if len(set(lam)) < k:
            continue
        a = np.poly(lam)[1:]
        if in_omega(a) is True:
            return a
    return None


def _interpolating_coeffs(lam: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Nonzero real c with y(x_i) = 0 at the k-1 given points (null vector)."""
    M = np.exp(np.multiply.outer(xs, lam))
    M = M / np.abs(M).max(axis=1, keepdims=True)
    _, _, vt = np.linalg.svd(M)
    return vt[-1]


@dataclass
class SearchRecord:
    k: int
    trials: int
    seed: int
    max_count: int
    witness: Optional[dict]
    histogram: dict
    indeterminate: int
    bound_violations: int

    def to_json(self) -> dict:
        return {"k": self.k, "trials": self.trials, "seed": self.seed, "max_count": self.max_count,
                "witness": self.witness, "histogram": self.histogram, "indeterminate": self.indeterminate,
                "descartes_bound_violations": self.bound_violations}


def _trial(seed: int, t: int, k: int):
    rng = trial_rng(seed, t)
    a = _sample_real_omega(rng, k)
    if a is None:
        return None
    lam = np.sort(char_roots(a).real)
    if t % 2 == 0:
        c = np.round(rng.normal(0, 1, size=k), 6)
    else:
        xs = np.sort(rng.uniform(-2, 2, size=k - 1))
        c = _interpolating_coeffs(lam, xs)
    if not np.any(c):
        return None
    s = ExpSum(tuple(lam), tuple(c))
    return a, c, s


def max_zero_search(k: int, trials: int, seed: int) -> SearchRecord:
    """Largest real-zero count seen over random real solutions in the
    distinct-real-part class.  Even trials draw random coefficients; odd
    trials force zeros at k-1 random points."""
    if k < 2:
        raise ValueError("k must be >= 2")
    best, witness = -1, None
    hist: dict[str, int] = {}
    indet = viol = 0
    for t in range(trials):
        tr = _trial(seed, t, k)
        if tr is None:
            continue
        a, c, s = tr
        zc = count_real_zeros(s)
        hist[str(zc.count)] = hist.get(str(zc.count), 0) + 1
        indet += zc.indeterminate
        if zc.count > descartes_bound(s):
            viol += 1
        if zc.count > best and not zc.indeterminate:
            best = zc.count
            witness = {"a": [float(v) for v in a], "c": [float(v) for v in c], "zeros": zc.zeros, "trial": t}
    return SearchRecord(k, trials, seed, max(best, 0) if witness else 0, witness,
                        dict(sorted(hist.items())), indet, viol)


def search_findings(rec: SearchRecord) -> list[Finding]:
    """Witness as INFO; a count above the sign-change bound would be CRITICAL."""
    out = []
    if rec.witness is not None:
        inp = {"k": rec.k, "seed": rec.seed, "trial": rec.witness["trial"]}
        sev = CRITICAL if rec.bound_violations else INFO
        out.append(Finding("expsum.max_zeros", inp, _witness_obs(inp), sev, seed=rec.seed,
                           trial_index=rec.witness["trial"]))
    return out


def _witness_obs(inp) -> str:
    tr = _trial(inp["seed"], inp["trial"], inp["k"])
    if tr is None:
        return "no sample"
    zc = count_real_zeros(tr[2])
    return f"zeros={zc.count} bound={descartes_bound(tr[2])} indeterminate={zc.indeterminate}"


@register_replay("expsum.max_zeros")
def _replay(inp, tol):
    return _witness_obs(inp)


def residual_at_zeros(s: ExpSum, zeros: Sequence[float]) -> list[float]:
    """``|y(x)| / sum |c_j exp(l_j x)|`` at each zero."""
    mu, c = _real_terms(s)
    g, mag = _scaled(mu, c)
    return [abs(g(x)) / mag(x) for x in zeros]

