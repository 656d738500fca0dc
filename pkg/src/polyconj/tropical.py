"""Tropical and log-concavity bounds for real zeros of positive polynomials.

For ``f(z) = sum a_k z^k`` with all ``a_k > 0`` three quantities are
compared against the number of real zeros of ``f``:

* the number of corners of ``max_k (log a_k + log C(n,k) + k x)``,
* ``vtilde``: parity changes along the indices with
  ``(k+1) a_k^2 - k a_{k-1} a_{k+1} > 0``,
* ``vc``: parity changes along the indices with ``a_k^2 - a_{k-1} a_{k+1} >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import Indeterminate, PolyconjError
from .ledger import Finding, VIOLATION_CANDIDATE, register_replay, trial_rng
from .polycore import RatPoly, count_roots, real_zero_counts

FLOAT_PREC_BITS = 200
FLOAT_MARGIN = mpmath.mpf("1e-30")


@dataclass(frozen=True)
class PosCoeffPoly:
    a: tuple

    def __post_init__(self):
        a = tuple(Fraction(v) if isinstance(v, (int, str, Fraction)) else v for v in self.a)
        if len(a) < 2:
            raise ValueError("need degree n >= 1")
        if any(not v > 0 for v in a):
            raise ValueError("all coefficients must be strictly positive")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.a)

    def poly(self) -> RatPoly:
        return RatPoly(self.a)


def _as_pcp(f) -> PosCoeffPoly:
    return f if isinstance(f, PosCoeffPoly) else PosCoeffPoly(tuple(f))


def _above_exact(wi, wj, wk, i, j, k) -> bool:
    # (j, log wj) strictly above the chord from (i, log wi) to (k, log wk)
    return wj ** (k - i) > wi ** (k - j) * wk ** (j - i)


def _above_float(li, lj, lk, i, j, k) -> bool:
    diff = (k - i) * lj - (k - j) * li - (j - i) * lk
    if abs(diff) <= FLOAT_MARGIN:
        raise Indeterminate("tropical hull decision inside the float margin; perturb the input")
    return diff > 0


def trop_hull(f) -> list[int]:
    """Indices k whose lines attain the upper envelope on an open set."""
    f = _as_pcp(f)
    n = f.n
    idx = list(range(n + 1))
    if f.exact:
        w = [f.a[k] * math.comb(n, k) for k in idx]
        above = lambda i, j, k: _above_exact(w[i], w[j], w[k], i, j, k)  # noqa: E731
    else:
        with mpmath.workprec(FLOAT_PREC_BITS):
            lw = [mpmath.log(mpmath.mpf(f.a[k])) + mpmath.log(math.comb(n, k)) for k in idx]

        def above(i, j, k):
            with mpmath.workprec(FLOAT_PREC_BITS):
                return _above_float(lw[i], lw[j], lw[k], i, j, k)

    hull: list[int] = []
    for k in idx:
        while len(hull) >= 2 and not above(hull[-2], hull[-1], k):
            hull.pop()
        hull.append(k)
    return hull


def trop_corner_count(f) -> int:
    return len(trop_hull(f)) - 1


def _parity_changes(indices: Sequence[int]) -> int:
    return sum(1 for a, b in zip(indices, indices[1:]) if a % 2 != b % 2)


def _padded(a):
    zero = Fraction(0) if all(isinstance(v, Fraction) for v in a) else 0.0
    return [zero] + list(a) + [zero]


def ctilde(f) -> list:
    """``(k+1) a_k^2 - k a_{k-1} a_{k+1}`` with ``a_{-1} = a_{n+1} = 0``."""
    f = _as_pcp(f)
    a = _padded(f.a)
    return [(k + 1) * a[k + 1] ** 2 - k * a[k] * a[k + 2] for k in range(f.n + 1)]


def cvals(f) -> list:
    """``a_k^2 - a_{k-1} a_{k+1}``."""
    f = _as_pcp(f)
    a = _padded(f.a)
    return [a[k + 1] ** 2 - a[k] * a[k + 2] for k in range(f.n + 1)]


def vtilde(f) -> int:
    c = ctilde(f)
    return _parity_changes([k for k, v in enumerate(c) if v > 0])


def vc(f) -> int:
    c = cvals(f)
    return _parity_changes([k for k, v in enumerate(c) if v >= 0])


@dataclass
class BoundsRecord:
    a: tuple
    real_zeros: int
    real_zeros_distinct: int
    corner_bound: int
    vtilde: int
    vc: int
    all_negative: bool
    multiplicity: bool

    @property
    def violations(self) -> list[str]:
        out = []
        if self.real_zeros > self.corner_bound:
            out.append("conj12")
        if self.real_zeros > self.vtilde:
            out.append("conj13")
        if self.real_zeros > self.vc:
            out.append("conj14")
        return out

    def to_json(self) -> dict:
        return {
            "a": [str(v) for v in self.a],
            "real_zeros": self.real_zeros,
            "real_zeros_distinct": self.real_zeros_distinct,
            "corner_bound": self.corner_bound,
            "vtilde": self.vtilde,
            "vc": self.vc,
            "all_negative": self.all_negative,
            "violations": self.violations,
        }


def check_bounds(f, multiplicity: bool = True) -> BoundsRecord:
    """Certified real-zero count of ``f`` against the three bounds."""
    f = _as_pcp(f)
    if not f.exact:
        raise ValueError("check_bounds needs rational coefficients")
    p = f.poly()
    distinct, mult = real_zero_counts(p)
    nonneg = count_roots(p, (0, None)) + (1 if p(Fraction(0)) == 0 else 0)
    if nonneg:
        raise PolyconjError(f"positive polynomial {p} has a non-negative real root")
    return BoundsRecord(
        a=f.a,
        real_zeros=mult if multiplicity else distinct,
        real_zeros_distinct=distinct,
        corner_bound=trop_corner_count(f),
        vtilde=vtilde(f),
        vc=vc(f),
        all_negative=True,
        multiplicity=multiplicity,
    )


def _round_sig(x: float, digits: int = 4) -> Fraction:
    e = math.floor(math.log10(x)) - (digits - 1)
    return Fraction(round(x / 10.0**e)) * Fraction(10) ** e


def sample_poscoeff(rng, n: int, L: float = 6) -> PosCoeffPoly:
    """Coefficients ``10^u``, ``u ~ U[-L, L]``, rounded to 4 significant digits."""
    return PosCoeffPoly(tuple(_round_sig(10.0 ** u) for u in rng.uniform(-L, L, size=n + 1)))


_BOUND_NAME = {"conj12": "corner_bound", "conj13": "vtilde", "conj14": "vc"}


def run_check(trials: int, seed: int, degrees=(2, 10), L: float = 6, multiplicity: bool = True) -> dict:
    """Seeded batch of :func:`check_bounds`; returns a summary with findings."""
    lo, hi = degrees
    counts = {"conj12": 0, "conj13": 0, "conj14": 0}
    findings: list[Finding] = []
    tight = {"conj12": 0, "conj13": 0, "conj14": 0}
    for t in range(trials):
        rng = trial_rng(seed, t)
        n = int(rng.integers(lo, hi + 1))
        f = sample_poscoeff(rng, n, L)
        rec = check_bounds(f, multiplicity)
        for cid, attr in _BOUND_NAME.items():
            if rec.real_zeros == getattr(rec, attr):
                tight[cid] += 1
        for cid in rec.violations:
            counts[cid] += 1
            findings.append(Finding(
                f"tropical.{cid}", {"a": [str(v) for v in f.a], "multiplicity": multiplicity},
                _observation(rec, cid), VIOLATION_CANDIDATE, seed=seed, trial_index=t))
    return {"trials": trials, "seed": seed, "degrees": [lo, hi], "L": L, "multiplicity": multiplicity,
            "violations": counts, "tight": tight, "findings": findings}


def _observation(rec: BoundsRecord, cid: str) -> str:
    return f"real_zeros={rec.real_zeros} {_BOUND_NAME[cid]}={getattr(rec, _BOUND_NAME[cid])}"


def _make_replay(cid):
    def fn(inp, tol):
        rec = check_bounds(PosCoeffPoly(tuple(Fraction(v) for v in inp["a"])), inp.get("multiplicity", True))
        return _observation(rec, cid)
    return fn


for _cid in _BOUND_NAME:
    register_replay(f"tropical.{_cid}")(_make_replay(_cid))
