"""Roots of ``p + i q`` for real polynomials p, q and a corpus generator.

The Hermite-Biehler theorem says that with ``deg q = deg p - 1`` all roots
of ``p + i q`` lie in the open upper half-plane exactly when p and q have
real simple interlacing roots and the leading coefficients have opposite
signs.  The hypothesis side is checked exactly; the conclusion side is
numerical, with a margin taken from the Weierstrass inclusion radii.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DegreeMismatch, NotRealRooted, NotSimple
from .ledger import trial_rng
from .polycore import RatPoly, complex_roots_numeric, interlace_check, isolate_roots

INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class HBPair:
    p: RatPoly
    q: RatPoly

    def s_coeffs(self) -> np.ndarray:
        """Ascending complex coefficients of ``p + i q``."""
        n = max(len(self.p.coeffs), len(self.q.coeffs))
        a = np.zeros(n, dtype=complex)
        for k, c in enumerate(self.p.coeffs):
            a[k] += float(c)
        for k, c in enumerate(self.q.coeffs):
            a[k] += 1j * float(c)
        return a


@dataclass
class HBRecord:
    hypotheses_hold: bool
    all_roots_upper: object  # True, False or INDETERMINATE
    min_imag: float
    roots: list

    def to_json(self) -> dict:
        return {"hypotheses_hold": self.hypotheses_hold, "all_roots_upper": self.all_roots_upper,
                "min_imag": self.min_imag, "roots": [_croot(r) for r in self.roots]}


def _croot(r) -> list:
    return [r.value.real, r.value.imag, r.radius]


def hb_hypotheses(pair: HBPair) -> bool:
    p, q = pair.p, pair.q
    if p.degree != q.degree + 1:
        raise DegreeMismatch(f"deg p = {p.degree}, deg q = {q.degree}")
    try:
        inter = interlace_check(p, q)
    except (NotRealRooted, NotSimple):
        return False
    return inter and p.lc * q.lc < 0


def hb_verify(pair: HBPair, tol: float = 1e-12) -> HBRecord:
    """Exact hypotheses against numerically located roots of ``p + i q``.

    A root counts as upper when its imaginary part exceeds both its
    inclusion radius and ``tol`` times the root scale; a root closer to the
    axis than that makes the verdict INDETERMINATE.
    """
    hyp = hb_hypotheses(pair)
    roots = complex_roots_numeric(pair.s_coeffs(), tol=tol)
    if not roots:
        return HBRecord(hyp, True, float("inf"), [])
    scale = max(1.0, max(abs(r.value) for r in roots))
    near = any(abs(r.value.imag) <= max(r.radius, tol * scale) for r in roots)
    if near:
        verdict: object = INDETERMINATE
    else:
        verdict = all(r.value.imag > 0 for r in roots)
    return HBRecord(hyp, verdict, min(r.value.imag for r in roots), roots)


def wronskian(p: RatPoly, q: RatPoly) -> RatPoly:
    """``p q' - p' q``."""
    return p * q.derivative() - p.derivative() * q


# ---- samplers ---------------------------------------------------------------


def _rat(v: float, den: int = 64) -> Fraction:
    return Fraction(round(v * den), den)


def random_interlacing_pair(rng, degree: int) -> HBPair:
    """p of the given degree and q of degree-1, strictly interlacing, with
    opposite leading signs."""
    pts = []
    while len(set(pts)) != 2 * degree - 1:
        pts = sorted(_rat(v) for v in rng.normal(0, 3, size=2 * degree - 1))
    lead = 1 if rng.random() < 0.5 else -1
    scale = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))
    p = RatPoly.from_roots(pts[0::2], lead)
    q = RatPoly.from_roots(pts[1::2], -lead * scale)
    return HBPair(p, q)


def random_pair(rng, degree: int) -> HBPair:
    p = RatPoly([int(v) for v in rng.integers(-9, 10, size=degree)] + [int(rng.choice([-1, 1])) * int(rng.integers(1, 10))])
    q = RatPoly([int(v) for v in rng.integers(-9, 10, size=degree)])
    return HBPair(p, q)


LAWS = ("interlacing", "random", "zero_q")


def _roots_json(p) -> list:
    if isinstance(p, RatPoly) and p.degree < 1:
        return []
    return [_croot(r) for r in complex_roots_numeric(p)]


def fisk_row(pair: HBPair, law: str, seed: int, trial: int) -> dict:
    p, q = pair.p, pair.q
    w = wronskian(p, q)
    s_roots = complex_roots_numeric(pair.s_coeffs())
    try:
        inter = q.degree >= 0 and p.degree == q.degree + 1 and interlace_check(p, q)
    except (NotRealRooted, NotSimple):
        inter = False
    return {
        "law": law, "seed": seed, "trial": trial,
        "p": p.to_list(), "q": q.to_list(),
        "roots_p": _roots_json(p), "roots_q": _roots_json(q),
        "roots_s": [_croot(r) for r in s_roots],
        "roots_w": _roots_json(w) if not w.is_zero() else None,
        "flags": {
            "q_zero": q.is_zero(),
            "interlacing": bool(inter),
            "p_real_rooted": isolate_roots(p).with_multiplicity == p.degree,
            "upper": sum(1 for r in s_roots if r.value.imag > r.radius),
            "lower": sum(1 for r in s_roots if r.value.imag < -r.radius),
            "near_axis": sum(1 for r in s_roots if abs(r.value.imag) <= r.radius),
        },
    }


def fisk_scan(degree: int, trials: int, seed: int, laws=LAWS) -> Iterator[dict]:
    """Exploratory corpus of ``p + i q`` root data; one row per trial.

    The law cycles through ``laws`` by trial index.  ``zero_q`` rows are the
    degenerate case where the roots of ``p + i q`` are those of p.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for t in range(trials):
        rng = trial_rng(seed, t)
        law = laws[t % len(laws)]
        if law == "interlacing":
            pair = random_interlacing_pair(rng, degree)
        elif law == "random":
            pair = random_pair(rng, degree)
        elif law == "zero_q":
            pair = HBPair(random_pair(rng, degree).p, RatPoly())
        else:
            raise ValueError(f"unknown law {law!r}")
        yield fisk_row(pair, law, seed, t)


def write_corpus(rows, path) -> int:
    n = 0
    with open(path, "a") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
            n += 1
    return n


def hb_regression(trials: int, seed: int, degrees=(2, 8), tol: float = 1e-12) -> dict:
    """Theorem direction on random interlacing pairs; failures point at the root finder."""
    lo, hi = degrees
    fails, indet, min_imag = [], 0, float("inf")
    for t in range(trials):
        rng = trial_rng(seed, t)
        pair = random_interlacing_pair(rng, int(rng.integers(lo, hi + 1)))
        rec = hb_verify(pair, tol)
        if rec.all_roots_upper == INDETERMINATE:
            indet += 1
        elif not (rec.hypotheses_hold and rec.all_roots_upper is True):
            fails.append(t)
        min_imag = min(min_imag, rec.min_imag)
    return {"trials": trials, "seed": seed, "failures": fails, "indeterminate": indet, "min_imag": min_imag}
