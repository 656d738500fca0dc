"""Difference operators, the bullet product and mesh-preservation harnesses.

Mesh of a real-rooted polynomial with simple zeros is the minimal gap
between consecutive roots.  With fewer than two roots the mesh is taken to
be ``+inf``, so constants and linear polynomials always satisfy
"mesh >= 1".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegreeTooHigh, PolyconjError
from .ledger import Finding, VIOLATION_CANDIDATE, register_replay, trial_rng
from .polycore import RatPoly, isolate_roots, mesh_at_least


@dataclass(frozen=True)
class DiffOp:
    """``T p(x) = a_0 p(x) + a_1 p(x-1) + ... + a_k p(x-k)``."""

    a: tuple

    def __post_init__(self):
        a = tuple(Fraction(v) if not isinstance(v, float) else v for v in self.a)
        if not any(v != 0 for v in a):
            raise ValueError("difference operator with all-zero coefficients")
        object.__setattr__(self, "a", a)

    @classmethod
    def parse(cls, text: str) -> "DiffOp":
        return cls(tuple(Fraction(t) for t in text.split(",")))

    @property
    def certified(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.a)

    def __call__(self, p: RatPoly) -> RatPoly:
        return apply_diffop(self, p)


def apply_diffop(T, p: RatPoly) -> RatPoly:
    T = T if isinstance(T, DiffOp) else DiffOp(tuple(T))
    out = RatPoly()
    for j, aj in enumerate(T.a):
        if aj != 0:
            out = out + p.shift(-j) * Fraction(aj)
    return out


def pochhammer(m: int) -> RatPoly:
    """Falling factorial ``x (x-1) ... (x-m+1)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return RatPoly.from_roots(range(m))


def forward_diff(p: RatPoly, order: int = 1) -> RatPoly:
    if order < 0:
        raise ValueError("order must be non-negative")
    for _ in range(order):
        p = p.shift(1) - p
    return p


def bullet(p: RatPoly, q: RatPoly, d: int) -> RatPoly:
    """``sum_{k=0}^{d} (nabla^k p)(0) * (nabla^{d-k} q)(x)``."""
    if p.degree > d or q.degree > d:
        raise DegreeTooHigh(f"degrees {p.degree}, {q.degree} exceed level {d}")
    out = RatPoly()
    dp = p
    diffs_q = [q]
    for _ in range(d):
        diffs_q.append(forward_diff(diffs_q[-1]))
    for k in range(d + 1):
        c = dp(Fraction(0))
        if c != 0:
            out = out + diffs_q[d - k] * c
        dp = forward_diff(dp)
    return out


def in_mesh_class(p: RatPoly) -> bool:
    """Real-rooted with simple zeros and mesh >= 1 (exact).

    Nonzero constants count as members (no roots).  The zero polynomial is
    also accepted, following the usual convention that it is real-rooted;
    callers that care count it separately as degenerate.
    """
    if p.degree <= 0:
        return True
    rep = isolate_roots(p)
    if not rep.all_real_simple:
        return False
    return mesh_at_least(p, 1)


def sample_mesh_poly(rng, max_degree: int, exact_gap_share: float = 0.5) -> RatPoly:
    """Random member of the class: roots with gaps ``1 + |Exp|`` or exactly 1.

    Gaps are rounded to rationals with denominator 64 so everything stays
    exact; the leading coefficient is ``+-1``.
    """
    deg = int(rng.integers(1, max_degree + 1))
    start = Fraction(round(rng.normal(0, 3) * 64), 64)
    roots = [start]
    unit = rng.random() < exact_gap_share
    for _ in range(deg - 1):
        if unit and rng.random() < 0.7:
            gap = Fraction(1)
        else:
            gap = 1 + Fraction(round(abs(rng.exponential(1.0)) * 64), 64)
        roots.append(roots[-1] + gap)
    lead = 1 if rng.random() < 0.5 else -1
    return RatPoly.from_roots(roots, lead)


@dataclass
class Conj8Report:
    op: tuple
    m: int
    hypothesis: bool
    trials: int
    violations: int
    certified: bool
    findings: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.hypothesis:
            return "SUFFICIENCY_COUNTEREXAMPLE" if self.violations else "CONSISTENT"
        return "NECESSITY_DATA_POINT" if self.violations == 0 else "CONSISTENT"

    def to_json(self) -> dict:
        return {"op": [str(v) for v in self.op], "m": self.m, "hypothesis": self.hypothesis,
                "trials": self.trials, "violations": self.violations, "certified": self.certified,
                "verdict": self.verdict, "findings": [f.finding_id for f in self.findings]}


def conj8_hypothesis(T, m: int) -> bool:
    T = T if isinstance(T, DiffOp) else DiffOp(tuple(T))
    return in_mesh_class(apply_diffop(T, pochhammer(m)))


def check_conj8(T, m: int, trials: int, seed: int) -> Conj8Report:
    """Sample the class of degree <= m and test whether T preserves it.

    With the hypothesis true, any violation contradicts sufficiency.  With
    it false, zero violations over all trials is reported as a data point
    against necessity, never as proof.
    """
    T = T if isinstance(T, DiffOp) else DiffOp(tuple(T))
    if m < 1:
        raise ValueError("m must be >= 1")
    if not T.certified:
        T = DiffOp(tuple(Fraction(v) for v in T.a))
        certified = False
    else:
        certified = True
    H = conj8_hypothesis(T, m)
    violations = 0
    findings = []
    for t in range(trials):
        p = sample_mesh_poly(trial_rng(seed, t), m)
        Tp = apply_diffop(T, p)
        if not in_mesh_class(Tp):
            violations += 1
            if H:
                findings.append(Finding("mesh.conj8", {"op": [str(v) for v in T.a], "m": m, "p": p.to_list()},
                                        _conj8_obs(T, p), VIOLATION_CANDIDATE, seed=seed, trial_index=t))
    return Conj8Report(T.a, m, H, trials, violations, certified, findings)


def _conj8_obs(T, p) -> str:
    Tp = apply_diffop(T, p)
    return f"T(p)={Tp} in_class={in_mesh_class(Tp)}"


@register_replay("mesh.conj8")
def _replay8(inp, tol):
    return _conj8_obs(DiffOp(tuple(Fraction(v) for v in inp["op"])), RatPoly(inp["p"]))


def _conj9_obs(p, q, d) -> str:
    r = bullet(p, q, d)
    return f"p.q={r} in_class={in_mesh_class(r)}"


@register_replay("mesh.conj9")
def _replay9(inp, tol):
    return _conj9_obs(RatPoly(inp["p"]), RatPoly(inp["q"]), inp["d"])


def check_conj9(trials: int, d: int, seed: int) -> dict:
    """Sample pairs from the class of degree <= d and test the bullet product."""
    if d < 1:
        raise ValueError("d must be >= 1")
    findings = []
    degenerate = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        p = sample_mesh_poly(rng, d)
        q = sample_mesh_poly(rng, d)
        r = bullet(p, q, d)
        if r.degree <= 0:
            degenerate += 1
        if not in_mesh_class(r):
            findings.append(Finding("mesh.conj9", {"p": p.to_list(), "q": q.to_list(), "d": d},
                                    _conj9_obs(p, q, d), VIOLATION_CANDIDATE, seed=seed, trial_index=t))
    return {"trials": trials, "d": d, "seed": seed, "violations": len(findings),
            "degenerate": degenerate, "findings": findings}
