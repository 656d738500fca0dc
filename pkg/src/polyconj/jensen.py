"""Jensen polynomials, weighted Laguerre-type polynomials and their checks.

``P_i`` is defined as ``(2i)!`` times the coefficient of ``y^(2i)`` in
``|p(x + iy)|^2 = p(x + iy) p(x - iy)``; with that normalization
``P_1 = 2((p')^2 - p p'')``.  The derivative form

    P_i = sum_{j=0}^{2i} (-1)^(i+j) C(2i, j) p^(j) p^(2i-j)

agrees with it exactly and is what the checkers use; the bivariate
expansion in :func:`phi_expand` is kept as an independent route.

Counting conventions: ``#r`` counts distinct real zeros, ``#nr`` counts
non-real zeros with multiplicity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import IndexOutOfRange, NotRationallySplit, OddDegree, RealZerosNotSimple
from .ledger import CRITICAL, VIOLATION_CANDIDATE, Finding, register_replay, trial_rng
from .polycore import (
    RatPoly,
    derivative,
    is_strictly_positive,
    isolate_roots,
    poly_gcd,
    real_zero_counts,
    refine,
    sturm_count,
)


# ---------------------------------------------------------------------------
# the two routes to P_i


def phi_coefficients(p: RatPoly) -> list[RatPoly]:
    """Coefficients ``[Q_0, Q_1, ...]`` of ``y^(2i)`` in ``p(x+iy) p(x-iy)``.

    Computed by expanding ``(x + iy)^n`` binomially into a bivariate
    polynomial with Gaussian-rational coefficients, multiplying by its
    conjugate and reading off the even powers of ``y``.
    """
    k = p.degree
    # s[(a, b)] = complex coefficient of x^a y^b in p(x + iy), as (re, im)
    s: dict = {}
    for n, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for b in range(n + 1):
            w = c * math.comb(n, b)
            # i^b
            re, im = [(w, 0), (0, w), (-w, 0), (0, -w)][b % 4]
            key = (n - b, b)
            r0, i0 = s.get(key, (Fraction(0), Fraction(0)))
            s[key] = (r0 + re, i0 + im)
    prod: dict = {}
    for (a1, b1), (r1, i1) in s.items():
        for (a2, b2), (r2, i2) in s.items():
            # p(x - iy) carries the conjugate coefficients; keep the real part
            re = r1 * r2 + i1 * i2
            key = (a1 + a2, b1 + b2)
            prod[key] = prod.get(key, Fraction(0)) + re
    out = []
    for i in range(k + 1):
        coeffs = [prod.get((a, 2 * i), Fraction(0)) for a in range(2 * k + 1)]
        out.append(RatPoly(coeffs))
    return out


def phi_expand(p: RatPoly) -> list[RatPoly]:
    """``[P_0, ..., P_k]`` with ``P_i = (2i)! [y^(2i)] |p(x+iy)|^2``."""
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    return [q * math.factorial(2 * i) for i, q in enumerate(phi_coefficients(p))]


def jensen_literal(p: RatPoly, i: int, reading: str = "symmetric") -> RatPoly:
    """Derivative-form ``P_i``.

    ``reading="symmetric"`` sums ``j = 0..2i`` and equals the Phi-route
    exactly.  ``reading="printed"`` stops the sum at ``j = i``; it is kept
    so the two readings can be compared (for ``i = 1`` it gives
    ``2 (p')^2 - p p''``, which is not proportional to ``(p')^2 - p p''``).
    """
    k = p.degree
    if not 0 <= i <= k:
        raise IndexOutOfRange(f"i = {i} outside 0..{k}")
    top = 2 * i if reading == "symmetric" else i
    if reading not in ("symmetric", "printed"):
        raise ValueError(f"unknown reading {reading!r}")
    ders = [derivative(p, j) for j in range(2 * i + 1)]
    out = RatPoly()
    for j in range(top + 1):
        term = ders[j] * ders[2 * i - j] * math.comb(2 * i, j)
        out = out + (term if (i + j) % 2 == 0 else -term)
    return out


def jensen_family(p: RatPoly) -> list[RatPoly]:
    return [jensen_literal(p, i) for i in range(p.degree + 1)]


def proportionality(a: RatPoly, b: RatPoly) -> Optional[Fraction]:
    """``c`` with ``a == c * b`` exactly, or ``None``."""
    if b.is_zero():
        return Fraction(1) if a.is_zero() else None
    c = a.lc / b.lc if not a.is_zero() else Fraction(0)
    return c if a == b * c else None


def _split_roots(p: RatPoly) -> list[Fraction]:
    rep = isolate_roots(p)
    ivs = [refine(p, iv, Fraction(1, 2**64)) for iv in rep.isolating]
    roots = [iv.lo for iv in ivs if iv.is_point]
    if not rep.all_real_simple or len(roots) != p.degree:
        raise NotRationallySplit(f"{p} does not split into distinct rational linear factors")
    return roots


def sum_formula(p: RatPoly, i: int, reading: str = "subsets") -> RatPoly:
    """``P_i`` from the root-sum representation.

    ``subsets``: ``p^2 * sum over i-subsets {l_1 < ... < l_i} of
    (2i)! / prod (x - x_l)^2`` (the form consistent with the expansion).
    ``ordered``: the same sum over ordered i-tuples of distinct indices.
    ``tuples``: the sum over all 2i-tuples with repetition, taken literally.
    """
    roots = _split_roots(p)
    lead = p.lc
    k = len(roots)
    lin = [RatPoly([-r, 1]) for r in roots]
    sq = [f * f for f in lin]
    fact = math.factorial(2 * i)
    out = RatPoly()
    if reading in ("subsets", "ordered"):
        mult = math.factorial(i) if reading == "ordered" else 1
        for S in itertools.combinations(range(k), i):
            term = RatPoly([lead * lead * fact * mult])
            for l in range(k):
                if l not in S:
                    term = term * sq[l]
            out = out + term
        return out
    if reading == "tuples":
        # p^2 / prod_{j} (x - x_{l_j})^2 over 2i-tuples; only defined when 4i <= 2k
        if 2 * i > k:
            return RatPoly()
        from collections import Counter

        for tup in itertools.product(range(k), repeat=2 * i):
            cnt = Counter(tup)
            if any(v > 1 for v in cnt.values()):
                continue  # p^2 has each root only twice
            term = RatPoly([lead * lead * fact])
            for l in range(k):
                if l not in cnt:
                    term = term * sq[l]
            out = out + term
        return out
    raise ValueError(f"unknown reading {reading!r}")


@dataclass
class SumFormulaCheck:
    i: int
    reading: str
    factor: Optional[Fraction]

    @property
    def agree(self) -> bool:
        return self.factor is not None and self.factor > 0


def sum_formula_check(p: RatPoly, i: int, reading: str = "subsets") -> SumFormulaCheck:
    """Compare the root-sum route with the expansion; report the positive factor."""
    P = phi_expand(p)[i]
    S = sum_formula(p, i, reading)
    return SumFormulaCheck(i, reading, proportionality(P, S))


# ---------------------------------------------------------------------------
# weighted polynomials and the two criteria


def g_poly(p: RatPoly, i: int) -> RatPoly:
    """``(k-i) (p^(i))^2 - (k-i+1) p^(i-1) p^(i+1)``."""
    k = p.degree
    if not 1 <= i <= k - 1:
        raise IndexOutOfRange(f"i = {i} outside 1..{k - 1}")
    a, b, c = derivative(p, i - 1), derivative(p, i), derivative(p, i + 1)
    return b * b * (k - i) - a * c * (k - i + 1)


@dataclass
class CriterionRecord:
    all_positive: bool
    real_simple: bool

    @property
    def agree(self) -> bool:
        return self.all_positive == self.real_simple

    def to_json(self) -> dict:
        return {"all_positive": self.all_positive, "real_simple": self.real_simple, "agree": self.agree}


def _real_simple(p: RatPoly) -> bool:
    return isolate_roots(p).all_real_simple


def criterion1(p: RatPoly) -> CriterionRecord:
    k = p.degree
    if k < 2:
        raise ValueError("criterion needs degree >= 2")
    pos = all(is_strictly_positive(jensen_literal(p, i)) for i in range(1, k))
    return CriterionRecord(pos, _real_simple(p))


def criterion2(p: RatPoly) -> CriterionRecord:
    k = p.degree
    if k < 2:
        raise ValueError("criterion needs degree >= 2")
    pos = all(is_strictly_positive(g_poly(p, i)) for i in range(1, k))
    return CriterionRecord(pos, _real_simple(p))


# ---------------------------------------------------------------------------
# zero-count inequalities


def real_zeros_simple(p: RatPoly) -> bool:
    """True when every real zero of ``p`` is simple: ``gcd(p, p')`` has no real root."""
    g = poly_gcd(p, derivative(p))
    return g.degree <= 0 or sturm_count(g) == 0


def _require_simple_real(p: RatPoly):
    if not real_zeros_simple(p):
        raise RealZerosNotSimple(f"{p} has a multiple real zero")


def n_real(q: RatPoly) -> Optional[int]:
    """Distinct real zeros; ``None`` for the zero polynomial."""
    if q.is_zero():
        return None
    return sturm_count(q)


def n_nonreal(p: RatPoly) -> int:
    return p.degree - real_zero_counts(p)[1]


@dataclass
class InequalityRecord:
    name: str
    lhs: int
    rhs: int
    holds: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "detail": self.detail}

    @property
    def observation(self) -> str:
        return f"{self.name}: lhs={self.lhs} rhs={self.rhs} holds={self.holds} {self.detail}".strip()


def hawaiian_check(p: RatPoly) -> InequalityRecord:
    """``#r[(p')^2 - p p''] <= #nr p`` for p with simple real zeros."""
    _require_simple_real(p)
    d1 = derivative(p)
    q = d1 * d1 - p * derivative(p, 2)
    lhs, rhs = n_real(q), n_nonreal(p)
    return InequalityRecord("haw", lhs, rhs, lhs <= rhs)


def conjweight_check(p: RatPoly) -> InequalityRecord:
    """``#r G_1 <= #nr p`` for p with simple real zeros."""
    _require_simple_real(p)
    lhs, rhs = n_real(g_poly(p, 1)), n_nonreal(p)
    if lhs is None:
        return InequalityRecord("weight", -1, rhs, True, "G1=0")
    return InequalityRecord("weight", lhs, rhs, lhs <= rhs)


def conjwplus_check(p: RatPoly) -> InequalityRecord:
    """``#r G_1 + #r p > 0`` for even degree."""
    if p.degree % 2:
        raise OddDegree(f"degree {p.degree} is odd")
    a, b = n_real(g_poly(p, 1)), n_real(p)
    if a is None:
        return InequalityRecord("wplus", b, 0, b > 0, f"G1=0 p_real={b}")
    return InequalityRecord("wplus", a + b, 0, a + b > 0, f"G1_real={a} p_real={b}")


def conj2_check(p: RatPoly) -> InequalityRecord:
    """``#r P_i <= min(deg P_i, k)`` for every i = 1..k-1."""
    k = p.degree
    worst_lhs, worst_rhs, holds, parts = 0, 0, True, []
    for i in range(1, k):
        P = jensen_literal(p, i)
        lhs, rhs = n_real(P), min(P.degree, k)
        parts.append(f"P{i}:{lhs}/{rhs}")
        if lhs > rhs:
            holds = False
        if lhs - rhs >= worst_lhs - worst_rhs or i == 1:
            worst_lhs, worst_rhs = lhs, rhs
    return InequalityRecord("conj2", worst_lhs, worst_rhs, holds, " ".join(parts))


def corollary19_check(p: RatPoly) -> InequalityRecord:
    """``#r G_i <= min(deg G_i, #nr p)`` for every i = 1..k-1."""
    _require_simple_real(p)
    k = p.degree
    nr = n_nonreal(p)
    worst_lhs, worst_rhs, holds, parts = 0, 0, True, []
    for i in range(1, k):
        G = g_poly(p, i)
        lhs = n_real(G)
        if lhs is None:
            # p^(i-1) is a pure power; the count is undefined, not a violation
            parts.append(f"G{i}:zero")
            continue
        rhs = min(G.degree, nr)
        parts.append(f"G{i}:{lhs}/{rhs}")
        if lhs > rhs:
            holds = False
        if lhs - rhs >= worst_lhs - worst_rhs or i == 1:
            worst_lhs, worst_rhs = lhs, rhs
    return InequalityRecord("cor19", worst_lhs, worst_rhs, holds, " ".join(parts))


def _crit_record(name, fn):
    def check(p: RatPoly) -> InequalityRecord:
        r = fn(p)
        return InequalityRecord(name, int(r.all_positive), int(r.real_simple), r.agree)
    return check


CHECKS = {
    "haw": (hawaiian_check, CRITICAL),
    "weight": (conjweight_check, VIOLATION_CANDIDATE),
    "wplus": (conjwplus_check, VIOLATION_CANDIDATE),
    "conj2": (conj2_check, VIOLATION_CANDIDATE),
    "cor19": (corollary19_check, VIOLATION_CANDIDATE),
    "crit1": (_crit_record("crit1", criterion1), CRITICAL),
    "crit2": (_crit_record("crit2", criterion2), CRITICAL),
}

# which checks need the simple-real-zeros hypothesis / even degree
NEEDS_SIMPLE_REAL = {"haw", "weight", "cor19"}
NEEDS_EVEN = {"wplus"}


def finding_for(name: str, p: RatPoly, rec: InequalityRecord, seed=None, trial=None) -> Finding:
    return Finding(f"jensen.{name}", {"p": p.to_list()}, rec.observation, CHECKS[name][1],
                   seed=seed, trial_index=trial)


def _make_replay(name):
    def fn(inp, tol):
        return CHECKS[name][0](RatPoly(inp["p"])).observation
    return fn


for _name in CHECKS:
    register_replay(f"jensen.{_name}")(_make_replay(_name))


# ---------------------------------------------------------------------------
# random corpus


def random_simple_real_poly(rng, max_degree: int = 6, min_degree: int = 2) -> RatPoly:
    """Random p whose real zeros are simple; complex pairs are arbitrary.

    Built from distinct rational linear factors and quadratics with negative
    discriminant (quadratics may repeat), then optionally perturbed into a
    generic polynomial that is re-checked.
    """
    while True:
        k = int(rng.integers(min_degree, max_degree + 1))
        mode = rng.random()
        if mode < 0.3:
            coeffs = [Fraction(int(v)) for v in rng.integers(-9, 10, size=k)] + [Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])))]
            p = RatPoly(coeffs)
        else:
            nq = int(rng.integers(0, k // 2 + 1))
            nr = k - 2 * nq
            roots = set()
            while len(roots) < nr:
                roots.add(Fraction(int(rng.integers(-40, 41)), int(rng.integers(1, 9))))
            p = RatPoly.from_roots(sorted(roots), Fraction(int(rng.choice([-2, -1, 1, 2, 3]))))
            quads = []
            for _ in range(nq):
                if quads and rng.random() < 0.15:
                    quads.append(quads[-1])
                    continue
                re = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 5)))
                im2 = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 9)))
                quads.append(RatPoly([re * re + im2, -2 * re, 1]))
            for q in quads:
                p = p * q
        if p.degree >= min_degree and real_zeros_simple(p):
            return p


def run_conjecture(name: str, trials: int, seed: int, max_degree: int = 6, min_degree: int = 2) -> dict:
    """Seeded batch of one check over random polynomials.

    Checks that need even degree redraw (inside the same trial stream)
    until the degree is even.
    """
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    fn, _ = CHECKS[name]
    findings, held = [], 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        p = random_simple_real_poly(rng, max_degree, min_degree)
        while name in NEEDS_EVEN and p.degree % 2:
            p = random_simple_real_poly(rng, max_degree, max(min_degree, 2))
        rec = fn(p)
        if rec.holds:
            held += 1
        else:
            findings.append(finding_for(name, p, rec, seed, t))
    return {"check": name, "trials": trials, "seed": seed, "degrees": [min_degree, max_degree],
            "held": held, "violations": len(findings), "findings": findings}
