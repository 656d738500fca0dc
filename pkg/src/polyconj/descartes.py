"""Sign patterns, Descartes pairs and the realizability search.

Patterns are stored in ASCENDING coefficient order: ``signs[i]`` is the
sign of the coefficient of ``x^i``.  Root counts are taken with
multiplicity throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import NotAdmissible, PolyconjError, ZeroCoefficient
from .ledger import Finding, VIOLATION_CANDIDATE, register_replay, trial_rng
from .polycore import RatPoly, count_roots


@dataclass(frozen=True)
class SignPattern:
    signs: tuple

    def __post_init__(self):
        s = tuple(int(v) for v in self.signs)
        if len(s) < 2 or any(v not in (1, -1) for v in s):
            raise ValueError(f"invalid sign pattern {self.signs!r}")
        object.__setattr__(self, "signs", s)

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """``"++-++"`` (ascending) or a comma-separated list of ``+``/``-``."""
        text = text.replace(",", "").replace(" ", "")
        return cls(tuple(1 if ch == "+" else -1 if ch == "-" else 0 for ch in text))

    @classmethod
    def of(cls, p: RatPoly) -> "SignPattern":
        if any(c == 0 for c in p.coeffs) or p.degree < 1:
            raise ZeroCoefficient(f"{p} has a vanishing coefficient")
        return cls(tuple(1 if c > 0 else -1 for c in p.coeffs))

    @property
    def degree(self) -> int:
        return len(self.signs) - 1

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def normalized(self) -> "SignPattern":
        """Overall sign fixed so the constant term is ``+``."""
        if self.signs[0] > 0:
            return self
        return SignPattern(tuple(-s for s in self.signs))


class PairPN(NamedTuple):
    pos: int
    neg: int

    def swapped(self) -> "PairPN":
        return PairPN(self.neg, self.pos)


def _as_pattern(sp) -> SignPattern:
    return sp if isinstance(sp, SignPattern) else SignPattern.parse(sp) if isinstance(sp, str) else SignPattern(sp)


def descartes_pair(sp) -> PairPN:
    sp = _as_pattern(sp)
    s = sp.signs
    changes = sum(1 for a, b in zip(s, s[1:]) if a != b)
    pair = PairPN(changes, sp.degree - changes)
    assert pair.pos + pair.neg == sp.degree
    return pair


def admissible_pairs(sp) -> set:
    p, n = descartes_pair(sp)
    return {PairPN(a, b) for a in range(p % 2, p + 1, 2) for b in range(n % 2, n + 1, 2)}


def root_signature(p: RatPoly) -> PairPN:
    """Positive and negative roots of ``p`` counted with multiplicity."""
    sp = SignPattern.of(p)
    pair = PairPN(count_roots(p, (0, None), multiplicity=True), count_roots(p, (None, 0), multiplicity=True))
    if pair not in admissible_pairs(sp):
        raise PolyconjError(f"Descartes' rule violated by {p}: {pair} for pattern {sp}")
    return pair


# symmetry


def _reflect(sp: SignPattern) -> SignPattern:
    return SignPattern(tuple(s if i % 2 == 0 else -s for i, s in enumerate(sp.signs))).normalized()


def _reverse(sp: SignPattern) -> SignPattern:
    return SignPattern(tuple(reversed(sp.signs))).normalized()


_ACTIONS = {
    "id": (lambda sp: sp.normalized(), False),
    "neg": (_reflect, True),
    "rev": (_reverse, False),
    "negrev": (lambda sp: _reverse(_reflect(sp)), True),
}


def symmetry_orbit(sp) -> set:
    """Orbit under x -> -x and x -> 1/x as a set of ``(pattern, swaps_pair)``.

    Patterns are normalized to a ``+`` constant term (multiplying a
    polynomial by -1 changes no roots).
    """
    sp = _as_pattern(sp)
    return {(f(sp), swap) for f, swap in _ACTIONS.values()}


def pair_orbit(sp, pair) -> set:
    """Orbit of a (pattern, pair) combination as ``{(pattern, PairPN)}``."""
    pair = PairPN(*pair)
    return {(q, pair.swapped() if swap else pair) for q, swap in symmetry_orbit(sp)}


def transform_poly(p: RatPoly, action: str) -> RatPoly:
    """Apply a group element to a polynomial; result has a positive constant term."""
    if action in ("neg", "negrev"):
        p = p.reflect()
    if action in ("rev", "negrev"):
        p = p.reverse()
    return -p if p.coeffs[0] < 0 else p


def orbit_representative(sp) -> SignPattern:
    return min((q for q, _ in symmetry_orbit(sp)), key=lambda q: str(q))


# search


@dataclass
class SearchResult:
    pattern: SignPattern
    pair: PairPN
    witness: Optional[RatPoly]
    trials: int
    law: dict

    @property
    def realized(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        d = {
            "pattern": str(self.pattern),
            "pair": list(self.pair),
            "status": "REALIZED" if self.realized else "OPEN",
            "trials": self.trials,
        }
        if self.witness is not None:
            d["witness"] = self.witness.to_list()
        else:
            d["exhaustion"] = dict(self.law)
        return d


def _round_sig(mag: float, digits: int = 4) -> Fraction:
    e = math.floor(math.log10(mag)) - (digits - 1)
    m = round(mag / 10.0**e)
    return Fraction(m) * Fraction(10) ** e


def _sample_coeffs(sp: SignPattern, rng: np.random.Generator, L: float) -> list[Fraction]:
    u = rng.uniform(-L, L, size=len(sp.signs))
    return [s * _round_sig(10.0**ui) for s, ui in zip(sp.signs, u)]


def _structured_candidates(sp: SignPattern, L: int):
    """Deterministic products of (x -+ 10^j) and x^2 + b x + 10^k factors."""
    d = sp.degree
    exps = list(range(-L, L + 1, 2)) if L > 2 else list(range(-L, L + 1))
    quads = [RatPoly([Fraction(10) ** (2 * k), Fraction(b) * Fraction(10) ** k, 1]) for k in exps for b in (-1, 0, 1)]
    for pos, neg in sorted(admissible_pairs(sp)):
        nq = (d - pos - neg) // 2
        root_choices = itertools.combinations_with_replacement(exps, pos + neg)
        for js in root_choices:
            for split in itertools.combinations(range(pos + neg), pos):
                roots = [Fraction(10) ** js[i] * (1 if i in split else -1) for i in range(pos + neg)]
                base = RatPoly.from_roots(roots)
                for qs in itertools.combinations_with_replacement(quads, nq):
                    p = base
                    for q in qs:
                        p = p * q
                    yield p


def _numeric_signature(coeffs: np.ndarray) -> Optional[PairPN]:
    """Floating-point guess at the signature; ``None`` when unclear."""
    r = np.roots(coeffs[::-1])
    rel = np.abs(r.imag) / np.maximum(np.abs(r), 1e-300)
    if np.any((rel > 1e-10) & (rel < 1e-4)):
        return None
    real = r[rel <= 1e-10].real
    return PairPN(int(np.sum(real > 0)), int(np.sum(real < 0)))


def _matches(p: RatPoly, sp: SignPattern) -> bool:
    return len(p.coeffs) == len(sp.signs) and all((c > 0) == (s > 0) for c, s in zip(p.coeffs, sp.signs) if c != 0) \
        and all(c != 0 for c in p.coeffs)


def search_pattern(sp, targets, budget: int, seed: int, L: float = 6, sweep: bool = True,
                   block: int = 512, sweep_limit: int = 5000) -> dict:
    """Search for witnesses of several pairs of one pattern at once.

    Returns ``{pair: SearchResult}``.  Trial i draws its coefficients from
    ``trial_rng(seed, pattern_code, i)``, so any trial is reproducible alone.
    """
    sp = _as_pattern(sp)
    targets = {PairPN(*t) for t in targets}
    law = {"law": "sign * 10^u, u ~ U[-L, L], 4 significant digits", "L": L, "seed": seed, "budget": budget,
           "sweep": "(x -+ 10^j) and x^2 + b*10^k*x + 10^(2k) products" if sweep else "off"}
    found: dict = {}
    code = int("".join("1" if s > 0 else "0" for s in sp.signs), 2) + (1 << len(sp.signs))

    if sweep:
        for p in itertools.islice(_structured_candidates(sp, int(L)), sweep_limit):
            if not targets - set(found):
                break
            if not _matches(p, sp):
                continue
            sig = root_signature(p)
            if sig in targets and sig not in found:
                found[sig] = SearchResult(sp, sig, p, 0, law)

    trial = 0
    while trial < budget and targets - set(found):
        n = min(block, budget - trial)
        batch = [_sample_coeffs(sp, trial_rng(seed, code, trial + i), L) for i in range(n)]
        arr = np.array([[float(c) for c in cs] for cs in batch])
        for i, cs in enumerate(batch):
            guess = _numeric_signature(arr[i])
            if guess is not None and (guess not in targets or guess in found):
                continue
            p = RatPoly(cs)
            sig = root_signature(p)
            if sig in targets and sig not in found:
                found[sig] = SearchResult(sp, sig, p, trial + i + 1, law)
        trial += n
    return {t: found.get(t, SearchResult(sp, t, None, budget, law)) for t in targets}


def realize_search(sp, target, budget: int = 10**4, seed: int = 0, L: float = 6) -> SearchResult:
    """Certified witness with pattern ``sp`` and signature ``target``, or exhaustion."""
    sp = _as_pattern(sp)
    target = PairPN(*target)
    if target not in admissible_pairs(sp):
        raise NotAdmissible(f"{tuple(target)} is not admissible for {sp}")
    return search_pattern(sp, [target], budget, seed, L)[target]


def all_patterns(d: int):
    """Every pattern of degree d with a positive constant term."""
    for rest in itertools.product((1, -1), repeat=d):
        yield SignPattern((1,) + rest)


def survey_degree(d: int, budget: int = 10**4, seed: int = 0, L: float = 6) -> list[dict]:
    """Realizability table over orbit representatives of degree ``d``.

    Each row: ``{pattern, pair, status, trials, witness | exhaustion,
    conj11_candidate}``.  OPEN is a search status only.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    reps = sorted({orbit_representative(sp) for sp in all_patterns(d)}, key=str)
    rows = []
    for sp in reps:
        res = search_pattern(sp, admissible_pairs(sp), budget, seed, L)
        for pair in sorted(res):
            row = res[pair].to_json()
            row["conj11_candidate"] = row["status"] == "OPEN" and pair.pos > 0 and pair.neg > 0
            rows.append(row)
    return rows


def expand_survey(rows: list[dict]) -> list[dict]:
    """Spread representative rows over full orbits, re-certifying transformed witnesses."""
    out = {}
    for row in rows:
        sp = SignPattern.parse(row["pattern"])
        pair = PairPN(*row["pair"])
        for name, (f, swap) in _ACTIONS.items():
            q = f(sp)
            qp = pair.swapped() if swap else pair
            key = (str(q), tuple(qp))
            if key in out:
                continue
            new = {"pattern": str(q), "pair": list(qp), "status": row["status"], "trials": row["trials"],
                   "conj11_candidate": row["status"] == "OPEN" and qp.pos > 0 and qp.neg > 0}
            if row["status"] == "REALIZED":
                w = transform_poly(RatPoly(row["witness"]), name)
                if SignPattern.of(w) != q or root_signature(w) != qp:
                    raise PolyconjError(f"transformed witness failed certification for {key}")
                new["witness"] = w.to_list()
            out[key] = new
    return [out[k] for k in sorted(out)]


def conj11_findings(rows: list[dict], seed: int, budget: int) -> list[Finding]:
    return [
        Finding("descartes.conj11", {"pattern": r["pattern"], "pair": r["pair"], "budget": budget, "seed": seed},
                f"OPEN after {r['trials']} trials", VIOLATION_CANDIDATE, seed=seed,
                tolerances={"L": r.get("exhaustion", {}).get("L", 6)})
        for r in rows if r.get("conj11_candidate")
    ]


@register_replay("descartes.conj11")
def _replay_conj11(inp: dict, tol: dict) -> str:
    pair = PairPN(*inp["pair"])
    res = search_pattern(inp["pattern"], [pair], inp["budget"], inp["seed"], tol.get("L", 6))[pair]
    return f"OPEN after {res.trials} trials" if not res.realized else f"REALIZED by {res.witness}"


@register_replay("descartes.witness")
def _replay_witness(inp: dict, tol: dict) -> str:
    p = RatPoly(inp["poly"])
    return f"pattern={SignPattern.of(p)} signature={tuple(root_signature(p))}"
