"""Root configurations of a real-rooted polynomial and all its derivatives.

For a degree-n polynomial with simple real roots, the roots of
``p, p', ..., p^(n-1)`` form a triangular array ``x[i][l]`` (row i holds
the n-i roots of the i-th derivative).  Reading all of them left to right
and writing ``i`` for a root of the i-th derivative gives the symbolic
sequence of ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CoincidentCriticalRoots, NotRealRooted, TooLarge
from .ledger import INFO, Finding, register_replay, trial_rng
from .polycore import (
    RatInterval,
    RatPoly,
    count_roots,
    isolate_roots,
    order_roots,
    poly_gcd,
    refine,
    squarefree_part,
)

MAX_ENUM_N = 8


@dataclass(frozen=True)
class SymbolicSequence:
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(s) for s in self.word))

    @classmethod
    def parse(cls, text: str) -> "SymbolicSequence":
        return cls(tuple(int(ch) for ch in text.strip()))

    @property
    def n(self) -> int:
        # length is n(n+1)/2
        return (math.isqrt(8 * len(self.word) + 1) - 1) // 2

    def __str__(self) -> str:
        return "".join(str(s) for s in self.word)

    def is_valid(self) -> bool:
        n = self.n
        if n * (n + 1) // 2 != len(self.word):
            return False
        if any(self.word.count(i) != n - i for i in range(n)):
            return False
        for i in range(n - 1):
            pos = [k for k, s in enumerate(self.word) if s == i]
            for a, b in zip(pos, pos[1:]):
                if self.word[a + 1:b].count(i + 1) != 1:
                    return False
        return True


def _as_interval(v) -> RatInterval:
    if isinstance(v, RatInterval):
        return v
    if isinstance(v, (tuple, list)):
        return RatInterval(Fraction(v[0]), Fraction(v[1]))
    v = Fraction(v)
    return RatInterval(v, v)


@dataclass
class Configuration:
    """Triangular array; ``rows[i]`` holds the roots of the i-th derivative.

    Entries are :class:`RatInterval` (points for exact rationals), so order
    comparisons stay certified.  When built from a polynomial, ``polys``
    keeps the derivative chain so overlapping intervals can be refined.
    """

    rows: list = field(default_factory=list)
    polys: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.rows = [[_as_interval(v) for v in row] for row in self.rows]

    @property
    def n(self) -> int:
        return len(self.rows)

    def well_formed(self) -> bool:
        n = self.n
        return all(len(row) == n - i for i, row in enumerate(self.rows))

    def to_json(self) -> list:
        return [[iv.to_json() for iv in row] for row in self.rows]

    def approx(self, width=Fraction(1, 2**50)) -> list[list[float]]:
        if self.polys is not None:
            self.rows = [[refine(self.polys[i], iv, width) for iv in row] for i, row in enumerate(self.rows)]
        return [[float(iv) for iv in row] for row in self.rows]

    def less(self, i: int, l: int, j: int, m: int, max_rounds: int = 256) -> bool:
        """Certified ``x[i][l] < x[j][m]``; refines entries in place if needed."""
        a, b = self.rows[i][l], self.rows[j][m]
        for _ in range(max_rounds):
            if a.before(b):
                return True
            if b.before(a) or (a.is_point and b.is_point):
                return False
            if self.polys is None:
                return False
            if self._same_root(i, a, j, b):
                return False
            if not a.is_point:
                a = self.rows[i][l] = refine(self.polys[i], a, a.width / 2)
            if not b.is_point:
                b = self.rows[j][m] = refine(self.polys[j], b, b.width / 2)
        raise CoincidentCriticalRoots("could not separate two roots")

    def _same_root(self, i, a, j, b) -> bool:
        g = poly_gcd(self.polys[i], self.polys[j])
        if g.degree < 1:
            return False
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if lo > hi:
            return False
        if lo == hi:
            return g(lo) == 0
        # each interval isolates one root of its polynomial, so a common
        # root in the overlap means the two entries are equal
        return count_roots(g, (lo, hi)) + (g(lo) == 0) + (g(hi) == 0) > 0


def _derivative_chain(p: RatPoly) -> list[RatPoly]:
    return [p.derivative(i) for i in range(p.degree)]


def _require_real_simple(p: RatPoly) -> list[RatPoly]:
    if p.degree < 1:
        raise NotRealRooted("need degree >= 1")
    if not isolate_roots(p).all_real_simple:
        raise NotRealRooted(f"{p} is not real-rooted with simple roots")
    return [squarefree_part(q) for q in _derivative_chain(p)]


def _coincidence(chain) -> tuple | None:
    n = len(chain)
    for i in range(n):
        for j in range(i + 1, n):
            if poly_gcd(chain[i], chain[j]).degree > 0:
                return i, j
    return None


def config_of(p: RatPoly) -> Configuration:
    """Roots of p and all its derivatives as a certified triangular array.

    Generic inputs get globally disjoint intervals.  A root shared by two
    derivative levels is allowed here (each row is still simple by Rolle);
    comparisons in :func:`check_rolle` refine on demand.
    """
    chain = _require_real_simple(p)
    n = p.degree
    if _coincidence(chain) is None:
        rows: list[list[RatInterval]] = [[] for _ in range(n)]
        for k, iv in order_roots(chain):
            rows[k].append(iv)
    else:
        rows = [list(isolate_roots(q).isolating) for q in chain]
    return Configuration(rows, chain)


def symbolic_of(p: RatPoly) -> SymbolicSequence:
    """Word of the certified total order; undefined (error) under ties."""
    chain = _require_real_simple(p)
    bad = _coincidence(chain)
    if bad is not None:
        raise CoincidentCriticalRoots(f"derivatives {bad[0]} and {bad[1]} share a root")
    return SymbolicSequence(tuple(k for k, _ in order_roots(chain)))


def check_rolle(cfg: Configuration) -> bool:
    """``x[i][l] < x[j][l] < x[i][l+j-i]`` for all ``i < j <= n-l`` (1-based l)."""
    if not cfg.well_formed():
        raise ValueError("configuration is not triangular")
    n = cfg.n
    for i in range(n):
        if any(not cfg.less(i, l, i, l + 1) for l in range(n - i - 1)):
            return False
    for l in range(1, n + 1):
        for i in range(n):
            for j in range(i + 1, n - l + 1):
                if not (cfg.less(i, l - 1, j, l - 1) and cfg.less(j, l - 1, i, l + j - i - 1)):
                    return False
    return True


def enumerate_sequences(n: int) -> set[SymbolicSequence]:
    """All words with n-i copies of symbol i such that exactly one i+1
    sits between any two consecutive copies of i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_ENUM_N:
        raise TooLarge(f"n={n} exceeds {MAX_ENUM_N}")
    length = n * (n + 1) // 2
    left = [n - i for i in range(n)]
    # between[s]: copies of s+1 placed since the last s
    between = [0] * n
    started = [False] * n
    word: list[int] = []
    out: set[SymbolicSequence] = set()

    def can_place(s: int) -> bool:
        if left[s] == 0:
            return False
        if s > 0:
            # s must sit strictly between two copies of s-1, one per gap
            if not started[s - 1] or left[s - 1] == 0 or between[s - 1] != 0:
                return False
        if s < n - 1 and started[s] and between[s] != 1:
            return False
        return True

    def rec():
        if len(word) == length:
            out.add(SymbolicSequence(tuple(word)))
            return
        for s in range(n):
            if not can_place(s):
                continue
            saved = (between[s], between[s - 1] if s > 0 else None, started[s])
            left[s] -= 1
            started[s] = True
            between[s] = 0
            if s > 0:
                between[s - 1] += 1
            word.append(s)
            rec()
            word.pop()
            left[s] += 1
            between[s], started[s] = saved[0], saved[2]
            if s > 0:
                between[s - 1] = saved[1]

    rec()
    return out


def flat_count(n: int) -> int:
    """``C(n+1,2)! * prod_{j<n} j! / prod_{j<=n} (2j-1)!``, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = math.factorial(n * (n + 1) // 2)
    for j in range(1, n):
        num *= math.factorial(j)
    den = 1
    for j in range(1, n + 1):
        den *= math.factorial(2 * j - 1)
    q, r = divmod(num, den)
    assert r == 0, "flat count is not integral"
    return q


# ---- sampling -------------------------------------------------------------

GAP_LAWS = ("uniform", "exponential", "lognormal", "geometric")


def _sample_roots(rng, n: int, law: str) -> list[Fraction]:
    if law == "uniform":
        pts = sorted(rng.uniform(-1, 1, size=n))
        gaps = [pts[0]] + [b - a for a, b in zip(pts, pts[1:])]
    elif law == "exponential":
        gaps = [0.0] + list(rng.exponential(1.0, size=n - 1))
    elif law == "lognormal":
        gaps = [0.0] + list(rng.lognormal(0.0, 1.5, size=n - 1))
    elif law == "geometric":
        r = float(rng.uniform(0.05, 20))
        gaps = [0.0] + [r ** k * float(rng.uniform(0.5, 1.5)) for k in range(n - 1)]
    else:
        raise ValueError(f"unknown gap law {law!r}")
    roots, acc = [], Fraction(0)
    for g in gaps:
        step = Fraction(round(float(g) * 2**20), 2**20)
        if roots and step <= 0:
            step = Fraction(1, 2**20)
        acc += step
        roots.append(acc)
    return roots


@dataclass
class RealizationTable:
    n: int
    trials: int
    seed: int
    counts: dict
    witnesses: dict
    nongeneric: int = 0

    @property
    def unobserved(self) -> list[str]:
        return sorted(w for w, c in self.counts.items() if c == 0)

    def to_json(self) -> dict:
        return {"n": self.n, "trials": self.trials, "seed": self.seed,
                "counts": dict(sorted(self.counts.items())),
                "witnesses": {w: p.to_list() for w, p in sorted(self.witnesses.items())},
                "unobserved": self.unobserved, "nongeneric": self.nongeneric}


def realized_sequences(n: int, trials: int, seed: int, laws: Sequence[str] = GAP_LAWS) -> RealizationTable:
    """Tabulate symbolic sequences of random real-rooted degree-n polynomials."""
    if not 1 <= n <= 6:
        raise ValueError("realized_sequences supports 1 <= n <= 6")
    counts = {str(w): 0 for w in enumerate_sequences(n)}
    witnesses: dict[str, RatPoly] = {}
    nongeneric = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        law = laws[t % len(laws)]
        p = RatPoly.from_roots(_sample_roots(rng, n, law))
        try:
            w = str(symbolic_of(p))
        except CoincidentCriticalRoots:
            nongeneric += 1
            continue
        counts[w] += 1
        witnesses.setdefault(w, p)
    return RealizationTable(n, trials, seed, counts, witnesses, nongeneric)


def realization_findings(table: RealizationTable) -> list[Finding]:
    """One INFO finding per word never observed in the sample."""
    return [Finding("rolle.unobserved", {"n": table.n, "word": w, "trials": table.trials, "seed": table.seed},
                    f"word={w} count={table.counts[w]}", INFO,
                    seed=table.seed) for w in table.unobserved]


def _unobserved_obs(n, w, trials, seed) -> str:
    tab = realized_sequences(n, trials, seed)
    return f"word={w} count={tab.counts[w]}"


@register_replay("rolle.unobserved")
def _replay_unobserved(inp, tol):
    return _unobserved_obs(inp["n"], inp["word"], inp["trials"], inp["seed"])


def compare_with_list(n: int, printed: Sequence[str]) -> dict:
    """Set difference between the enumerated words and an external list."""
    true = {str(w) for w in enumerate_sequences(n)}
    given = list(printed)
    dup = sorted({w for w in given if given.count(w) > 1})
    return {"missing": sorted(true - set(given)), "extra": sorted(set(given) - true), "duplicates": dup}
