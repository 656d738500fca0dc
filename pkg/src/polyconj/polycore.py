"""Exact rational univariate polynomials with certified real-root counting.

Everything certified in polyconj sits on top of this module.  Polynomials
are dense tuples of :class:`fractions.Fraction` in ascending order.  The
expensive paths (gcds, Sturm chains, sign evaluation) run on primitive
integer coefficient lists, which keeps the bit sizes under control and
avoids the per-operation normalization cost of ``Fraction``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    NonConvergence,
    NotRealRooted,
    NotSimple,
    PolyconjError,
    ZeroPolynomial,
)

__all__ = [
    "RatPoly",
    "RatInterval",
    "RootReport",
    "NumericRoot",
    "SturmCount",
    "derivative",
    "squarefree_part",
    "squarefree_chain",
    "poly_gcd",
    "sturm_sequence",
    "sturm_count",
    "sturm_count_detail",
    "count_roots",
    "isolate_roots",
    "real_root_intervals",
    "refine",
    "order_roots",
    "mesh",
    "mesh_at_least",
    "interlace_check",
    "complex_roots_numeric",
    "aberth",
    "is_strictly_positive",
    "real_zero_counts",
]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class RatPoly:
    """Dense polynomial with exact rational coefficients, ascending order.

    ``RatPoly([2, -3, 1])`` is ``x^2 - 3x + 2``.  Instances are immutable
    and hashable; trailing zeros are trimmed so the zero polynomial is the
    empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    # construction helpers

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RatPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    @classmethod
    def parse(cls, text: str) -> "RatPoly":
        """Parse ``"1/2 - 3*x + x^2"`` style text (``**`` also accepted)."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict[int, Fraction] = {}
        for t in terms:
            sign = -1 if t[0] == "-" else 1
            body = t[1:]
            m = re.fullmatch(r"(?:([0-9./]+)\*?)?(x)(?:\^([0-9]+))?|([0-9./]+)", body)
            if m is None:
                raise ValueError(f"cannot parse term {t!r}")
            if m.group(4) is not None:
                deg, c = 0, Fraction(m.group(4))
            else:
                c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
                deg = int(m.group(3)) if m.group(3) else 1
            out[deg] = out.get(deg, Fraction(0)) + sign * c
        n = max(out) + 1
        return cls([out.get(i, 0) for i in range(n)])

    @classmethod
    def from_list(cls, items: Sequence) -> "RatPoly":
        return cls(items)

    # basic properties

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self) -> str:
        return f"RatPoly({self.to_list()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic

    @staticmethod
    def _coerce(other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        return RatPoly([other])

    def __add__(self, other) -> "RatPoly":
        o = self._coerce(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return RatPoly([(a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RatPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            c = _frac(other)
            return RatPoly([c * a for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power")
        out = RatPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "RatPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.lc
        q = [Fraction(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            c = r[-1] / lb
            k = len(r) - 1 - db
            q[k] = c
            for i, bi in enumerate(other.coeffs):
                r[i + k] -= c * bi
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def __truediv__(self, c) -> "RatPoly":
        c = _frac(c)
        return RatPoly([a / c for a in self.coeffs])

    def __call__(self, x):
        """Horner evaluation; exact for rationals, numeric for float/complex."""
        if isinstance(x, (int, Fraction)):
            v = Fraction(0)
        elif isinstance(x, RatPoly):
            v = RatPoly()
        else:
            v = 0.0
            coeffs = [float(c) for c in self.coeffs]
            for c in reversed(coeffs):
                v = v * x + c
            return v
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def derivative(self, order: int = 1) -> "RatPoly":
        return derivative(self, order)

    def shift(self, c) -> "RatPoly":
        """Return ``p(x + c)`` exactly (Taylor shift)."""
        c = _frac(c)
        a = list(self.coeffs)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return RatPoly(a)

    def reflect(self) -> "RatPoly":
        """``p(-x)``."""
        return RatPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def reverse(self) -> "RatPoly":
        """``x^deg p(1/x)``."""
        return RatPoly(reversed(self.coeffs))

    def monic(self) -> "RatPoly":
        return self / self.lc

    def scale_arg(self, c) -> "RatPoly":
        """``p(c*x)``."""
        c = _frac(c)
        return RatPoly([a * c**i for i, a in enumerate(self.coeffs)])

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficients, a positive multiple of ``self``."""
        return _primitive_from_fracs(self.coeffs)

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=dtype)


# ---------------------------------------------------------------------------
# integer polynomial kernel (ascending lists of python ints)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return a
    if g == 0:
        return a
    return [c // g for c in a]


def _primitive_from_fracs(cs: Sequence[Fraction]) -> list[int]:
    if not cs:
        return []
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _primitive([int(c * den) for c in cs])


def _int_deriv(a: list[int]) -> list[int]:
    return [i * a[i] for i in range(1, len(a))]


def _neg_rem(a: list[int], b: list[int]) -> list[int]:
    """Primitive positive multiple of ``-rem(a, b)``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    flips = 0
    while r and len(r) - 1 >= db:
        c = r[-1]
        k = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bi in enumerate(b):
            r[i + k] -= c * bi
        r.pop()
        _trim(r)
        flips += 1
        r = _primitive(r)
    # each step multiplied by lb; undo its sign, then negate
    if lb > 0 or flips % 2 == 0:
        return [-x for x in r]
    return r


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _neg_rem(a, b)
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    q, r = divmod(RatPoly(a), RatPoly(b))
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return _primitive_from_fracs(q.coeffs)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_at(c: list[int], x: Fraction) -> int:
    """Exact sign of the integer polynomial ``c`` at the rational ``x``."""
    if not c:
        return 0
    a, b = x.numerator, x.denominator
    v = c[-1]
    if b == 1:
        for ci in reversed(c[:-1]):
            v = v * a + ci
        return _sign(v)
    bp = 1
    for ci in reversed(c[:-1]):
        bp *= b
        v = v * a + ci * bp
    return _sign(v)


def _sign_at_inf(c: list[int], positive: bool) -> int:
    s = _sign(c[-1])
    if not positive and (len(c) - 1) % 2 == 1:
        s = -s
    return s


def _sturm_int(c: list[int]) -> list[list[int]]:
    seq = [c]
    d = _primitive(_int_deriv(c))
    while d:
        seq.append(d)
        d = _neg_rem(seq[-2], seq[-1])
    return seq


def _variations(signs) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq, x: Optional[Fraction], positive: bool = True) -> int:
    if x is None:
        return _variations(_sign_at_inf(c, positive) for c in seq)
    return _variations(_sign_at(c, x) for c in seq)


def _int_squarefree(c: list[int]) -> list[int]:
    g = _int_gcd(c, _int_deriv(c))
    if len(g) <= 1:
        return _primitive(list(c))
    return _int_divexact(c, g)


def _cauchy_bound_pow2(c: list[int]) -> Fraction:
    lc = abs(c[-1])
    m = max(Fraction(abs(ci), lc) for ci in c[:-1]) if len(c) > 1 else Fraction(0)
    bound = 1 + m
    k = max(0, math.ceil(math.log2(float(bound)) + 1e-9))
    B = Fraction(2) ** k
    while B <= bound:
        B *= 2
    return B


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class RatInterval:
    """Closed rational interval; ``lo == hi`` marks an exactly known root.

    Isolating intervals produced by :func:`isolate_roots` with ``lo < hi``
    contain their root in the open interior, and neither endpoint is a root.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)

    def to_json(self) -> list[str]:
        return [str(self.lo), str(self.hi)]

    def before(self, other: "RatInterval") -> bool:
        """Certified ``root(self) < root(other)`` for isolating intervals."""
        if self.hi < other.lo:
            return True
        return self.hi == other.lo and not (self.is_point and other.is_point)


class SturmCount(NamedTuple):
    interior: int
    endpoint_roots: tuple


@dataclass(frozen=True)
class RootReport:
    degree: int
    distinct_real: int
    with_multiplicity: int
    isolating: tuple
    squarefree: bool

    @property
    def all_real_simple(self) -> bool:
        return self.squarefree and self.with_multiplicity == self.degree

    @property
    def nonreal(self) -> int:
        """Non-real zeros counted with multiplicity."""
        return self.degree - self.with_multiplicity


@dataclass(frozen=True)
class NumericRoot:
    value: complex
    residual: float
    backward_error: float
    radius: float

    @property
    def surely_nonreal(self) -> bool:
        return abs(self.value.imag) > self.radius


# ---------------------------------------------------------------------------
# operations


def derivative(p: RatPoly, order: int = 1) -> RatPoly:
    if order < 0:
        raise ValueError("order must be non-negative")
    cs = list(p.coeffs)
    for _ in range(order):
        cs = [i * cs[i] for i in range(1, len(cs))]
    return RatPoly(cs)


def _require_nonzero(p: RatPoly):
    if p.is_zero():
        raise ZeroPolynomial("operation undefined for the zero polynomial")


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd (zero if both are zero)."""
    if p.is_zero() and q.is_zero():
        return RatPoly()
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    return RatPoly(_int_gcd(p.integer_coeffs(), q.integer_coeffs())).monic()


def squarefree_part(p: RatPoly) -> RatPoly:
    """``p / gcd(p, p')``, monic."""
    _require_nonzero(p)
    return RatPoly(_int_squarefree(p.integer_coeffs())).monic()


def squarefree_chain(p: RatPoly) -> list[RatPoly]:
    """``[p, gcd(p,p'), gcd(g,g'), ...]`` down to a constant (excluded).

    The number of distinct real roots of the k-th entry is the number of
    real roots of ``p`` with multiplicity greater than k.
    """
    _require_nonzero(p)
    out = []
    c = p.integer_coeffs()
    while len(c) > 1:
        out.append(RatPoly(c))
        c = _int_gcd(c, _int_deriv(c))
    return out


def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    _require_nonzero(p)
    return [RatPoly(c) for c in _sturm_int(p.integer_coeffs())]


def _bounds(iv):
    if iv is None:
        return None, None
    if isinstance(iv, RatInterval):
        return iv.lo, iv.hi
    lo, hi = iv
    return (None if lo is None else _frac(lo)), (None if hi is None else _frac(hi))


def _count_open(seq, lo, hi) -> int:
    c = seq[0]
    if len(c) == 1:
        return 0
    n = _var_at(seq, lo, positive=False) - _var_at(seq, hi, positive=True)
    if hi is not None and _sign_at(c, hi) == 0:
        n -= 1
    return n


def sturm_count_detail(p: RatPoly, iv=None) -> SturmCount:
    """Distinct real roots of ``p`` strictly inside ``iv`` (``None`` = R).

    ``iv`` is a :class:`RatInterval` or a ``(lo, hi)`` pair where either
    end may be ``None`` for infinity.  Roots sitting exactly on a finite
    endpoint are never counted in ``interior``; they are listed in
    ``endpoint_roots`` instead.
    """
    _require_nonzero(p)
    lo, hi = _bounds(iv)
    if lo is not None and hi is not None and lo > hi:
        raise ValueError("empty interval")
    sq = _int_squarefree(p.integer_coeffs())
    seq = _sturm_int(sq)
    if lo is not None and hi is not None and lo == hi:
        return SturmCount(0, (lo,) if _sign_at(sq, lo) == 0 else ())
    ends = tuple(e for e in (lo, hi) if e is not None and _sign_at(sq, e) == 0)
    return SturmCount(_count_open(seq, lo, hi), ends)


def sturm_count(p: RatPoly, iv=None) -> int:
    return sturm_count_detail(p, iv).interior


def count_roots(p: RatPoly, iv=None, multiplicity: bool = False) -> int:
    """Real roots in the open interval, distinct or with multiplicity."""
    _require_nonzero(p)
    lo, hi = _bounds(iv)
    if not multiplicity:
        return sturm_count(p, (lo, hi))
    total = 0
    c = p.integer_coeffs()
    while len(c) > 1:
        total += _count_open(_sturm_int(_int_squarefree(c)), lo, hi)
        c = _int_gcd(c, _int_deriv(c))
    return total


def real_zero_counts(p: RatPoly) -> tuple[int, int]:
    """``(distinct real zeros, real zeros with multiplicity)`` over R."""
    _require_nonzero(p)
    c = p.integer_coeffs()
    distinct = None
    total = 0
    while len(c) > 1:
        k = _count_open(_sturm_int(_int_squarefree(c)), None, None)
        if distinct is None:
            distinct = k
        total += k
        c = _int_gcd(c, _int_deriv(c))
    return (distinct or 0), total


def _isolate_int(sq: list[int], seq=None) -> list[RatInterval]:
    if len(sq) <= 1:
        return []
    if seq is None:
        seq = _sturm_int(sq)
    B = _cauchy_bound_pow2(sq)
    var_cache: dict = {}

    def V(x):
        if x not in var_cache:
            var_cache[x] = _var_at(seq, x)
        return var_cache[x]

    out: list[RatInterval] = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = V(lo) - V(hi)  # neither endpoint is a root here
        if n == 0:
            continue
        if n == 1:
            out.append(_snap(sq, RatInterval(lo, hi)))
            continue
        mid = (lo + hi) / 2
        if _sign_at(sq, mid) == 0:
            out.append(RatInterval(mid, mid))
            # (left, right) must hold no root besides mid
            e = (hi - lo) / 4
            while True:
                left, right = mid - e, mid + e
                if _sign_at(sq, left) and _sign_at(sq, right) and V(left) - V(right) == 1:
                    break
                e /= 2
            stack.append((lo, left))
            stack.append((right, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort(key=lambda iv: iv.lo)
    return out


def real_root_intervals(p: RatPoly) -> list[RatInterval]:
    """Sorted isolating intervals for the distinct real roots of ``p``."""
    _require_nonzero(p)
    return _isolate_int(_int_squarefree(p.integer_coeffs()))


def isolate_roots(p: RatPoly) -> RootReport:
    _require_nonzero(p)
    c = p.integer_coeffs()
    sq = _int_squarefree(c)
    ivs = _isolate_int(sq)
    _, mult = real_zero_counts(p)
    return RootReport(
        degree=p.degree,
        distinct_real=len(ivs),
        with_multiplicity=mult,
        isolating=tuple(ivs),
        squarefree=len(sq) == len(c),
    )


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator (then magnitude) in (lo, hi)."""
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_between(-hi, -lo)
    n = math.floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    if lo == n:
        return n + Fraction(1, math.floor(1 / (hi - n)) + 1)
    return n + 1 / _simplest_between(1 / (hi - n), 1 / (lo - n))


def _snap(sq: list[int], iv: RatInterval) -> RatInterval:
    """Collapse an isolating interval onto its root when that root is the simplest rational inside."""
    if iv.is_point:
        return iv
    r = _simplest_between(iv.lo, iv.hi)
    if _sign_at(sq, r) == 0:
        return RatInterval(r, r)
    return iv


def _refine_int(sq: list[int], iv: RatInterval, width) -> RatInterval:
    """Bisect an isolating interval of the squarefree ``sq`` below ``width``."""
    iv = _snap(sq, iv)
    if iv.is_point:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = _sign_at(sq, lo)
    width = _frac(width)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = _sign_at(sq, mid)
        if s == 0:
            return RatInterval(mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
        snapped = _snap(sq, RatInterval(lo, hi))
        if snapped.is_point:
            return snapped
    return RatInterval(lo, hi)


def refine(p: RatPoly, iv: RatInterval, width) -> RatInterval:
    """Shrink an isolating interval of ``p`` to width below ``width``."""
    return _refine_int(_int_squarefree(p.integer_coeffs()), iv, width)


def order_roots(polys: Sequence[RatPoly], max_rounds: int = 256):
    """Certified total order of the real roots of several polynomials.

    Each polynomial is replaced by its squarefree part; the polynomials
    must share no real root.  Returns a sorted list of ``(index, interval)``
    with pairwise disjoint intervals.  Raises ``PolyconjError`` if two
    intervals cannot be separated within ``max_rounds`` bisections.
    """
    sqs = [_int_squarefree(p.integer_coeffs()) for p in polys]
    items = []
    for k, sq in enumerate(sqs):
        for iv in _isolate_int(sq):
            items.append([k, iv])
    for _ in range(max_rounds):
        items.sort(key=lambda t: (t[1].lo, t[1].hi))
        bad = set()
        for a in range(len(items) - 1):
            if not items[a][1].before(items[a + 1][1]):
                bad.add(a)
                bad.add(a + 1)
        # non-adjacent overlaps are caught once adjacent ones are resolved
        if not bad:
            for a in range(len(items) - 1):
                for b in range(a + 2, len(items)):
                    if items[b][1].lo > items[a][1].hi:
                        break
                    if not items[a][1].before(items[b][1]):
                        bad.add(a)
                        bad.add(b)
        if not bad:
            return [(k, iv) for k, iv in items]
        for a in bad:
            k, iv = items[a]
            if iv.is_point:
                continue
            items[a][1] = _refine_int(sqs[k], iv, iv.width / 2)
    raise PolyconjError("could not separate root intervals; roots probably coincide")


def _require_real_simple(p: RatPoly) -> list[int]:
    _require_nonzero(p)
    c = p.integer_coeffs()
    sq = _int_squarefree(c)
    if len(sq) != len(c):
        raise NotSimple(f"{p} has a repeated root")
    if _count_open(_sturm_int(sq), None, None) != p.degree:
        raise NotRealRooted(f"{p} is not real-rooted")
    return sq


def mesh(p: RatPoly, width=Fraction(1, 10**12)) -> tuple:
    """Enclosure ``(lo, hi)`` of the minimal gap between consecutive roots.

    Polynomials with fewer than two roots have mesh ``+inf`` by convention
    (returned as ``(math.inf, math.inf)``).  The enclosure is refined until
    ``hi - lo < width`` or the gap is known exactly.
    """
    sq = _require_real_simple(p)
    ivs = _isolate_int(sq)
    if len(ivs) < 2:
        return math.inf, math.inf
    width = _frac(width)
    while True:
        gaps_lo = [ivs[i + 1].lo - ivs[i].hi for i in range(len(ivs) - 1)]
        gaps_hi = [ivs[i + 1].hi - ivs[i].lo for i in range(len(ivs) - 1)]
        lo, hi = min(gaps_lo), min(gaps_hi)
        if hi - lo < width:
            return lo, hi
        ivs = [iv if iv.is_point else _refine_int(sq, iv, iv.width / 2) for iv in ivs]


def mesh_at_least(p: RatPoly, threshold=1, max_rounds: int = 400) -> bool:
    """Exact decision of ``mesh(p) >= threshold``.

    Gaps equal to the threshold are recognized exactly through
    ``gcd(p(x), p(x + threshold))``; every other gap is separated from the
    threshold by interval refinement.
    """
    sq = _require_real_simple(p)
    t = _frac(threshold)
    ivs = _isolate_int(sq)
    if len(ivs) < 2:
        return True
    g = _int_gcd(sq, RatPoly(sq).shift(t).integer_coeffs())
    exact_pairs = set()
    if len(g) > 1:
        gseq = _sturm_int(_int_squarefree(g))
        for i, iv in enumerate(ivs):
            if iv.is_point:
                if _sign_at(g, iv.lo) == 0:
                    exact_pairs.add(i)
            elif _count_open(gseq, iv.lo, iv.hi) > 0:
                exact_pairs.add(i)
    pending = list(range(len(ivs) - 1))
    for _ in range(max_rounds):
        still = []
        for i in pending:
            a, b = ivs[i], ivs[i + 1]
            if b.lo - a.hi > t:
                continue
            if b.hi - a.lo < t:
                return False
            if i in exact_pairs:
                # the root r_i + t is a root of p; is it r_{i+1}?
                lo_t, hi_t = a.lo + t, a.hi + t
                hits = [j for j, iv in enumerate(ivs) if not (iv.hi < lo_t or iv.lo > hi_t)]
                if hits == [i + 1]:
                    continue
            still.append(i)
        if not still:
            return True
        for i in still:
            for j in (i, i + 1):
                if not ivs[j].is_point:
                    ivs[j] = _refine_int(sq, ivs[j], ivs[j].width / 2)
        pending = still
    raise PolyconjError("mesh decision did not terminate")


def interlace_check(p: RatPoly, q: RatPoly) -> bool:
    """Strict interlacing: exactly one root of ``q`` between consecutive roots of ``p``."""
    if p.degree != q.degree + 1:
        raise DegreeMismatch(f"deg p = {p.degree}, deg q = {q.degree}")
    _require_real_simple(p)
    if q.degree >= 1:
        _require_real_simple(q)
    else:
        return p.degree == 1
    if len(_int_gcd(p.integer_coeffs(), q.integer_coeffs())) > 1:
        return False
    order = [k for k, _ in order_roots([p, q])]
    return order == [0, 1] * q.degree + [0]


# ---------------------------------------------------------------------------
# numerics


def aberth(coeffs, tol: float = 1e-12, maxiter: int = 1000) -> np.ndarray:
    """Aberth-Ehrlich simultaneous iteration on complex ascending coefficients.

    Initial points lie on the circle of radius ``1 + max|a_i / a_n|`` at
    fixed angles, so the result is a deterministic function of the input.
    """
    a = np.asarray(coeffs, dtype=complex)
    a = np.trim_zeros(a, "b")
    n = len(a) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    a = a / a[-1]
    desc = a[::-1]
    ddesc = np.polyder(desc)
    radius = 1.0 + np.max(np.abs(a[:-1]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    absa = np.abs(desc)
    eps = np.finfo(float).eps
    for _ in range(maxiter):
        pz = np.polyval(desc, z)
        dz = np.polyval(ddesc, z)
        scale = np.polyval(absa, np.abs(z))
        done = np.abs(pz) <= 8 * n * eps * scale
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dz != 0, pz / dz, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w) & ~done, w, 0)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            return z
    raise NonConvergence(f"Aberth iteration did not converge in {maxiter} steps")


def _inclusion(a: np.ndarray, z: np.ndarray):
    n = len(a) - 1
    desc = a[::-1]
    eps = np.finfo(float).eps
    pz = np.polyval(desc, z)
    scale = np.polyval(np.abs(desc), np.abs(z))
    err = 4 * n * eps * scale
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    prod = np.abs(a[-1]) * np.prod(np.abs(diff), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        radius = n * (np.abs(pz) + err) / prod
        back = np.abs(pz) / scale
    return np.abs(pz), np.where(np.isfinite(back), back, 0.0), radius


def complex_roots_numeric(p, tol: float = 1e-12, maxiter: int = 1000) -> list[NumericRoot]:
    """All complex roots of ``p`` with residuals and inclusion radii.

    ``p`` may be a :class:`RatPoly` or an ascending sequence of (possibly
    complex) coefficients.  ``radius`` is the Weierstrass inclusion radius
    ``n |W_i|``; a union of m such disks disjoint from the rest holds
    exactly m roots.  For real input, roots whose disk meets the real axis
    are snapped to it and the remaining roots are paired with conjugates.
    ``tol`` is the relative step size at which iteration stops.
    """
    if isinstance(p, RatPoly):
        _require_nonzero(p)
        a = np.array([float(c) for c in p.coeffs], dtype=complex)
        real_input = True
    else:
        a = np.trim_zeros(np.asarray(p, dtype=complex), "b")
        if len(a) == 0:
            raise ZeroPolynomial("zero polynomial")
        real_input = bool(np.all(a.imag == 0))
    z = aberth(a, tol=tol, maxiter=maxiter)
    if len(z) == 0:
        return []
    _, _, radius = _inclusion(a, z)
    if real_input:
        z = z.copy()
        near = np.abs(z.imag) <= radius
        z[near] = z[near].real
        upper = [i for i in range(len(z)) if not near[i] and z[i].imag > 0]
        lower = [i for i in range(len(z)) if not near[i] and z[i].imag < 0]
        if len(upper) == len(lower):
            free = set(lower)
            for i in sorted(upper, key=lambda i: (z[i].real, z[i].imag)):
                j = min(free, key=lambda j: abs(z[j] - np.conj(z[i])))
                free.discard(j)
                m = 0.5 * (z[i] + np.conj(z[j]))
                z[i], z[j] = m, np.conj(m)
    res, back, radius = _inclusion(a, z)
    out = [NumericRoot(complex(z[i]), float(res[i]), float(back[i]), float(radius[i])) for i in range(len(z))]
    out.sort(key=lambda r: (r.value.real, r.value.imag))
    return out


def is_strictly_positive(p: RatPoly) -> bool:
    """``p(x) > 0`` for every real x (exact)."""
    _require_nonzero(p)
    if p.degree == 0:
        return p.coeffs[0] > 0
    if sturm_count(p) != 0:
        return False
    return p(Fraction(0)) > 0
