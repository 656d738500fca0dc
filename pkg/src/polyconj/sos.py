"""Nonnegative sums of univariate squares with a full grid of isolated zeros.

``f(x_1, ..., x_l) = sum_j A_j(x_j)^2`` with each ``A_j`` of degree k and k
distinct real roots is a sum of squares of degree 2k vanishing exactly on
the k^l grid of root tuples.  Everything is coordinate-wise, so no
multivariate polynomial arithmetic is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DuplicateAxisRoots
from .polycore import RatPoly, real_zero_counts


@dataclass(frozen=True)
class GridSOS:
    k: int
    l: int
    axis_roots: tuple  # l tuples of k rationals

    @property
    def axis_polys(self) -> list[RatPoly]:
        return [RatPoly.from_roots(r) for r in self.axis_roots]

    @property
    def zeros(self) -> list[tuple]:
        return list(itertools.product(*self.axis_roots))

    @property
    def degree(self) -> int:
        return 2 * self.k

    def __call__(self, point: Sequence) -> Fraction:
        return sum((A(Fraction(v)) ** 2 for A, v in zip(self.axis_polys, point)), Fraction(0))

    def hessian_diag(self, point: Sequence) -> list[Fraction]:
        """Diagonal of the Hessian; off-diagonal entries vanish identically."""
        out = []
        for A, v in zip(self.axis_polys, point):
            v = Fraction(v)
            d1, d2 = A.derivative()(v), A.derivative(2)(v)
            out.append(2 * (d1 * d1 + A(v) * d2))
        return out

    def terms(self) -> list[str]:
        names = [f"x{j + 1}" for j in range(self.l)]
        return [f"({str(A).replace('x', n)})^2" for A, n in zip(self.axis_polys, names)]

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "degree": self.degree,
                "axis_roots": [[str(r) for r in rs] for rs in self.axis_roots],
                "axis_polys": [A.to_list() for A in self.axis_polys],
                "f": " + ".join(self.terms()), "zero_count": self.k ** self.l}


def grid_sos(k: int, l: int, roots: Optional[Sequence] = None) -> GridSOS:
    """``roots`` is one list used on every axis, or one list per axis;
    default ``0, 1, ..., k-1``."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be >= 1")
    if roots is None:
        roots = list(range(k))
    roots = list(roots)
    per_axis = roots if roots and isinstance(roots[0], (list, tuple)) else [roots] * l
    if len(per_axis) != l:
        raise ValueError(f"need roots for {l} axes")
    axes = []
    for rs in per_axis:
        rs = tuple(Fraction(r) for r in rs)
        if len(set(rs)) != len(rs):
            raise DuplicateAxisRoots(f"repeated root in {[str(r) for r in rs]}")
        if len(rs) != k:
            raise ValueError(f"each axis needs {k} roots")
        axes.append(tuple(sorted(rs)))
    return GridSOS(k, l, tuple(axes))


@dataclass
class IsolationReport:
    vanishes: bool
    hessian_positive: bool
    zero_set_exact: bool
    nonnegative: bool
    zero_count: int

    @property
    def ok(self) -> bool:
        return self.vanishes and self.hessian_positive and self.zero_set_exact and self.nonnegative


def verify_isolated(g: GridSOS) -> IsolationReport:
    """Exact checks: f = 0 on the grid, positive diagonal Hessian there, and
    each axis polynomial has exactly k real roots (so f has no other zeros).
    Nonnegativity holds by construction as a sum of squares."""
    vanish = all(g(z) == 0 for z in g.zeros)
    hess = all(all(h > 0 for h in g.hessian_diag(z)) for z in g.zeros)
    exact = all(real_zero_counts(A) == (g.k, g.k) for A in g.axis_polys)
    return IsolationReport(vanish, hess, exact, True, len(g.zeros))


@dataclass
class BoundsTable:
    k: int
    l: int
    lower: int            # grid construction
    sos_conjectured: int  # k^l
    sos_known: Optional[int]
    upper: int            # (2k-1)^l, sharpened for l = 2

    @property
    def trivial_upper(self) -> int:
        return (2 * self.k - 1) ** self.l

    @property
    def consistent(self) -> bool:
        return self.lower <= self.upper <= self.trivial_upper

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "lower": self.lower, "sos_conjectured": self.sos_conjectured,
                "sos_known": self.sos_known, "upper": self.upper, "trivial_upper": self.trivial_upper}


def bounds_table(k: int, l: int) -> BoundsTable:
    if k < 1 or l < 1:
        raise ValueError("k and l must be >= 1")
    lower = k ** l
    upper = (2 * k - 1) ** l
    known = None
    if l == 2:
        known = k * k
        upper = min(upper, 3 * k * (k - 1) // 2 + 1)
    elif l == 1:
        # a nonnegative univariate polynomial of degree 2k has at most k real zeros
        known = upper = k
    return BoundsTable(k, l, lower, lower, known, upper)
