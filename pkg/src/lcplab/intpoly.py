"""Integer polynomials, their squarefree/irreducibility diagnostics, and
Smith normal form for abelianisation reports.

Polynomials are stored by descending-degree integer coefficients.  The
gcd with the derivative is computed by a primitive polynomial remainder
sequence over Z[X]; irreducibility uses the rational-root test for
degree <= 3 and exact factorisation (sympy) for degrees 4..8.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as int_gcd
from typing import Optional

import numpy as np

from . import exact as ex
from .errors import DimensionMismatch


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial; coeffs by descending degree, no leading zeros."""

    coeffs: tuple
    monic: bool = False

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[0] == 0:
            c = c[1:]
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "monic", c[0] == 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        n = self.degree
        if n == 0:
            return IntPoly((0,))
        return IntPoly(tuple(c * (n - i) for i, c in enumerate(self.coeffs[:-1])))

    def constant_term(self) -> int:
        return self.coeffs[-1]

    def roots(self) -> np.ndarray:
        return np.roots(np.array(self.coeffs, dtype=float))

    def __str__(self):
        terms = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = n - i
            if p == 0:
                terms.append(f"{c:+d}")
            else:
                xs = "x" if p == 1 else f"x^{p}"
                if c == 1:
                    terms.append(f"+{xs}")
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c:+d}{xs}")
        s = " ".join(terms) if terms else "0"
        return s.lstrip("+").replace("+", "+ ").replace("-", "- ").strip()


def _content(c) -> int:
    g = 0
    for x in c:
        g = int_gcd(g, abs(int(x)))
    return g or 1


def _primitive(c):
    g = _content(c)
    c = [int(x) // g for x in c]
    if c[0] < 0:
        c = [-x for x in c]
    return c


def _pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient lists (descending):
    repeatedly a <- lb*a - la*x^shift*b until deg(a) < deg(b)."""
    a = list(a)
    db, lb = len(b) - 1, b[0]
    while len(a) - 1 >= db and any(a):
        la = a[0]
        a = [lb * x for x in a]
        for i in range(len(b)):
            a[i] -= la * b[i]
        a = a[1:] if len(a) > 1 else [0]
        while len(a) > 1 and a[0] == 0:
            a = a[1:]
    return a


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd in Z[X] via a primitive remainder sequence."""
    a = _primitive(list(p.coeffs))
    b = _primitive(list(q.coeffs))
    if len(a) < len(b):
        a, b = b, a
    while any(b) and len(b) > 1:
        r = _pseudo_rem(a, b)
        if not any(r):
            a, b = b, [0]
            break
        a, b = b, _primitive(r)
    if any(b) and len(b) == 1:
        return IntPoly((1,))
    return IntPoly(tuple(a))


def is_squarefree(p: IntPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def is_irreducible(p: IntPoly) -> Optional[bool]:
    """Exact over Z[X] for degree <= 8; None beyond that."""
    d = p.degree
    if d == 0:
        return False
    if _content(p.coeffs) != 1:
        return False
    if d == 1:
        return True
    if ex.rational_roots([ex.rat(c) for c in p.coeffs]):
        return False
    if d <= 3:
        return True
    if d <= 8:
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(p.coeffs), x)
        _, factors = poly.factor_list()
        return len(factors) == 1 and factors[0][1] == 1
    return None


@dataclass(frozen=True)
class PolyDiagnostics:
    squarefree: bool
    irreducible: Optional[bool]
    gcd_with_derivative: IntPoly
    double_roots: tuple
    at_least_two_double_roots: bool

    def as_dict(self):
        return {
            "squarefree": self.squarefree,
            "irreducible": self.irreducible,
            "gcd_with_derivative": list(self.gcd_with_derivative.coeffs),
            "double_roots": [complex(r) for r in self.double_roots],
            "at_least_two_double_roots": self.at_least_two_double_roots,
        }


def int_poly_diagnostics(p: IntPoly, tol: float = 1e-8) -> PolyDiagnostics:
    """Squarefree/irreducibility report, plus the multiple-root dichotomy:
    a monic integer polynomial with |P(0)| = 1 and a double root other
    than +-1 necessarily has at least two double roots (its minimal
    polynomial divides twice)."""
    g = poly_gcd(p, p.derivative())
    squarefree = g.degree == 0
    irr = is_irreducible(p)
    # irreducible integer polynomials have simple roots; the two
    # independent computations must agree
    assert not irr or squarefree
    double_roots = tuple(g.roots()) if g.degree > 0 else ()
    two_doubles = False
    if (
        p.monic
        and abs(p.constant_term()) == 1
        and any(min(abs(r - 1), abs(r + 1)) > tol for r in double_roots)
    ):
        two_doubles = True
    return PolyDiagnostics(squarefree, irr, g, double_roots, two_doubles)


def companion(p: IntPoly) -> np.ndarray:
    """Integer companion matrix: ones on the subdiagonal, last column
    -(a_{d-1}, ..., a_0) reversed so that charpoly(companion(p)) = p."""
    if not p.monic:
        raise DimensionMismatch("companion matrix needs a monic polynomial")
    d = p.degree
    m = np.zeros((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            m[i, j] = 0
    for i in range(1, d):
        m[i, i - 1] = 1
    for i in range(d):
        m[i, d - 1] = -p.coeffs[d - i]
    return m


def int_det(a: np.ndarray) -> int:
    return int(ex.det(ex.from_int_matrix(a)))


def int_charpoly(a: np.ndarray) -> IntPoly:
    return IntPoly(tuple(int(c) for c in ex.charpoly(ex.from_int_matrix(a))))


def smith_normal_form(a: np.ndarray) -> list:
    """Diagonal of the Smith normal form of an integer matrix, with each
    entry dividing the next; transforms are not tracked."""
    m = [[int(x) for x in row] for row in np.asarray(a)]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    top = 0
    while top < min(rows, cols):
        # find the smallest nonzero entry in the remaining block
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for i in range(rows):
            m[i][top], m[i][pj] = m[i][pj], m[i][top]
        dirty = False
        for i in range(top + 1, rows):
            qv = m[i][top] // m[top][top]
            if qv:
                for j in range(top, cols):
                    m[i][j] -= qv * m[top][j]
            if m[i][top] != 0:
                dirty = True
        for j in range(top + 1, cols):
            qv = m[top][j] // m[top][top]
            if qv:
                for i in range(top, rows):
                    m[i][j] -= qv * m[i][top]
            if m[top][j] != 0:
                dirty = True
        if dirty:
            continue
        # enforce divisibility into the rest of the block
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % m[top][top] != 0:
                    for jj in range(top, cols):
                        m[top][jj] += m[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        diag.append(abs(m[top][top]))
        top += 1
    return diag
