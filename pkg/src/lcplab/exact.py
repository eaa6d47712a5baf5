"""Exact linear algebra over the rationals.

Matrices and vectors are numpy arrays with ``dtype=object`` holding
:class:`fractions.Fraction` entries.  Dimensions stay small (n <= 16
throughout the package), so dense fraction arithmetic is exact and fast
enough; nothing in this module ever touches floating point.

Conventions: vectors are 1-d arrays, matrices 2-d; a subspace is
represented by a matrix whose *columns* form a basis.  ``np.dot`` works
on object arrays and is used for all products.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def rvec(data) -> np.ndarray:
    v = np.empty(len(data), dtype=object)
    for i, x in enumerate(data):
        v[i] = rat(x)
    return v


def rmat(rows) -> np.ndarray:
    rows = list(rows)
    m = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != m.shape[1]:
            raise DimensionMismatch("ragged matrix")
        for j, x in enumerate(row):
            m[i, j] = rat(x)
    return m


def rzeros(shape) -> np.ndarray:
    m = np.empty(shape, dtype=object)
    m[...] = ZERO
    return m


def reye(n: int) -> np.ndarray:
    m = rzeros((n, n))
    for i in range(n):
        m[i, i] = ONE
    return m


def is_zero(a) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def to_float(a) -> np.ndarray:
    return np.asarray(a, dtype=object).astype(np.float64)


def from_int_matrix(a) -> np.ndarray:
    return rmat([[int(x) for x in row] for row in a])


def rref(m: np.ndarray):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = m.copy()
    rows, cols = r.shape
    pivots = []
    pr = 0
    for pc in range(cols):
        pivot = None
        for i in range(pr, rows):
            if r[i, pc] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != pr:
            r[[pivot, pr]] = r[[pr, pivot]]
        r[pr] = r[pr] / r[pr, pc]
        for i in range(rows):
            if i != pr and r[i, pc] != 0:
                r[i] = r[i] - r[i, pc] * r[pr]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> np.ndarray:
    """Basis (columns) of the right kernel, canonical given the RREF."""
    rows, cols = m.shape
    if rows == 0:
        return reye(cols)
    r, pivots = rref(m)
    free = [j for j in range(cols) if j not in pivots]
    basis = rzeros((cols, len(free)))
    for k, j in enumerate(free):
        basis[j, k] = ONE
        for i, pc in enumerate(pivots):
            basis[pc, k] = -r[i, j]
    return basis


def left_nullspace(m: np.ndarray) -> np.ndarray:
    """Matrix Q (rows) with Q m = 0 and rank(Q) = rows - rank(m)."""
    return nullspace(m.T).T


def solve(a: np.ndarray, b: np.ndarray):
    """Solve a x = b exactly; returns None when inconsistent.

    ``b`` may be a vector or a matrix of stacked right-hand sides; for an
    underdetermined consistent system the free variables are set to 0.
    """
    vec = b.ndim == 1
    rhs = b.reshape(-1, 1) if vec else b
    if a.shape[0] != rhs.shape[0]:
        raise DimensionMismatch("solve: shape mismatch")
    aug = np.concatenate([a, rhs], axis=1)
    r, pivots = rref(aug)
    ncols = a.shape[1]
    if any(p >= ncols for p in pivots):
        return None
    x = rzeros((ncols, rhs.shape[1]))
    for i, pc in enumerate(pivots):
        x[pc, :] = r[i, ncols:]
    return x[:, 0] if vec else x


def inv(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionMismatch("inv: not square")
    aug = np.concatenate([a, reye(n)], axis=1)
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return r[:, n:]


def det(a: np.ndarray) -> Fraction:
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionMismatch("det: not square")
    m = a.copy()
    d = ONE
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i, c] != 0:
                pivot = i
                break
        if pivot is None:
            return ZERO
        if pivot != c:
            m[[pivot, c]] = m[[c, pivot]]
            d = -d
        d *= m[c, c]
        m[c] = m[c] / m[c, c]
        for i in range(c + 1, n):
            if m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[c]
    return d


def column_space(m: np.ndarray) -> np.ndarray:
    """Canonical basis of the column span: reduced column echelon form."""
    r, pivots = rref(m.T)
    return r[: len(pivots)].T


def in_span(basis: np.ndarray, v: np.ndarray) -> bool:
    """Is v in the column span of basis?"""
    if basis.shape[1] == 0:
        return is_zero(v)
    return solve(basis, v) is not None


def span_contains(basis: np.ndarray, other: np.ndarray) -> bool:
    """Are all columns of ``other`` inside the column span of ``basis``?"""
    return all(in_span(basis, other[:, j]) for j in range(other.shape[1]))


def intersect_columns(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Canonical basis of the intersection of two column spans."""
    if a.shape[1] == 0 or b.shape[1] == 0:
        return rzeros((a.shape[0], 0))
    stacked = np.concatenate([a, -b], axis=1)
    ker = nullspace(stacked)
    if ker.shape[1] == 0:
        return rzeros((a.shape[0], 0))
    return column_space(a.dot(ker[: a.shape[1], :]))


def is_symmetric(g: np.ndarray) -> bool:
    n = g.shape[0]
    return g.shape[1] == n and all(
        g[i, j] == g[j, i] for i in range(n) for j in range(i + 1, n)
    )


def is_pos_def(g: np.ndarray) -> bool:
    """Sylvester criterion: all leading principal minors positive."""
    n = g.shape[0]
    return all(det(g[: k + 1, : k + 1]) > 0 for k in range(n))


def charpoly(a: np.ndarray) -> list:
    """Exact characteristic polynomial det(xI - a), coefficients
    [1, c1, ..., cn] by descending degree (Faddeev-LeVerrier)."""
    n = a.shape[0]
    coeffs = [ONE]
    m = a.copy()
    for k in range(1, n + 1):
        c = -sum(m[i, i] for i in range(n)) / k
        coeffs.append(c)
        if k < n:
            for i in range(n):
                m[i, i] = m[i, i] + c
            m = a.dot(m)
    return coeffs


def rational_roots(coeffs) -> list:
    """Rational roots (with multiplicity) of a polynomial given by
    descending-degree Fraction coefficients."""
    coeffs = [rat(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // np.gcd(den, c.denominator)
    ic = [int(c * den) for c in coeffs]
    roots = []
    # factor out roots at zero
    while ic[-1] == 0 and len(ic) > 1:
        roots.append(ZERO)
        ic = ic[:-1]
    if len(ic) <= 1:
        return roots

    def divisors(v):
        v = abs(v)
        out = []
        d = 1
        while d * d <= v:
            if v % d == 0:
                out.append(d)
                out.append(v // d)
            d += 1
        return sorted(set(out))

    def synth_div(poly, r):
        # poly descending ints/Fractions; returns (quotient, remainder)
        out = [rat(poly[0])]
        for c in poly[1:]:
            out.append(rat(c) + out[-1] * r)
        return out[:-1], out[-1]

    candidates = sorted(
        {
            Fraction(s * p, q)
            for p in divisors(ic[-1])
            for q in divisors(ic[0])
            for s in (1, -1)
        }
    )
    poly = [rat(c) for c in ic]
    for r in candidates:
        while len(poly) > 1:
            quo, rem = synth_div(poly, r)
            if rem != 0:
                break
            roots.append(r)
            poly = quo
    return sorted(roots)
