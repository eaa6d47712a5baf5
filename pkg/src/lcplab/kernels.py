"""Float kernels for the lattice scan: matrix exponential, characteristic
polynomial coefficients, and the integer-defect scan over a t-grid.

These are the only hot numeric loops in the package (the scan evaluates
expm + charpoly at ~20000 grid points); everything else is exact
rational arithmetic where JIT compilation does not apply.  The kernels
are compiled with numba when available; set ``LCPLAB_DISABLE_NUMBA=1``
to force the pure-numpy fallback (used by the benchmark for comparison,
and as a safety hatch).  Both paths run the same source.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("LCPLAB_DISABLE_NUMBA", "").strip() not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover
        HAS_NUMBA = False
else:
    HAS_NUMBA = False

if not HAS_NUMBA:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def expm(a):
    """Scaling-and-squaring matrix exponential with a Taylor core.

    The argument is scaled until its 1-norm is below 1/4, the series is
    summed to machine precision, and the result squared back; accurate to
    ~1e-13 relative on the supported envelope (n <= 16, norm <= ~60)."""
    n = a.shape[0]
    nrm = 0.0
    for j in range(n):
        s = 0.0
        for i in range(n):
            s += abs(a[i, j])
        if s > nrm:
            nrm = s
    sq = 0
    while nrm > 0.25:
        nrm *= 0.5
        sq += 1
    b = a / (2.0 ** sq)
    e = np.eye(n) + b
    term = b.copy()
    for k in range(2, 40):
        term = term @ b / k
        e = e + term
        t = 0.0
        for i in range(n):
            for j in range(n):
                t += abs(term[i, j])
        if t < 1e-18:
            break
    for _ in range(sq):
        e = e @ e
    return e


@njit(cache=True)
def charpoly_coeffs(m):
    """Coefficients [1, c1, ..., cn] of det(xI - m) by descending degree,
    built from the (complex) eigenvalues so repeated squaring noise does
    not compound; the matrix is real so the result is real."""
    n = m.shape[0]
    ev = np.linalg.eigvals(m.astype(np.complex128))
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = 1.0
    for k in range(n):
        lam = ev[k]
        for i in range(k + 1, 0, -1):
            c[i] = c[i] - lam * c[i - 1]
    return c.real


@njit(cache=True)
def integer_defect(coeffs):
    """Max distance of the non-leading coefficients from integers."""
    d = 0.0
    for i in range(1, coeffs.shape[0]):
        r = abs(coeffs[i] - np.rint(coeffs[i]))
        if r > d:
            d = r
    return d


@njit(cache=True)
def scan_defects(c, ts):
    """defect(t) = integer distance of charpoly(exp(t C)) over the grid."""
    out = np.empty(ts.shape[0])
    for i in range(ts.shape[0]):
        out[i] = integer_defect(charpoly_coeffs(expm(ts[i] * c)))
    return out
