import numpy as np
import pytest

from lcplab.errors import DimensionMismatch
from lcplab.intpoly import (
    IntPoly,
    companion,
    int_charpoly,
    int_det,
    int_poly_diagnostics,
    is_irreducible,
    is_squarefree,
    poly_gcd,
    smith_normal_form,
)


def test_intpoly_basics():
    p = IntPoly((0, 1, -3, 1))  # leading zero stripped
    assert p.coeffs == (1, -3, 1) and p.monic and p.degree == 2
    assert p(0) == 1 and p(3) == 1
    assert p.derivative().coeffs == (2, -3)
    assert str(IntPoly((1, -3, 1))) == "x^2 - 3x + 1"


def test_gcd_squarefree():
    p = IntPoly((1, -3, 1))
    assert poly_gcd(p, p.derivative()).degree == 0
    assert is_squarefree(p)
    sq = IntPoly((1, -6, 11, -6, 1))  # (x^2-3x+1)^2
    g = poly_gcd(sq, sq.derivative())
    assert g.coeffs == (1, -3, 1)
    assert not is_squarefree(sq)


def test_gcd_of_coprime():
    assert poly_gcd(IntPoly((1, 0, -2)), IntPoly((1, 0, -3))).degree == 0


def test_irreducibility():
    assert is_irreducible(IntPoly((1, -3, 1)))
    assert not is_irreducible(IntPoly((1, -2, 1)))  # (x-1)^2
    assert not is_irreducible(IntPoly((1, -6, 11, -6, 1)))
    # degree 4 irreducible: x^4 + x + 1 over Z
    assert is_irreducible(IntPoly((1, 0, 0, 1, 1)))


def test_diagnostics_double_root_dichotomy():
    d = int_poly_diagnostics(IntPoly((1, -6, 11, -6, 1)))
    assert not d.squarefree and d.at_least_two_double_roots
    roots = sorted(r.real for r in d.double_roots)
    assert np.isclose(roots[0] * roots[1], 1, atol=1e-9)
    # (x-1)^3: double root at +1, no dichotomy claim
    d3 = int_poly_diagnostics(IntPoly((1, -3, 3, -1)))
    assert not d3.squarefree and not d3.at_least_two_double_roots
    d1 = int_poly_diagnostics(IntPoly((1, -3, 1)))
    assert d1.squarefree and d1.irreducible


def test_companion():
    p = IntPoly((1, -3, 1))
    c = companion(p)
    assert [[int(x) for x in row] for row in c] == [[0, -1], [1, 3]]
    assert int_charpoly(c).coeffs == p.coeffs
    assert int_det(c) == 1
    with pytest.raises(DimensionMismatch):
        companion(IntPoly((2, 1)))


def test_smith_normal_form():
    for m in range(3, 11):
        em_minus_i = np.array([[-1, -1], [1, m - 1]])
        diag = smith_normal_form(em_minus_i)
        assert diag == [1, m - 2] or (m == 3 and diag == [1, 1])
    d = smith_normal_form(np.array([[2, 0], [0, 3]]))
    assert d == [1, 6]
    # divisibility chain
    d2 = smith_normal_form(np.array([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))
    for a, b in zip(d2, d2[1:]):
        assert b % a == 0
