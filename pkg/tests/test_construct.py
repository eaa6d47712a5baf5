from fractions import Fraction as F

import numpy as np
import pytest

from lcplab import exact as ex
from lcplab.algebra import (
    LieAlgebra,
    Metric,
    OneForm,
    Subspace,
    almost_abelian_presentation,
    audit_algebra,
    is_unimodular,
    trace_form,
)
from lcplab.construct import (
    OrthoRep,
    almab_lcp,
    amalgamated_product,
    decompose,
    direct_product,
    flag_lcp,
    metric_modification,
    semidirect_lcp,
)
from lcplab.detect import classify, structural_audit
from lcplab.errors import (
    B2Zero,
    NonCommutingPair,
    NotAdapted,
    NotPositiveDefinite,
    NotSkew,
    RepNotSkew,
    RepNotVanishingOnDerived,
    TraceZero,
    UnimodularInput,
)
from lcplab.lowdim import check_isomorphism_witness, table_algebra
from lcplab.randgen import random_skew, rng


def h_line(lam=1):
    return LieAlgebra.from_brackets(2, {(0, 1): [0, lam]})


def e11_structure():
    return semidirect_lcp(h_line(), Metric.identity(2), OrthoRep.zero(1, 2))


def test_semidirect_gives_e11():
    s = e11_structure()
    assert s.algebra.dim == 3
    assert s.theta.coeffs[0] == -1
    assert s.flat == Subspace.spanned_by([[0, 0, 1]])
    assert is_unimodular(s.algebra)
    assert audit_algebra(s.algebra).solvable
    # matches the catalog row on the nose
    assert check_isomorphism_witness(s.algebra, table_algebra("e(1,1)"), ex.reye(3))


def test_semidirect_rejects_unimodular():
    with pytest.raises(UnimodularInput):
        semidirect_lcp(LieAlgebra.abelian(2), Metric.identity(2), OrthoRep.zero(1, 2))


def test_semidirect_rr30_bracket():
    # h = rr_{3,0}: [x1,x2]=x2 on dim 3; adds [x1,u] = -u
    h = LieAlgebra.from_brackets(3, {(0, 1): [0, 1, 0]})
    s = semidirect_lcp(h, Metric.identity(3), OrthoRep.zero(1, 3))
    assert np.array_equal(s.algebra.c[0, 3, :], ex.rvec([0, 0, 0, -1]))


def test_orthorep_validation():
    h = h_line()
    with pytest.raises(RepNotSkew):
        OrthoRep.from_matrices(2, [ex.rmat([[1, 0], [0, 1]]), ex.rzeros((2, 2))]).validate(h)
    # nonzero on h' = span(x2)
    with pytest.raises(RepNotVanishingOnDerived):
        OrthoRep.from_matrices(
            2, [ex.rzeros((2, 2)), ex.rmat([[0, -1], [1, 0]])]
        ).validate(h)
    h2 = LieAlgebra.abelian(2)
    a = ex.rmat([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    b = ex.rmat([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    with pytest.raises(NonCommutingPair):
        OrthoRep.from_matrices(3, [a, b]).validate(h2)


def test_almab_examples():
    s = almab_lcp([[1]], [[0, -1], [1, 0]])
    assert s.algebra.dim == 4 and s.flat.dim == 2
    # ad_b on the flat factor is B - (tr A / q) Id
    block = ex.solve(s.flat.basis, s.algebra.ad_basis[0].dot(s.flat.basis))
    assert np.array_equal(block, ex.rmat([[F(-1, 2), -1], [1, F(-1, 2)]]))
    assert s.theta.coeffs[0] == F(-1, 2)
    s2 = almab_lcp([[1]], ex.rzeros((3, 3)))
    assert s2.algebra.dim == 5 and s2.flat.dim == 3
    with pytest.raises(TraceZero):
        almab_lcp([[0]], [[0]])
    with pytest.raises(NotSkew):
        almab_lcp([[1]], [[1]])


def test_almab_matches_g46_family():
    # A = [-2], q = 2, B = [[0,1],[-1,0]] lands on the catalog row at p = 1
    s = almab_lcp([[-2]], [[0, 1], [-1, 0]])
    L2 = table_algebra("g_{4.6}^{-2p,p}", {"p": 1})
    assert check_isomorphism_witness(s.algebra, L2, ex.reye(4))
    # A = [1], q = 2, B = J reaches the same family at p = 1/2 through the
    # sign flip b -> -e1
    s2 = almab_lcp([[1]], [[0, -1], [1, 0]])
    L3 = table_algebra("g_{4.6}^{-2p,p}", {"p": F(1, 2)})
    p = ex.rzeros((4, 4))
    p[0, 0] = -1
    p[1, 1] = p[2, 2] = p[3, 3] = 1
    assert check_isomorphism_witness(s2.algebra, L3, p)


def test_almab_q3_matches_g57_equal_params():
    # A = [1], q = 3, B = 0: isomorphic to the dim-5 row with p = q = r = 1/3
    s = almab_lcp([[1]], ex.rzeros((3, 3)))
    target = table_algebra(
        "g_{5.7}^{p,q,r}", {"p": F(1, 3), "q": F(1, 3), "r": F(1, 3)}
    )
    # constructed basis (b, x, u1, u2, u3) -> (-e5, e4, e1, e2, e3)
    p = ex.rzeros((5, 5))
    p[4, 0] = -1
    p[3, 1] = 1
    p[0, 2] = 1
    p[1, 3] = 1
    p[2, 4] = 1
    assert check_isomorphism_witness(s.algebra, target, p)


def test_flag_example():
    s = flag_lcp([[2]], ex.rzeros((2, 2)), [[0, -1], [1, 0]], [0])
    assert s.algebra.dim == 5 and s.flat.dim == 2
    assert almost_abelian_presentation(s.algebra, s.metric) is None
    assert audit_algebra(s.algebra).unimodular
    rep = structural_audit(s)
    assert rep.passed and rep.codim3_normal_form
    with pytest.raises(B2Zero):
        flag_lcp([[2]], ex.rzeros((2, 2)), ex.rzeros((2, 2)), [0])
    nc1 = ex.rmat([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    nc2 = ex.rmat([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    with pytest.raises(NonCommutingPair):
        flag_lcp([[2]], nc1, nc2, [0])


def test_flag_matches_g535():
    s = flag_lcp([[2]], ex.rzeros((2, 2)), [[0, -1], [1, 0]], [0])
    # constructed basis (b, y, x, u1, u2) -> (−e5, e1, e4, e2, e3)
    p = ex.rzeros((5, 5))
    p[4, 0] = -1  # b -> -e5
    p[0, 1] = 1   # y -> e1
    p[3, 2] = 1   # x -> e4
    p[1, 3] = 1   # u1 -> e2
    p[2, 4] = 1   # u2 -> e3
    assert check_isomorphism_witness(s.algebra, table_algebra("g_{5.35}^{-2,0}"), p)


def test_direct_product():
    s = e11_structure()
    d = direct_product(s, LieAlgebra.abelian(1), Metric.identity(1))
    assert d.algebra.dim == 4 and d.flat.dim == 1
    assert classify(d.algebra, d.metric, d.theta).flat_dim == 1
    k_metric = Metric(ex.rmat([[2, 1], [1, 3]]))
    d2 = direct_product(s, LieAlgebra.abelian(2), k_metric)
    assert d2.algebra.dim == 5 and d2.verify().passed
    # a zero-dimensional factor is the identity
    assert direct_product(s, LieAlgebra.abelian(0), Metric.identity(0)) is s


def test_amalgam_block_structure():
    s = e11_structure()
    a = amalgamated_product(s, s)
    assert a.algebra.dim == 5 and a.flat.dim == 2
    pres = almost_abelian_presentation(a.algebra, a.metric)
    assert pres is not None
    assert pres.b_norm_sq == 2 and not pres.unit
    # ad_b on the ideal is blockdiag(C1, C2) with the factors' matrices
    c1 = ex.rmat([[-1, 0], [0, 1]])
    expected = ex.rzeros((4, 4))
    expected[:2, :2] = c1
    expected[2:, 2:] = c1
    assert np.array_equal(pres.matrix, expected)
    assert audit_algebra(a.algebra).unimodular
    assert audit_algebra(a.algebra).solvable


def test_amalgam_dimension_law():
    s = e11_structure()
    s2 = almab_lcp([[1]], [[0, -1], [1, 0]])
    a = amalgamated_product(s, s2)
    assert a.algebra.dim == s.algebra.dim + s2.algebra.dim - 1
    assert a.flat.dim == s.flat.dim + s2.flat.dim
    assert a.verify().passed


def test_amalgam_with_degenerate_factor_is_direct_product():
    # a degenerate adapted factor R b + R^2 amalgamates to the direct
    # product with R^2, up to the theta (x) theta metric correction
    s = e11_structure()
    plane = LieAlgebra.abelian(3)
    deg = type(s)(plane, Metric.identity(3), OneForm.dual(3, 0), Subspace.zero(3))
    a = amalgamated_product(s, deg)
    assert a.algebra.dim == 5 and a.flat.dim == 1
    d = direct_product(s, LieAlgebra.abelian(2), Metric.identity(2))
    assert a.verify().passed and d.verify().passed
    # the identification x -> x + theta1(x) b is an isomorphism but not an
    # isometry (metrics differ by theta (x) theta); compare the algebras
    # through invariants and both classifications
    assert classify(a.algebra, a.metric, a.theta).flat_dim == 1
    assert classify(d.algebra, d.metric, d.theta).flat_dim == 1
    from lcplab.lowdim import fingerprint

    assert fingerprint(a.algebra) == fingerprint(d.algebra)


def test_amalgam_rejects_nonadapted():
    L = LieAlgebra.abelian(3)
    th = OneForm.dual(3, 0)
    s = type(e11_structure())(L, Metric.identity(3), th, Subspace.spanned_by([[1, 0, 0]]))
    with pytest.raises(NotAdapted):
        amalgamated_product(s, s)


def test_metric_modification():
    s = e11_structure()
    assert metric_modification(s, 0) is s
    s2 = metric_modification(s, 1)
    assert s2.verify().passed and s2.flat == s.flat
    with pytest.raises(NotPositiveDefinite):
        metric_modification(s, -1)


def test_decompose_roundtrip_exact():
    r = rng(43)
    for _ in range(6):
        lam = F(r.randint(1, 3), r.randint(1, 2))
        h = LieAlgebra.from_brackets(
            3, {(0, 1): [0, lam, 0], (0, 2): [0, 0, 1]}
        )
        q = r.choice([1, 2, 3])
        if q == 1:
            beta = OrthoRep.zero(1, 3)
        else:
            skew = random_skew(r, q)
            beta = OrthoRep.from_matrices(
                q, [skew, ex.rzeros((q, q)), ex.rzeros((q, q))]
            )
        s = semidirect_lcp(h, Metric.identity(3), beta)
        dec = decompose(s)
        # h comes back on the nose (u-perp is the original h block)
        assert dec.h == h
        assert dec.h_metric == Metric.identity(3)
        for got, want in zip(dec.beta.images, beta.images):
            assert np.array_equal(got, want)


def test_semidirect_unimodular_trace():
    s = almab_lcp([[1, 1], [0, 2]], [[0, -2], [2, 0]])
    H = trace_form(s.algebra)
    assert H.is_zero()


def test_rebuild_from_decomposition_any_metric():
    # the recovered (h, beta) assemble back into a verified structure for
    # every scalar product on h, not just the original one
    s = almab_lcp([[1]], [[0, -1], [1, 0]])
    dec = decompose(s)
    r = rng(61)
    for _ in range(5):
        a = ex.rzeros((2, 2))
        for i in range(2):
            for j in range(2):
                a[i, j] = F(r.randint(-1, 1), r.randint(1, 2))
        new_metric = Metric(a.T.dot(a) + ex.reye(2))
        rebuilt = semidirect_lcp(dec.h, new_metric, dec.beta)
        assert rebuilt.verify().passed
        assert is_unimodular(rebuilt.algebra)
