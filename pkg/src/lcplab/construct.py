"""Constructors that produce verified LCP structures.

The central recipe: from a non-unimodular metric Lie algebra (h, h_g)
with trace form H and an orthogonal representation beta of h vanishing
on h', the semidirect product g = h |x_alpha R^q with

    alpha(x) = -(1/q) H(x) Id + beta(x)

is unimodular and carries the LCP structure (g, h_g + <.,.>, theta, R^q)
with theta = -(1/q) H extended by zero.  Every constructor verifies its
output exactly before returning it.

Amalgamated products keep the distinguished transversal vector
unnormalised so that all data stays rational; norms enter only as
squared quantities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import exact as ex
from .algebra import (
    LieAlgebra,
    Metric,
    OneForm,
    Subspace,
    is_unimodular,
    trace_form,
)
from .detect import LCPStructure
from .errors import (
    B2Zero,
    DimensionMismatch,
    LcpError,
    NonCommutingPair,
    NotAdapted,
    NotPositiveDefinite,
    NotSkew,
    RepNotSkew,
    RepNotVanishingOnDerived,
    TraceZero,
    UnimodularInput,
    ZeroLeeForm,
)


def _as_rmat(a) -> np.ndarray:
    if isinstance(a, np.ndarray) and a.dtype == object:
        return a
    return ex.rmat(np.atleast_2d(a).tolist())


def _is_skew(m: np.ndarray, gram: Optional[np.ndarray] = None) -> bool:
    if gram is None:
        return ex.is_zero(m + m.T)
    gm = gram.dot(m)
    return ex.is_zero(gm + gm.T)


@dataclass(frozen=True)
class OrthoRep:
    """Linear map h -> so(q) given by its images on the h basis.

    Invariants (all checked by :meth:`validate`): every image is
    skew-symmetric for the chosen Gram matrix on R^q (identity by
    default), the map vanishes on h', and the images pairwise commute,
    which together make it a Lie algebra representation.
    """

    dim_target: int
    images: tuple

    @classmethod
    def from_matrices(cls, q: int, mats) -> "OrthoRep":
        return cls(q, tuple(_as_rmat(m) for m in mats))

    @classmethod
    def zero(cls, q: int, h_dim: int) -> "OrthoRep":
        return cls(q, tuple(ex.rzeros((q, q)) for _ in range(h_dim)))

    def of(self, x: np.ndarray) -> np.ndarray:
        m = ex.rzeros((self.dim_target, self.dim_target))
        for i, xi in enumerate(np.asarray(x, dtype=object)):
            if xi != 0:
                m = m + xi * self.images[i]
        return m

    def validate(self, h: LieAlgebra, gram: Optional[np.ndarray] = None):
        if len(self.images) != h.dim:
            raise DimensionMismatch("one image per h basis vector required")
        for m in self.images:
            if m.shape != (self.dim_target, self.dim_target):
                raise DimensionMismatch("image has wrong shape")
            if not _is_skew(m, gram):
                raise RepNotSkew("images must be skew-symmetric")
        der = h.derived_algebra
        for j in range(der.shape[1]):
            if not ex.is_zero(self.of(der[:, j])):
                raise RepNotVanishingOnDerived("beta must vanish on h'")
        for i in range(len(self.images)):
            for j in range(i + 1, len(self.images)):
                a, b = self.images[i], self.images[j]
                if not ex.is_zero(a.dot(b) - b.dot(a)):
                    raise NonCommutingPair("images must pairwise commute")


def _verified(L, G, theta, flat) -> LCPStructure:
    s = LCPStructure(L, G, theta, flat)
    rep = s.verify()
    if not rep.passed:
        raise LcpError(f"constructed structure failed verification: {rep}")
    return s


def semidirect_lcp(h: LieAlgebra, h_metric: Metric, beta: OrthoRep) -> LCPStructure:
    """g = h |x_alpha R^q with the standard metric on R^q; the flat space
    is R^q and theta = -(1/q) H^h extended by zero."""
    H = trace_form(h)
    if H.is_zero():
        raise UnimodularInput("h must be non-unimodular")
    beta.validate(h)
    m, q = h.dim, beta.dim_target
    n = m + q
    c = ex.rzeros((n, n, n))
    c[:m, :m, :m] = h.c
    for i in range(m):
        alpha_i = -(H.coeffs[i] / q) * ex.reye(q) + beta.images[i]
        for j in range(q):
            c[i, m + j, m:] = alpha_i[:, j]
            c[m + j, i, m:] = -alpha_i[:, j]
    L = LieAlgebra(c)
    gram = ex.rzeros((n, n))
    gram[:m, :m] = h_metric.gram
    gram[m:, m:] = ex.reye(q)
    theta = OneForm(np.concatenate([-H.coeffs / q, ex.rzeros(q)]))
    flat = Subspace(np.concatenate([ex.rzeros((m, q)), ex.reye(q)], axis=0))
    return _verified(L, Metric(gram), theta, flat)


def almab_lcp(A, B, h_metric: Optional[Metric] = None) -> LCPStructure:
    """Almost abelian structure: R b |x (R^p + R^q) with ad_b acting as
    blockdiag(A, B - tr(A)/q Id) and theta = -(1/q) tr(A) b*."""
    A = _as_rmat(A)
    B = _as_rmat(B)
    p, q = A.shape[0], B.shape[0]
    if A.shape != (p, p) or B.shape != (q, q):
        raise DimensionMismatch("A and B must be square")
    tr_a = sum(A[i, i] for i in range(p))
    if tr_a == 0:
        raise TraceZero("tr(A) must be nonzero")
    if not _is_skew(B):
        raise NotSkew("B must be skew-symmetric")
    h = LieAlgebra.from_brackets(
        1 + p,
        {(0, 1 + j): np.concatenate([ex.rzeros(1), A[:, j]]) for j in range(p)},
    )
    hm = h_metric if h_metric is not None else Metric.identity(1 + p)
    beta_mats = [B] + [ex.rzeros((q, q))] * p
    return semidirect_lcp(h, hm, OrthoRep.from_matrices(q, beta_mats))


def flag_lcp(A, B1, B2, v) -> LCPStructure:
    """Non-almost-abelian structure on R b |x (R y + R^p) |x R^q with
    [b, y] = v, ad_b = blockdiag(A, B1 - tr(A)/q Id), ad_y|R^q = B2."""
    A = _as_rmat(A)
    B1 = _as_rmat(B1)
    B2 = _as_rmat(B2)
    v = ex.rvec(v) if not isinstance(v, np.ndarray) else v
    p, q = A.shape[0], B1.shape[0]
    if B2.shape != (q, q):
        raise DimensionMismatch("B1 and B2 must have the same size")
    if v.shape[0] != p:
        raise DimensionMismatch("v must lie in R^p")
    tr_a = sum(A[i, i] for i in range(p))
    if tr_a == 0:
        raise TraceZero("tr(A) must be nonzero")
    if not (_is_skew(B1) and _is_skew(B2)):
        raise NotSkew("B1, B2 must be skew-symmetric")
    if ex.is_zero(B2):
        raise B2Zero("B2 must be nonzero")
    if not ex.is_zero(B1.dot(B2) - B2.dot(B1)):
        raise NonCommutingPair("[B1, B2] must vanish")
    # h basis: b, y, x_1..x_p
    brackets = {(0, 1): np.concatenate([ex.rzeros(2), v])}
    for j in range(p):
        brackets[(0, 2 + j)] = np.concatenate([ex.rzeros(2), A[:, j]])
    h = LieAlgebra.from_brackets(2 + p, brackets)
    beta_mats = [B1, B2] + [ex.rzeros((q, q))] * p
    return semidirect_lcp(h, Metric.identity(2 + p), OrthoRep.from_matrices(q, beta_mats))


def direct_product(S: LCPStructure, k: LieAlgebra, k_metric: Metric) -> LCPStructure:
    """Product with an arbitrary metric algebra; theta extends by zero and
    the flat space is unchanged.  Requires S adapted."""
    if not S.is_adapted():
        raise NotAdapted("direct products require an adapted structure")
    if k.dim == 0:
        return S
    n = S.algebra.dim
    L = S.algebra.direct_sum(k)
    gram = ex.rzeros((L.dim, L.dim))
    gram[:n, :n] = S.metric.gram
    gram[n:, n:] = k_metric.gram
    theta = OneForm(np.concatenate([S.theta.coeffs, ex.rzeros(k.dim)]))
    flat = Subspace(
        np.concatenate([S.flat.basis, ex.rzeros((k.dim, S.flat.dim))], axis=0)
    )
    return _verified(L, Metric(gram), theta, flat)


def amalgamated_product(S1: LCPStructure, S2: LCPStructure) -> LCPStructure:
    """ker(theta1 - theta2) inside g1 + g2, with the restricted metric,
    theta = theta1 restricted, and flat space u1 + u2.

    The chosen basis is [v, ker theta1, ker theta2] where the transversal
    v = |theta2|^2 theta1^sharp + |theta1|^2 theta2^sharp is a rational
    representative of the distinguished direction, kept unnormalised.
    """
    for s in (S1, S2):
        if s.theta.is_zero():
            raise ZeroLeeForm("both factors need a nonzero Lee form")
        if not s.is_adapted():
            raise NotAdapted("amalgamated products require adapted factors")
    n1, n2 = S1.algebra.dim, S2.algebra.dim
    L12 = S1.algebra.direct_sum(S2.algebra)
    gram12 = ex.rzeros((n1 + n2, n1 + n2))
    gram12[:n1, :n1] = S1.metric.gram
    gram12[n1:, n1:] = S2.metric.gram
    t1s = S1.metric.sharp(S1.theta)
    t2s = S2.metric.sharp(S2.theta)
    n1sq = S1.theta(t1s)
    n2sq = S2.theta(t2s)
    v = np.concatenate([n2sq * t1s, n1sq * t2s])
    k1 = ex.nullspace(S1.theta.coeffs.reshape(1, -1))
    k2 = ex.nullspace(S2.theta.coeffs.reshape(1, -1))
    basis = np.concatenate(
        [
            v.reshape(-1, 1),
            np.concatenate([k1, ex.rzeros((n2, k1.shape[1]))], axis=0),
            np.concatenate([ex.rzeros((n1, k2.shape[1])), k2], axis=0),
        ],
        axis=1,
    )
    m = basis.shape[1]
    c = ex.rzeros((m, m, m))
    for a in range(m):
        ad_a = L12.ad(basis[:, a])
        for b in range(a + 1, m):
            w = ad_a.dot(basis[:, b])
            coords = ex.solve(basis, w)
            if coords is None:
                raise LcpError("kernel is not a subalgebra")  # cannot happen
            c[a, b, :] = coords
            c[b, a, :] = -coords
    L = LieAlgebra(c)
    gram = basis.T.dot(gram12).dot(basis)
    theta12 = np.concatenate([S1.theta.coeffs, ex.rzeros(n2)])
    theta = OneForm(ex.rvec([theta12.dot(basis[:, a]) for a in range(m)]))
    u12 = np.concatenate(
        [
            np.concatenate([S1.flat.basis, ex.rzeros((n2, S1.flat.dim))], axis=0),
            np.concatenate([ex.rzeros((n1, S2.flat.dim)), S2.flat.basis], axis=0),
        ],
        axis=1,
    )
    flat_coords = ex.solve(basis, u12)
    if flat_coords is None:
        raise LcpError("flat space does not lie in the kernel")  # cannot happen
    return _verified(L, Metric(gram), theta, Subspace(flat_coords))


def metric_modification(S: LCPStructure, lam) -> LCPStructure:
    """Replace g by g + lam theta (x) theta; valid while positive definite
    and for adapted structures."""
    lam = ex.rat(lam)
    if not S.is_adapted():
        raise NotAdapted("metric modification requires an adapted structure")
    if lam == 0:
        return S
    t = S.theta.coeffs
    gram = S.metric.gram + lam * np.outer(t, t)
    if not ex.is_pos_def(gram):
        raise NotPositiveDefinite("1 + lam |theta|^2 must stay positive")
    return _verified(S.algebra, Metric(gram), S.theta, S.flat)


@dataclass(frozen=True)
class Decomposition:
    """The (h, h_metric, beta) data recovered from a verified structure:
    h = u-perp with the restricted metric and beta(x) = ad_x|_u -
    theta(x) Id, expressed on the canonical bases."""

    h: LieAlgebra
    h_metric: Metric
    beta: OrthoRep
    h_basis: np.ndarray
    u_basis: np.ndarray
    u_gram: np.ndarray


def decompose(S: LCPStructure) -> Decomposition:
    """Reverse of the semidirect construction, using h = u-perp."""
    if S.flat.dim == 0:
        raise LcpError("cannot decompose a degenerate structure")
    L, G, theta, U = S.algebra, S.metric, S.theta, S.flat
    perp = U.orthogonal_complement(G)
    hb, ub = perp.basis, U.basis
    h = L.restrict(hb)
    h_metric = G.restrict(hb)
    u_gram = ub.T.dot(G.gram).dot(ub)
    q = U.dim
    images = []
    for a in range(perp.dim):
        x = hb[:, a]
        ad_u = ex.solve(ub, L.ad(x).dot(ub))
        if ad_u is None:
            raise LcpError("flat space is not ad-invariant")
        images.append(ad_u - theta(x) * ex.reye(q))
    beta = OrthoRep(q, tuple(images))
    beta.validate(h, gram=u_gram)
    return Decomposition(h, h_metric, beta, hb, ub, u_gram)
