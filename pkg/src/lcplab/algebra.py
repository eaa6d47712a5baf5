"""Metric Lie algebras over the rationals and their algebraic predicates.

A Lie algebra is stored through its structure constants ``c[i,j,k]`` on a
fixed basis, with ``[e_i, e_j] = sum_k c[i,j,k] e_k``.  Antisymmetry and
the Jacobi identity are verified exactly at construction (this can be
switched off to audit broken input).  Metrics are exact positive-definite
Gram matrices, 1-forms are coefficient rows in the dual basis, and
subspaces are canonicalised by reduced column echelon form so that equal
spans compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from . import exact as ex
from .errors import (
    DimensionMismatch,
    InvalidStructure,
    NotPositiveDefinite,
    NotSymmetric,
)


class LieAlgebra:
    """Exact Lie algebra on a fixed basis.

    ``c`` is an (n, n, n) object array of Fractions.  Instances are
    immutable values; all methods are pure.
    """

    def __init__(self, c: np.ndarray, basis_labels=None, check: bool = True):
        c = np.asarray(c, dtype=object)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch("structure constants must be (n, n, n)")
        # n = 0 is tolerated here as the identity of direct products; the
        # document parser is where degenerate input gets rejected
        self.dim = c.shape[0]
        self.c = c
        self.c.setflags(write=False)
        self.basis_labels = (
            list(basis_labels)
            if basis_labels is not None
            else [f"e{i+1}" for i in range(self.dim)]
        )
        if check:
            bad = self.antisymmetry_defect()
            if bad is not None:
                raise InvalidStructure(f"antisymmetry fails at {bad}")
            bad = self.jacobi_defect()
            if bad is not None:
                raise InvalidStructure(f"Jacobi identity fails on triple {bad}")

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, basis_labels=None, check=True):
        """Build from a map {(i, j): coeffs} with i < j (0-indexed);
        omitted pairs are zero brackets."""
        c = ex.rzeros((dim, dim, dim))
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise DimensionMismatch(f"bad bracket pair ({i}, {j})")
            v = ex.rvec(coeffs)
            if v.shape[0] != dim:
                raise DimensionMismatch("bracket coefficient count != dim")
            c[i, j, :] = v
            c[j, i, :] = -v
        return cls(c, basis_labels=basis_labels, check=check)

    @classmethod
    def abelian(cls, dim: int):
        return cls(ex.rzeros((dim, dim, dim)), check=False)

    def antisymmetry_defect(self):
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                if any(self.c[i, j, k] != -self.c[j, i, k] for k in range(n)):
                    return (i, j)
        return None

    def jacobi_defect(self):
        """First basis triple violating Jacobi, or None."""
        n = self.dim
        ad = self.ad_basis
        for i in range(n):
            for j in range(i + 1, n):
                cij = self.c[i, j, :]
                for k in range(j + 1, n):
                    s = ad[i].dot(self.c[j, k, :])
                    s = s + ad[j].dot(self.c[k, i, :])
                    s = s + ad[k].dot(cij)
                    if not ex.is_zero(s):
                        return (i, j, k)
        return None

    @cached_property
    def ad_basis(self) -> list:
        """ad_{e_i} as matrices; column j is [e_i, e_j]."""
        return [self.c[i, :, :].T.copy() for i in range(self.dim)]

    def ad(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        m = ex.rzeros((self.dim, self.dim))
        for i in range(self.dim):
            if x[i] != 0:
                m = m + x[i] * self.ad_basis[i]
        return m

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        if x.shape[0] != self.dim or y.shape[0] != self.dim:
            raise DimensionMismatch("bracket operands must have length n")
        return self.ad(x).dot(y)

    def bracket_span(self, u_basis: np.ndarray, v_basis: np.ndarray) -> np.ndarray:
        """Canonical basis of span{[u, v]} over basis columns."""
        vecs = []
        for a in range(u_basis.shape[1]):
            ad_u = self.ad(u_basis[:, a])
            for b in range(v_basis.shape[1]):
                vecs.append(ad_u.dot(v_basis[:, b]))
        if not vecs:
            return ex.rzeros((self.dim, 0))
        return ex.column_space(np.stack(vecs, axis=1))

    @cached_property
    def derived_algebra(self) -> np.ndarray:
        full = ex.reye(self.dim)
        return self.bracket_span(full, full)

    def derived_series(self) -> list:
        terms = [ex.reye(self.dim)]
        while terms[-1].shape[1] > 0:
            nxt = self.bracket_span(terms[-1], terms[-1])
            if nxt.shape[1] == terms[-1].shape[1]:
                break
            terms.append(nxt)
        return terms

    def lower_central_series(self) -> list:
        full = ex.reye(self.dim)
        terms = [full]
        while terms[-1].shape[1] > 0:
            nxt = self.bracket_span(full, terms[-1])
            if nxt.shape[1] == terms[-1].shape[1]:
                break
            terms.append(nxt)
        return terms

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].shape[1] == 0

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].shape[1] == 0

    def centre(self) -> np.ndarray:
        """Canonical basis of {x : [x, .] = 0}."""
        rows = np.concatenate(self.ad_basis, axis=0)
        return ex.nullspace(rows)

    def centraliser(self, u_basis: np.ndarray) -> np.ndarray:
        """{x in g : [x, u] = 0 for all u in span(u_basis)}."""
        if u_basis.shape[1] == 0:
            return ex.reye(self.dim)
        rows = np.concatenate(
            [self.ad(u_basis[:, a]) for a in range(u_basis.shape[1])], axis=0
        )
        return ex.nullspace(rows)

    def centre_of_derived(self) -> np.ndarray:
        """z(g') as a canonical column basis."""
        der = self.derived_algebra
        return ex.intersect_columns(der, self.centraliser(der))

    def restrict(self, basis: np.ndarray) -> "LieAlgebra":
        """Subalgebra on the given column basis, with exact coordinates."""
        k = basis.shape[1]
        c = ex.rzeros((k, k, k))
        for a in range(k):
            ad_a = self.ad(basis[:, a])
            for b in range(k):
                w = ad_a.dot(basis[:, b])
                coords = ex.solve(basis, w)
                if coords is None:
                    raise InvalidStructure("basis does not span a subalgebra")
                c[a, b, :] = coords
        return LieAlgebra(c, check=False)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        n, m = self.dim, other.dim
        c = ex.rzeros((n + m, n + m, n + m))
        c[:n, :n, :n] = self.c
        c[n:, n:, n:] = other.c
        return LieAlgebra(c, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and all(a == b for a, b in zip(self.c.flat, other.c.flat))
        )

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim})"


class Metric:
    """Exact positive-definite scalar product given by its Gram matrix."""

    def __init__(self, gram):
        gram = np.asarray(gram, dtype=object) if not isinstance(gram, np.ndarray) else gram
        if gram.size and not isinstance(gram[0, 0], Fraction):
            gram = ex.rmat(gram.tolist())
        if not ex.is_symmetric(gram):
            raise NotSymmetric("Gram matrix must be symmetric")
        if not ex.is_pos_def(gram):
            raise NotPositiveDefinite("Gram matrix must be positive definite")
        self.gram = gram
        self.gram.setflags(write=False)
        self.dim = gram.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(ex.reye(n))

    @cached_property
    def inverse(self) -> np.ndarray:
        return ex.inv(self.gram)

    def inner(self, x, y) -> Fraction:
        return np.asarray(x, dtype=object).dot(self.gram).dot(np.asarray(y, dtype=object))

    def norm_sq(self, x) -> Fraction:
        return self.inner(x, x)

    def sharp(self, theta: "OneForm") -> np.ndarray:
        """Metric dual vector of a 1-form."""
        return self.inverse.dot(theta.coeffs)

    def scaled(self, lam) -> "Metric":
        lam = ex.rat(lam)
        return Metric(lam * self.gram)

    def restrict(self, basis: np.ndarray) -> "Metric":
        return Metric(basis.T.dot(self.gram).dot(basis))

    def __eq__(self, other):
        return isinstance(other, Metric) and np.array_equal(self.gram, other.gram)

    def __repr__(self):
        return f"Metric(dim={self.dim})"


class OneForm:
    """Left-invariant 1-form: a coefficient row in the dual basis."""

    def __init__(self, coeffs):
        self.coeffs = coeffs if isinstance(coeffs, np.ndarray) else ex.rvec(coeffs)
        self.coeffs.setflags(write=False)
        self.dim = self.coeffs.shape[0]

    @classmethod
    def dual(cls, n: int, i: int, scale=1) -> "OneForm":
        v = ex.rzeros(n)
        v[i] = ex.rat(scale)
        return cls(v)

    @classmethod
    def zero(cls, n: int) -> "OneForm":
        return cls(ex.rzeros(n))

    def __call__(self, x) -> Fraction:
        return self.coeffs.dot(np.asarray(x, dtype=object))

    def is_zero(self) -> bool:
        return ex.is_zero(self.coeffs)

    def __add__(self, other):
        return OneForm(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return OneForm(self.coeffs - other.coeffs)

    def __mul__(self, s):
        return OneForm(ex.rat(s) * self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OneForm) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"OneForm({[str(c) for c in self.coeffs]})"


class Subspace:
    """Subspace of Q^n identified by the reduced column echelon form of
    any basis matrix, so two Subspaces are equal iff their spans are."""

    def __init__(self, basis_matrix: np.ndarray, ambient_dim: Optional[int] = None):
        if basis_matrix.size == 0 and ambient_dim is not None:
            basis_matrix = ex.rzeros((ambient_dim, 0))
        self.basis = ex.column_space(basis_matrix)
        self.basis.setflags(write=False)
        self.ambient_dim = basis_matrix.shape[0]
        self.dim = self.basis.shape[1]

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(ex.rzeros((n, 0)))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(ex.reye(n))

    @classmethod
    def spanned_by(cls, vectors, ambient_dim=None) -> "Subspace":
        vectors = [ex.rvec(v) if not isinstance(v, np.ndarray) else v for v in vectors]
        if not vectors:
            return cls.zero(ambient_dim)
        return cls(np.stack(vectors, axis=1))

    def contains(self, v) -> bool:
        return ex.in_span(self.basis, np.asarray(v, dtype=object))

    def contains_space(self, other: "Subspace") -> bool:
        return ex.span_contains(self.basis, other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(ex.intersect_columns(self.basis, other.basis))

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace(np.concatenate([self.basis, other.basis], axis=1))

    def orthogonal_complement(self, metric: Metric) -> "Subspace":
        """G-orthogonal complement; kernel of (basis^T G)."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace(ex.nullspace(self.basis.T.dot(metric.gram)))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash(
            (self.ambient_dim, tuple(tuple(row) for row in self.basis.tolist()))
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


@dataclass(frozen=True)
class AuditReport:
    jacobi_ok: bool
    solvable: bool
    nilpotent: bool
    unimodular: bool
    derived_series_dims: tuple
    lower_central_dims: tuple
    jacobi_witness: Optional[tuple] = None


def bracket(L: LieAlgebra, x, y) -> np.ndarray:
    return L.bracket(x, y)


def trace_form(L: LieAlgebra) -> OneForm:
    """H(x) = tr(ad_x); vanishes on g' and detects unimodularity."""
    return OneForm(
        ex.rvec([sum(m[k, k] for k in range(L.dim)) for m in L.ad_basis])
    )


def is_unimodular(L: LieAlgebra) -> bool:
    return trace_form(L).is_zero()


def audit_algebra(L: LieAlgebra) -> AuditReport:
    jac = L.jacobi_defect()
    ds = L.derived_series()
    lcs = L.lower_central_series()
    return AuditReport(
        jacobi_ok=jac is None and L.antisymmetry_defect() is None,
        solvable=ds[-1].shape[1] == 0,
        nilpotent=lcs[-1].shape[1] == 0,
        unimodular=is_unimodular(L),
        derived_series_dims=tuple(t.shape[1] for t in ds),
        lower_central_dims=tuple(t.shape[1] for t in lcs),
        jacobi_witness=jac,
    )


def is_closed(L: LieAlgebra, theta: OneForm) -> bool:
    """A left-invariant 1-form is closed iff it vanishes on g'."""
    der = L.derived_algebra
    return all(theta(der[:, j]) == 0 for j in range(der.shape[1]))


@dataclass(frozen=True)
class SubspaceReport:
    is_subalgebra: bool
    is_ideal: bool
    is_abelian: bool
    orthogonal_complement: Subspace
    in_centre_of_derived: bool


def subspace_predicates(L: LieAlgebra, G: Metric, U: Subspace) -> SubspaceReport:
    b = U.basis
    full = ex.reye(L.dim)
    uu = L.bracket_span(b, b)
    gu = L.bracket_span(full, b)
    zd = L.centre_of_derived()
    return SubspaceReport(
        is_subalgebra=ex.span_contains(b, uu),
        is_ideal=ex.span_contains(b, gu),
        is_abelian=uu.shape[1] == 0,
        orthogonal_complement=U.orthogonal_complement(G),
        in_centre_of_derived=ex.span_contains(zd, b),
    )


@dataclass(frozen=True)
class AlmostAbelianPresentation:
    """g = R b |x k with k a codimension-1 abelian ideal and b _|_ k.

    ``b`` is a primitive rational vector orthogonal to the ideal; it is
    rescaled to unit G-norm only when that norm is a rational square
    (``unit`` records which), since exact arithmetic cannot normalise
    otherwise.  ``matrix`` is ad_b on the canonical basis of the ideal.
    """

    b: np.ndarray
    b_norm_sq: Fraction
    unit: bool
    ideal: Subspace
    matrix: np.ndarray


def _primitive(v: np.ndarray) -> np.ndarray:
    den = 1
    for x in v:
        den = den * x.denominator // np.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = np.gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ex.rvec(ints)


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    from math import isqrt

    return (
        isqrt(q.numerator) ** 2 == q.numerator
        and isqrt(q.denominator) ** 2 == q.denominator
    )


def _sqrt_fraction(q: Fraction) -> Fraction:
    from math import isqrt

    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def _presentation_from_ideal(L, G, ideal_basis) -> AlmostAbelianPresentation:
    ideal = Subspace(ideal_basis)
    comp = ideal.orthogonal_complement(G)
    b = _primitive(comp.basis[:, 0])
    nsq = G.norm_sq(b)
    unit = _is_square(nsq)
    if unit and nsq != 1:
        b = b / _sqrt_fraction(nsq)
        nsq = ex.ONE
    ad_b = L.ad(b)
    mat = ex.solve(ideal.basis, ad_b.dot(ideal.basis))
    return AlmostAbelianPresentation(b, nsq, unit, ideal, mat)


def almost_abelian_presentation(
    L: LieAlgebra, G: Metric
) -> Optional[AlmostAbelianPresentation]:
    """Find a codimension-1 abelian ideal, if one exists.

    Any codimension-1 ideal contains g', so candidates are preimages of
    hyperplanes in g/g'.  A finite, complete case analysis (rather than a
    search over the infinitely many hyperplanes):

    * g' must be abelian, and any abelian codim-1 ideal lies in the
      centraliser C of g'.  If dim C = n-1 the only candidate is C
      itself; if dim C < n-1 there is none.
    * If C = g, the bracket descends to a vector-valued skew form on
      g/g'; an abelian hyperplane is exactly a totally isotropic one.
      Each nonzero component of the form must have rank 2 and its kernel
      must be contained in the hyperplane, which pins the hyperplane down
      to either a single candidate or a kernel plus an arbitrary line in
      a 2-plane (any line works; the first one is returned).
    """
    n = L.dim
    der = L.derived_algebra
    if der.shape[1] == 0:
        # abelian: deterministic first choice, the G-orthocomplement of e1
        e1 = ex.rzeros(n)
        e1[0] = ex.ONE
        ideal = Subspace.spanned_by([e1], n).orthogonal_complement(G)
        return _presentation_from_ideal(L, G, ideal.basis)
    if L.bracket_span(der, der).shape[1] != 0:
        return None  # g' not abelian
    cent = L.centraliser(der)
    dc = cent.shape[1]
    if dc < n - 1:
        return None
    if dc == n - 1:
        if not ex.span_contains(cent, der):
            return None
        if L.bracket_span(cent, cent).shape[1] != 0:
            return None
        return _presentation_from_ideal(L, G, cent)
    # C = g: g' is central.  Work on a complement of g' in g; columns of
    # `lift` map to the standard basis of g/g' under the quotient rows q.
    q = ex.left_nullspace(der)
    lift = q.T.dot(ex.inv(q.dot(q.T)))
    m = q.shape[0]
    dg = der.shape[1]
    # s[k] = skew m x m matrix of the g'_k component of the bracket on g/g'
    svals = []
    for k in range(dg):
        sk = ex.rzeros((m, m))
        for a in range(m):
            ada = L.ad(lift[:, a])
            for bcol in range(m):
                w = ada.dot(lift[:, bcol])
                coords = ex.solve(der, w)
                sk[a, bcol] = coords[k]
        svals.append(sk)
    nonzero = [s for s in svals if not ex.is_zero(s)]
    if not nonzero:
        # bracket vanishes identically on the complement: cannot happen
        # here since g' != 0 is generated by these values
        return None
    kernels = []
    for s in nonzero:
        if ex.rank(s) > 2:
            return None
        kernels.append(ex.nullspace(s))
    ksum = ex.column_space(np.concatenate(kernels, axis=1))
    if ksum.shape[1] >= m:
        return None
    if ksum.shape[1] == m - 1:
        # single candidate; check total isotropy
        h = ksum
        for s in nonzero:
            if not ex.is_zero(h.T.dot(s).dot(h)):
                return None
    else:
        # all kernels coincide (dim m-2); any line in a complement works
        extra = None
        for j in range(m):
            ej = ex.rzeros(m)
            ej[j] = ex.ONE
            if not ex.in_span(ksum, ej):
                extra = ej
                break
        h = np.concatenate([ksum, extra.reshape(-1, 1)], axis=1)
    ideal_basis = np.concatenate([der, lift.dot(h)], axis=1)
    return _presentation_from_ideal(L, G, ideal_basis)
