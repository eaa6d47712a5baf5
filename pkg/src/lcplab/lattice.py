"""Lattice existence for simply connected almost abelian groups.

A unimodular almost abelian group R |x_rho R^{n-1} has a lattice iff
some rho(t0) = exp(t0 ad_b) is conjugate to an integer unimodular
matrix.  The search side scans t for integer characteristic polynomials
and certifies candidates through companion-matrix conjugacy (sound but
sufficient-only: it needs a non-derogatory exponential; block-diagonal
inputs fall back to blockwise certification).  The no-lattice side
implements two certificate rules:

* double_root: all eigenvalues of ad_b real with exactly one multiple
  root, which is nonzero (then no power of the exponential can have an
  integer characteristic polynomial);
* codim2_highdim: a verified LCP structure of flat codimension 2 in
  dimension >= 5;

plus data-tagged "cited" verdicts for outcomes resting on literature
results that are not recomputed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact as ex
from . import kernels
from .algebra import audit_algebra
from .detect import LCPStructure
from .errors import (
    EnvelopeExceeded,
    MTooSmall,
    NonPositiveInput,
    NonTraceFree,
    PreconditionViolated,
)
from .intpoly import IntPoly, companion, int_charpoly, int_det, smith_normal_form

MAX_DIM = 16
MAX_SPECTRAL = 50.0


def _as_float_matrix(c) -> np.ndarray:
    a = np.asarray(c)
    if a.dtype == object:
        a = a.astype(np.float64)
    return np.ascontiguousarray(a, dtype=np.float64)


def exp_ad(c, t: float) -> np.ndarray:
    """exp(t C) by scaling and squaring; envelope n <= 16 and
    spectral radius of t C at most 50."""
    a = _as_float_matrix(c)
    n = a.shape[0]
    if a.shape != (n, n):
        raise EnvelopeExceeded("matrix must be square")
    if n > MAX_DIM:
        raise EnvelopeExceeded(f"supported envelope is n <= {MAX_DIM}")
    if n and np.max(np.abs(np.linalg.eigvals(t * a))) > MAX_SPECTRAL:
        raise EnvelopeExceeded("spectral radius of t*C exceeds the envelope")
    return kernels.expm(t * a)


def _defect_at(c: np.ndarray, t: float) -> float:
    return kernels.integer_defect(kernels.charpoly_coeffs(kernels.expm(t * c)))


def _golden_min(f, lo: float, hi: float, iters: int = 130):
    """Golden-section minimisation; localises the (V-shaped) defect
    minimum to machine precision, which generic quadratic-interpolation
    minimisers cannot do on non-smooth objectives."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if b - a < 1e-15 * max(1.0, abs(a)):
            break
    x = (a + b) / 2.0
    return x, f(x)


@dataclass(frozen=True)
class ScanCandidate:
    t0: float
    poly: IntPoly
    defect: float

    def as_dict(self):
        return {"t0": self.t0, "poly": list(self.poly.coeffs), "defect": self.defect}


def integer_charpoly_scan(
    c,
    t_range=(0.0, 20.0),
    step: float = 1e-3,
    tol: float = 1e-9,
    flag_tol: float = 0.05,
) -> list:
    """Scan t for integer characteristic polynomials of exp(t C).

    Flags interior local minima of the coefficient integer-defect below
    ``flag_tol``, refines each by bounded 1-d minimisation down to
    ``tol``, and deduplicates candidates closer than 1e-6.  A (near)
    nilpotent C has integer coefficients for every t and is reported as
    the single degenerate candidate t = 1.
    """
    a = _as_float_matrix(c)
    n = a.shape[0]
    if n > MAX_DIM:
        raise EnvelopeExceeded(f"supported envelope is n <= {MAX_DIM}")
    if abs(np.trace(a)) > tol * max(1.0, np.abs(a).max()):
        raise NonTraceFree("Bock scan requires a trace-free matrix")
    lo, hi = float(t_range[0]), float(t_range[1])
    if hi * np.max(np.abs(np.linalg.eigvals(a)) if n else [0.0]) > MAX_SPECTRAL:
        hi = MAX_SPECTRAL / max(np.max(np.abs(np.linalg.eigvals(a))), 1e-30)
    ts = np.arange(lo + step, hi + step / 2, step)
    if ts.size == 0:
        return []
    defects = kernels.scan_defects(a, ts)
    if defects.max() <= tol:
        # unipotent exponential: every t works, report t = 1
        poly = IntPoly(tuple(int(round(x)) for x in kernels.charpoly_coeffs(kernels.expm(a))))
        return [ScanCandidate(1.0, poly, float(_defect_at(a, 1.0)))]
    flagged = [
        i
        for i in range(1, len(ts) - 1)
        if defects[i] <= defects[i - 1]
        and defects[i] <= defects[i + 1]
        and defects[i] < flag_tol
    ]
    out = []
    for i in flagged:
        t0, d0 = _golden_min(lambda t: _defect_at(a, t), ts[i - 1], ts[i + 1])
        if d0 > tol:
            continue
        coeffs = kernels.charpoly_coeffs(kernels.expm(t0 * a))
        poly = IntPoly(tuple(int(round(x)) for x in coeffs))
        if abs(poly.constant_term()) != 1:
            continue
        if any(abs(t0 - prev.t0) < 1e-6 for prev in out):
            continue
        out.append(ScanCandidate(t0, poly, d0))
    return sorted(out, key=lambda cand: cand.t0)


@dataclass(frozen=True)
class LatticeWitness:
    """Certified witness: exp(t0 C) is conjugate (by Q) to the integer
    unimodular matrix Z, with max-entry residual below tolerance."""

    t0: float
    integral_matrix: np.ndarray
    conjugator: np.ndarray
    residual: float
    poly: IntPoly

    def as_dict(self):
        return {
            "t0": self.t0,
            "integral_matrix": [[int(x) for x in row] for row in self.integral_matrix],
            "poly": list(self.poly.coeffs),
            "residual": self.residual,
        }


def _krylov(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    cols = [v]
    for _ in range(m.shape[0] - 1):
        cols.append(m.dot(cols[-1]))
    return np.stack(cols, axis=1)


def _witness_from_conjugacy(t0, m, z, q, tol) -> Optional[LatticeWitness]:
    if int_det(z) != 1:
        return None
    poly = int_charpoly(z)
    zf = np.array([[float(x) for x in row] for row in z])
    residual = float(np.abs(q.dot(m).dot(np.linalg.inv(q)) - zf).max())
    if residual > tol:
        return None
    return LatticeWitness(t0, z, q, residual, poly)


def certify_witness(c, t0: float, poly: IntPoly, tol: float = 1e-8, seed: int = 0):
    """Certify a scan candidate through companion-matrix conjugacy.

    A non-derogatory matrix is conjugate to the companion matrix of its
    characteristic polynomial; when that polynomial is monic integral
    with constant term of unit modulus, the companion matrix is integer
    with determinant +-1.  Returns None (inconclusive) for derogatory
    exponentials or determinant -1.
    """
    m = exp_ad(c, t0)
    n = m.shape[0]
    if not poly.monic or abs(poly.constant_term()) != 1 or poly.degree != n:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(4):
        v = rng.standard_normal(n)
        k = _krylov(m, v)
        sv = np.linalg.svd(k, compute_uv=False)
        if sv[-1] > 1e-8 * sv[0]:
            z = companion(poly)
            q = np.linalg.inv(k)
            return _witness_from_conjugacy(t0, m, z, q, tol)
    return None  # derogatory: inconclusive on this path


def _blocks_of(c: np.ndarray) -> list:
    """Connected components of the nonzero pattern (invariant blocks of a
    block-diagonal matrix)."""
    n = c.shape[0]
    adj = (np.abs(c) + np.abs(c.T)) > 0
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if adj[i, j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _merge_components(a: np.ndarray, t0: float, comps: list) -> Optional[list]:
    """Greedily merge consecutive invariant components until each merged
    group has an integer characteristic polynomial of its exponential
    (repeated eigenvalue pairs of amalgams sit in consecutive blocks)."""
    groups = []
    acc = []
    for comp in comps:
        acc = sorted(acc + comp)
        sub = a[np.ix_(acc, acc)]
        if kernels.integer_defect(kernels.charpoly_coeffs(kernels.expm(t0 * sub))) < 1e-7:
            groups.append(acc)
            acc = []
    if acc:
        return None
    return groups


def certify_witness_blocked(c, t0: float, tol: float = 1e-8, seed: int = 0, blocks=None):
    """Blockwise certification for derogatory exponentials of
    block-diagonal C (e.g. repeated blocks of amalgamated products):
    each diagonal block is certified on its own and the integer matrices
    are reassembled.  ``blocks`` overrides the automatic grouping."""
    a = _as_float_matrix(c)
    if blocks is None:
        blocks = _merge_components(a, t0, _blocks_of(a))
        if blocks is None or len(blocks) <= 1:
            return None
    n = a.shape[0]
    z = np.zeros((n, n), dtype=object)
    q = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            z[i, j] = 0
    for comp in blocks:
        sub = a[np.ix_(comp, comp)]
        coeffs = kernels.charpoly_coeffs(kernels.expm(t0 * sub))
        if kernels.integer_defect(coeffs) > 1e-7:
            return None
        psub = IntPoly(tuple(int(round(x)) for x in coeffs))
        wsub = certify_witness(sub, t0, psub, tol=tol, seed=seed)
        if wsub is None:
            return None
        for bi, gi in enumerate(comp):
            for bj, gj in enumerate(comp):
                z[gi, gj] = wsub.integral_matrix[bi, bj]
            q[gi, np.array(comp)] = wsub.conjugator[bi, :]
    m = exp_ad(a, t0)
    return _witness_from_conjugacy(t0, m, z, q, tol)


@dataclass(frozen=True)
class NoLatticeCertificate:
    rule: str  # double_root | codim2_highdim | cited
    data: dict = field(default_factory=dict)
    reference: str = ""

    def as_dict(self):
        return {"rule": self.rule, "data": self.data, "reference": self.reference}


def no_lattice_double_root(c, tol: float = 1e-8) -> Optional[NoLatticeCertificate]:
    """Certificate when all eigenvalues of C are real and exactly one is
    multiple and nonzero: any integer characteristic polynomial of
    exp(t C) would then have exactly one double root away from +-1,
    which is impossible for a monic integer polynomial with unit
    constant term."""
    a = _as_float_matrix(c)
    if a.shape[0] == 0:
        return None
    ev = np.linalg.eigvals(a)
    if np.max(np.abs(ev.imag)) > tol:
        return None
    ev = sorted(ev.real)
    clusters = []
    for lam in ev:
        if clusters and abs(lam - clusters[-1][0]) <= tol:
            clusters[-1][1] += 1
            clusters[-1][0] = (clusters[-1][0] * (clusters[-1][1] - 1) + lam) / clusters[-1][1]
        else:
            clusters.append([lam, 1])
    multiple = [cl for cl in clusters if cl[1] >= 2]
    if len(multiple) == 1 and abs(multiple[0][0]) > tol:
        return NoLatticeCertificate(
            "double_root",
            data={
                "eigenvalues": [float(x) for x in ev],
                "multiple_root": float(multiple[0][0]),
                "multiplicity": int(multiple[0][1]),
            },
        )
    return None


def no_lattice_codim2(s: LCPStructure) -> Optional[NoLatticeCertificate]:
    """Certificate for a verified solvable unimodular LCP structure whose
    flat space has codimension 2 in dimension >= 5."""
    audit = audit_algebra(s.algebra)
    if not (audit.solvable and audit.unimodular):
        raise PreconditionViolated("codim2 rule needs a solvable unimodular algebra")
    if not s.verify().passed:
        raise PreconditionViolated("codim2 rule needs a verified structure")
    n, q = s.algebra.dim, s.flat_dim
    if n >= 5 and q == n - 2:
        return NoLatticeCertificate(
            "codim2_highdim", data={"dim": n, "flat_dim": q}
        )
    return None


def cited_certificate(reference: str, note: str = "") -> NoLatticeCertificate:
    return NoLatticeCertificate("cited", data={"note": note}, reference=reference)


@dataclass(frozen=True)
class AbelianizationReport:
    snf_diagonal: tuple
    torsion: int  # order of the cyclic torsion part (1 = free)

    def as_dict(self):
        return {"snf_diagonal": list(self.snf_diagonal), "torsion": self.torsion}


def e11_lattice(m: int):
    """Closed-form lattice family for the hyperbolic 3-dimensional group:
    t_m = ln((m + sqrt(m^2-4))/2) conjugates exp(t_m diag(1,-1)) to
    [[0,-1],[1,m]].  The abelianisation Z + Z_{m-2} (Smith form of
    E_m - I) separates the lattices pairwise."""
    if m <= 2:
        raise MTooSmall("need m >= 3")
    lam = (m + math.sqrt(m * m - 4)) / 2
    t_m = math.log(lam)
    z = np.array([[0, -1], [1, m]], dtype=object)
    mu = 1.0 / lam
    # E_m has eigenvector (1, -lam) for lam, so V diag(lam, mu) V^-1 = E_m
    vmat = np.array([[1.0, 1.0], [-lam, -mu]])
    c = np.array([[1.0, 0.0], [0.0, -1.0]])
    witness = _witness_from_conjugacy(t_m, exp_ad(c, t_m), z, vmat, 1e-8)
    if witness is None:  # pragma: no cover
        raise AssertionError("closed-form witness failed its residual check")
    em_minus_i = np.array([[0 - 1, -1], [1, m - 1]])
    diag = smith_normal_form(em_minus_i)
    torsion = diag[-1] if diag and diag[-1] != 1 else 1
    return witness, AbelianizationReport(tuple(diag), torsion)


def amalgam_lattice(t1: float, theta1_sq, t2: float, theta2_sq):
    """Common rescaling for the amalgam of two lattice-bearing factors.

    Solves t |theta2| / sqrt(|theta1|^2+|theta2|^2) = k1 t1 and
    t |theta1| / sqrt(...) = k2 t2 for natural k1, k2, which requires
    t2 |theta2| / (t1 |theta1|) to be rational.  Rationality of the float
    ratio is only accepted up to denominator 256 at 1e-9 relative
    tolerance; anything else is reported as inconclusive (None).
    """
    th1 = ex.rat(theta1_sq)
    th2 = ex.rat(theta2_sq)
    if t1 <= 0 or t2 <= 0 or th1 <= 0 or th2 <= 0:
        raise NonPositiveInput("t and |theta|^2 inputs must be positive")
    ratio = (t2 / t1) * math.sqrt(th2 / th1)
    approx = Fraction(ratio).limit_denominator(256)
    if approx <= 0 or abs(ratio - float(approx)) > 1e-9 * max(1.0, ratio):
        return None
    k1, k2 = approx.numerator, approx.denominator
    t_sq_over_t1_sq = Fraction(k1) ** 2 * (th1 + th2) / th2
    t = t1 * math.sqrt(t_sq_over_t1_sq)
    return {
        "t": t,
        "k1": k1,
        "k2": k2,
        "t_sq_over_t1_sq": t_sq_over_t1_sq,
    }


@dataclass(frozen=True)
class LatticeVerdict:
    input_label: str
    witnesses: tuple
    certificates: tuple
    inconclusive_ranges: tuple

    @property
    def status(self) -> str:
        if self.witnesses:
            return "yes"
        if self.certificates:
            return "no"
        return "inconclusive"

    def as_dict(self):
        return {
            "input": self.input_label,
            "status": self.status,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "certificates": [c.as_dict() for c in self.certificates],
            "inconclusive_ranges": [list(r) for r in self.inconclusive_ranges],
        }


def lattice_verdict(
    c,
    label: str = "",
    t_range=(0.0, 20.0),
    step: float = 1e-3,
    tol: float = 1e-8,
    seed: int = 0,
    structure: Optional[LCPStructure] = None,
    cited: Optional[NoLatticeCertificate] = None,
) -> LatticeVerdict:
    """Combine certificate rules and the scan into a single verdict.

    Certificates are decisive, so when one fires no witness search runs
    (a sound witness could never coexist with one)."""
    certs = []
    if cited is not None:
        certs.append(cited)
    dr = no_lattice_double_root(c, tol=tol)
    if dr is not None:
        certs.append(dr)
    if structure is not None:
        c2 = no_lattice_codim2(structure)
        if c2 is not None:
            certs.append(c2)
    if certs:
        return LatticeVerdict(label, (), tuple(certs), ())
    witnesses = []
    for cand in integer_charpoly_scan(c, t_range=t_range, step=step):
        w = certify_witness(c, cand.t0, cand.poly, tol=tol, seed=seed)
        if w is None:
            w = certify_witness_blocked(c, cand.t0, tol=tol, seed=seed)
        if w is not None:
            witnesses.append(w)
    inconclusive = () if witnesses else ((float(t_range[0]), float(t_range[1])),)
    return LatticeVerdict(label, tuple(witnesses), (), inconclusive)
