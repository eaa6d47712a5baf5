"""lcplab: exact locally conformally product structures on metric Lie
algebras, their low-dimensional classification, and lattice search for
the associated simply connected solvable Lie groups.

The exact layers (algebra, weyl, detect, construct, lowdim) run entirely
over rational arithmetic; lattice search uses floats with numba-compiled
kernels (pure-numpy fallback via LCPLAB_DISABLE_NUMBA=1).
"""

from .algebra import (
    AlmostAbelianPresentation,
    AuditReport,
    LieAlgebra,
    Metric,
    OneForm,
    Subspace,
    almost_abelian_presentation,
    audit_algebra,
    bracket,
    is_closed,
    is_unimodular,
    subspace_predicates,
    trace_form,
)
from .construct import (
    OrthoRep,
    almab_lcp,
    amalgamated_product,
    decompose,
    direct_product,
    flag_lcp,
    metric_modification,
    semidirect_lcp,
)
from .detect import (
    LCPClass,
    LCPStructure,
    VerificationReport,
    classify,
    maximal_flat_parallel,
    structural_audit,
    verify_lcp,
)
from .lattice import (
    LatticeWitness,
    NoLatticeCertificate,
    amalgam_lattice,
    certify_witness,
    e11_lattice,
    exp_ad,
    integer_charpoly_scan,
    lattice_verdict,
    no_lattice_codim2,
    no_lattice_double_root,
)
from .lowdim import (
    Fingerprint,
    check_isomorphism_witness,
    fingerprint,
    nonunimodular_4d,
    reproduce_tables,
    table_algebra,
    verify_table,
)
from .weyl import Connection, Curvature, curvature, levi_civita, weyl_connection

__all__ = [
    "AlmostAbelianPresentation",
    "AuditReport",
    "Connection",
    "Curvature",
    "Fingerprint",
    "LCPClass",
    "LCPStructure",
    "LatticeWitness",
    "LieAlgebra",
    "Metric",
    "NoLatticeCertificate",
    "OneForm",
    "OrthoRep",
    "Subspace",
    "VerificationReport",
    "almab_lcp",
    "almost_abelian_presentation",
    "amalgam_lattice",
    "amalgamated_product",
    "audit_algebra",
    "bracket",
    "certify_witness",
    "check_isomorphism_witness",
    "classify",
    "curvature",
    "decompose",
    "direct_product",
    "e11_lattice",
    "exp_ad",
    "fingerprint",
    "flag_lcp",
    "integer_charpoly_scan",
    "is_closed",
    "is_unimodular",
    "lattice_verdict",
    "levi_civita",
    "maximal_flat_parallel",
    "metric_modification",
    "no_lattice_codim2",
    "no_lattice_double_root",
    "nonunimodular_4d",
    "reproduce_tables",
    "semidirect_lcp",
    "structural_audit",
    "subspace_predicates",
    "table_algebra",
    "trace_form",
    "verify_lcp",
    "verify_table",
    "weyl_connection",
]
