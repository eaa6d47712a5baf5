"""Command-line front door.

Subcommands::

    check      algebraic audit (Jacobi, solvability, unimodularity)
    detect     maximal flat parallel subspace and classification
    verify     three-condition verification plus the structural audit
    construct  semidirect | almab | flag | direct | amalgam | modify
    tables     reproduce the low-dimensional catalog with lattice verdicts
    lattice    search | certify on the almost abelian presentation

Exit codes: 0 success (all checks pass), 1 verification failure,
2 input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import exact as ex
from .algebra import (
    LieAlgebra,
    Metric,
    almost_abelian_presentation,
    audit_algebra,
    is_closed,
)
from .construct import (
    OrthoRep,
    almab_lcp,
    amalgamated_product,
    direct_product,
    flag_lcp,
    metric_modification,
    semidirect_lcp,
)
from .detect import (
    LCPStructure,
    classify,
    maximal_flat_parallel,
    structural_audit,
    verify_lcp,
)
from .docfmt import parse_file, render_document
from .errors import DocumentError, LcpError
from .intpoly import IntPoly
from .lattice import certify_witness, certify_witness_blocked, lattice_verdict
from .lowdim import render_tables_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _emit(payload, fmt: str, text_render):
    if fmt == "machine":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text_render)


def _t_range(spec: str):
    lo, _, hi = spec.partition(":")
    return (float(lo), float(hi))


def _load(path):
    doc = parse_file(path)
    return doc


def cmd_check(args) -> int:
    doc = _load(args.input)
    L = doc.algebra(check=False)
    rep = audit_algebra(L)
    payload = {
        "label": doc.label,
        "jacobi_ok": rep.jacobi_ok,
        "solvable": rep.solvable,
        "nilpotent": rep.nilpotent,
        "unimodular": rep.unimodular,
        "derived_series_dims": list(rep.derived_series_dims),
        "lower_central_dims": list(rep.lower_central_dims),
        "jacobi_witness": rep.jacobi_witness,
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(payload, args.format, "\n".join(lines))
    return EXIT_OK if rep.jacobi_ok else EXIT_FAIL


def cmd_detect(args) -> int:
    doc = _load(args.input)
    L, G, theta = doc.algebra(), doc.metric(), doc.one_form()
    if theta is None:
        raise DocumentError("detect requires a theta directive")
    cls = classify(L, G, theta)
    flat = maximal_flat_parallel(L, G, theta)
    payload = {
        "label": doc.label,
        "kind": cls.kind,
        "flat_dim": cls.flat_dim,
        "flat_basis": [[str(x) for x in flat.basis[:, a]] for a in range(flat.dim)],
    }
    _emit(
        payload,
        args.format,
        f"{cls.kind}, flat_dim={cls.flat_dim}",
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load(args.input)
    L, G, theta = doc.algebra(), doc.metric(), doc.one_form()
    if theta is None:
        raise DocumentError("verify requires a theta directive")
    flat = doc.flat()
    if flat is None:
        flat = maximal_flat_parallel(L, G, theta)
    rep = verify_lcp(L, G, theta, flat)
    payload = {"label": doc.label, "verification": rep.as_dict(), "audit": None}
    ok = rep.passed
    audit_line = ""
    aud_rep = audit_algebra(L)
    if ok and flat.dim >= 1 and aud_rep.solvable and aud_rep.unimodular:
        audit = structural_audit(LCPStructure(L, G, theta, flat))
        payload["audit"] = audit.as_dict()
        ok = ok and audit.passed
        audit_line = f"\nstructural audit: {'pass' if audit.passed else 'FAIL'}"
    _emit(
        payload,
        args.format,
        f"verification: {'pass' if rep.passed else 'FAIL'} "
        f"(subalgebras={rep.subalgebras_ok}, bilinear={rep.bilinear_ok}, "
        f"curvature={rep.curvature_ok}, flat_dim={flat.dim})" + audit_line,
    )
    return EXIT_OK if ok else EXIT_FAIL


def _structure_from_doc(doc) -> LCPStructure:
    L, G, theta = doc.algebra(), doc.metric(), doc.one_form()
    if theta is None:
        raise DocumentError("document needs a theta directive")
    flat = doc.flat()
    if flat is None:
        flat = maximal_flat_parallel(L, G, theta)
    return LCPStructure(L, G, theta, flat)


def _emit_structure(s: LCPStructure, fmt: str, label: str) -> int:
    text = render_document(s.algebra, s.metric, s.theta, s.flat, label=label)
    cls = classify(s.algebra, s.metric, s.theta)
    payload = {"document": text, "kind": cls.kind, "flat_dim": cls.flat_dim}
    _emit(payload, fmt, text + f"# {cls.kind}, flat_dim={cls.flat_dim}")
    return EXIT_OK


def cmd_construct(args) -> int:
    doc = _load(args.input)
    recipe = args.recipe
    if recipe == "semidirect":
        h = doc.algebra()
        q = int(doc.scalars.get("q", 1))
        mats = []
        for i in range(h.dim):
            name = f"beta{i+1}"
            mats.append(doc.block(name) if name in doc.blocks else ex.rzeros((q, q)))
        s = semidirect_lcp(h, doc.metric(), OrthoRep.from_matrices(q, mats))
    elif recipe == "almab":
        s = almab_lcp(doc.block("A"), doc.block("B"))
    elif recipe == "flag":
        v = doc.block("v")[0] if "v" in doc.blocks else ex.rzeros(doc.block("A").shape[0])
        s = flag_lcp(doc.block("A"), doc.block("B1"), doc.block("B2"), v)
    elif recipe == "direct":
        if not args.with_input:
            raise DocumentError("construct direct needs --with")
        s1 = _structure_from_doc(doc)
        kdoc = _load(args.with_input)
        s = direct_product(s1, kdoc.algebra(), kdoc.metric())
    elif recipe == "amalgam":
        if not args.with_input:
            raise DocumentError("construct amalgam needs --with")
        s = amalgamated_product(_structure_from_doc(doc), _structure_from_doc(_load(args.with_input)))
    elif recipe == "modify":
        if args.lam is None:
            raise DocumentError("construct modify needs --lam")
        s = metric_modification(_structure_from_doc(doc), ex.rat(args.lam))
    else:  # pragma: no cover
        raise DocumentError(f"unknown recipe {recipe!r}")
    return _emit_structure(s, args.format, f"constructed by {recipe}")


def cmd_tables(args) -> int:
    from .lowdim import reproduce_tables

    rows = reproduce_tables(
        t_range=_t_range(args.t_range), seed=args.seed, use_fixtures=True
    )
    ok = all(r["witnesses_ok"] and r["dims_found"] == r["dims_expected"] for r in rows)
    _emit(rows, args.format, render_tables_text(rows).rstrip("\n"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lattice(args) -> int:
    doc = _load(args.input)
    L, G = doc.algebra(), doc.metric()
    pres = almost_abelian_presentation(L, G)
    if pres is None:
        print("input is not almost abelian: Bock scan does not apply", file=sys.stderr)
        return EXIT_FAIL
    if args.action == "search":
        structure = None
        theta = doc.one_form()
        if theta is not None and not theta.is_zero() and is_closed(L, theta):
            flat = maximal_flat_parallel(L, G, theta)
            if flat.dim >= 1 and verify_lcp(L, G, theta, flat).passed:
                aud = audit_algebra(L)
                if aud.solvable and aud.unimodular:
                    structure = LCPStructure(L, G, theta, flat)
        verdict = lattice_verdict(
            pres.matrix,
            label=doc.label or "input",
            t_range=_t_range(args.t_range),
            tol=args.tol,
            seed=args.seed,
            structure=structure,
        )
        from .lowdim import fingerprint

        payload = verdict.as_dict()
        payload["input_fingerprint"] = fingerprint(L, G).as_dict()
        lines = [f"status: {verdict.status}"]
        for w in verdict.witnesses:
            lines.append(f"witness t0={w.t0:.6f} poly {w.poly} residual {w.residual:.2e}")
        for cert in verdict.certificates:
            lines.append(f"certificate {cert.rule} {cert.reference}".rstrip())
        _emit(payload, args.format, "\n".join(lines))
        return EXIT_OK if verdict.status != "inconclusive" else EXIT_FAIL
    # certify
    if args.t0 is None or args.poly is None:
        raise DocumentError("lattice certify needs --t0 and --poly")
    poly = IntPoly(tuple(int(x) for x in args.poly.split(",")))
    w = certify_witness(pres.matrix, args.t0, poly, tol=args.tol, seed=args.seed)
    if w is None:
        w = certify_witness_blocked(pres.matrix, args.t0, tol=args.tol, seed=args.seed)
    if w is None:
        _emit({"certified": False}, args.format, "not certified (inconclusive)")
        return EXIT_FAIL
    _emit(
        {"certified": True, "witness": w.as_dict()},
        args.format,
        f"certified: Z={[list(map(int, r)) for r in w.integral_matrix]} residual {w.residual:.2e}",
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lcplab",
        description="Exact LCP structures on metric Lie algebras: audits, "
        "detection, constructions, the dimension <= 5 catalog, and lattice search.",
        epilog="Environment: LCPLAB_FIXTURES overrides the witness fixture "
        "directory; LCPLAB_DISABLE_NUMBA=1 forces the pure-numpy kernels.",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="definition document path")
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomised steps")

    sp = sub.add_parser("check", help="algebraic audit")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("detect", help="classify and find the maximal flat subspace")
    common(sp)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("verify", help="verify an LCP structure and run the audit")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build verified LCP structures")
    sp.add_argument("recipe", choices=("semidirect", "almab", "flag", "direct", "amalgam", "modify"))
    common(sp)
    sp.add_argument("--with", dest="with_input", help="second document (direct/amalgam)")
    sp.add_argument("--lam", help="metric modification amount (rational)")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("tables", help="reproduce the low-dimensional catalog")
    common(sp, needs_input=False)
    sp.add_argument("--t-range", default="0:3", help="lattice scan range A:B")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("lattice", help="lattice search / certification")
    sp.add_argument("action", choices=("search", "certify"))
    common(sp)
    sp.add_argument("--t-range", default="0:20", help="scan range A:B")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--t0", type=float, help="candidate parameter (certify)")
    sp.add_argument("--poly", help="comma-separated descending integer coefficients")
    sp.set_defaults(func=cmd_lattice)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LcpError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
