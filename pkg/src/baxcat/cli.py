"""Command-line front end.

Subcommands: `catalog list`, `baxterize`, `classify`, `verify <check>`.
Exit codes: 0 pass/success, 1 verdict failure, 2 usage error.
Identical argv and seed produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .baxterize import INCONSISTENT, amplitude_at, classify_pairs, solve_central
from .catalog import build_family, catalog_rows
from .category import category_to_json
from .errors import CapabilityError, DomainError, PoleError
from .report import fmt_float
from .verify import (loop_functional_check, loop_partition_enumeration,
                     loop_partition_transfer, mu_annulus,
                     verify_braid_limits, verify_braid_relations,
                     verify_commuting_transfer, verify_current_vertex,
                     verify_projector_algebra, verify_ybe)

import numpy as np


def _cpair(z):
    z = complex(z)
    return [fmt_float(z.real), fmt_float(z.imag)]


def _family_kwargs(args):
    fam = args.family
    if fam in ("su2", "minimal"):
        if args.level is None:
            raise DomainError("--level is required for su2/minimal")
        return {"k": args.level}
    if fam == "ty":
        if args.M is None:
            raise DomainError("--M is required for ty")
        return {"M": args.M}
    if fam == "so":
        if args.n is None or args.level is None:
            raise DomainError("--n and --level are required for so")
        return {"n": args.n, "k": args.level}
    if fam == "sp":
        if args.m is None or args.level is None:
            raise DomainError("--m and --level are required for sp")
        return {"m": args.m, "k": args.level}
    if fam == "g2":
        if args.level is None:
            raise DomainError("--level is required for g2")
        return {"k": args.level}
    raise DomainError(f"unknown family {fam!r}")


def _build_cat(args):
    cat = build_family(args.family, **_family_kwargs(args))
    if getattr(args, "export_category", None):
        with open(args.export_category, "w") as fh:
            fh.write(category_to_json(cat))
    return cat


def _add_family_args(p, required=True):
    p.add_argument("--family", required=required,
                   choices=["su2", "minimal", "ty", "so", "sp", "g2"])
    p.add_argument("--level", type=int, help="level k")
    p.add_argument("--M", type=int, help="Z_M size for ty")
    p.add_argument("--n", type=int, help="n for so(n)")
    p.add_argument("--m", type=int, help="m for sp(2m)")
    p.add_argument("--export-category", metavar="PATH",
                   help="also write the category JSON document here")


def _emit(args, doc, table_lines):
    if args.format == "json":
        print(json.dumps(doc, indent=1))
    else:
        for line in table_lines:
            print(line)


def _cmd_catalog(args):
    rows = catalog_rows()
    doc = {"families": rows}
    lines = [f"{r['family']:<8} params: {r['params']:<12} objects: {r['objects']:<38} "
             f"baxterisable: {r['baxterisable']}  representable: {r['representable']}"
             for r in rows]
    _emit(args, doc, lines)
    return 0


def _cmd_baxterize(args):
    cat = _build_cat(args)
    rho = cat.label_id(args.rho)
    phi = cat.label_id(args.phi)
    sol = solve_central(cat, rho, phi)
    doc = sol.to_dict()
    lines = [f"category {cat.name}  rho {args.rho}  phi {args.phi}",
             f"verdict {sol.verdict}  (reference channel {cat.display(sol.reference)})"]
    if args.mu:
        evals = []
        for mu_s in args.mu:
            mu = complex(mu_s)
            row = {"mu": _cpair(mu), "amplitudes": {}, "edge_ratios": {}}
            for ch in sol.channels:
                val = amplitude_at(sol, ch, mu)
                row["amplitudes"][cat.display(ch)] = _cpair(val)
                lines.append(f"mu={mu}: A[{cat.display(ch)}] = {val:.12g}")
            for a, b in sol.graph.edges:
                r = amplitude_at(sol, b, mu) / amplitude_at(sol, a, mu)
                row["edge_ratios"][f"{cat.display(b)}/{cat.display(a)}"] = _cpair(r)
                row["edge_ratios"][f"{cat.display(a)}/{cat.display(b)}"] = _cpair(1 / r)
                lines.append(f"mu={mu}: A[{cat.display(b)}]/A[{cat.display(a)}] = {r:.12g}")
            evals.append(row)
        doc["evaluations"] = evals
    for c in sol.cycles:
        lines.append(f"cycle {c.vertices}: residual {c.residual:.3e}")
    _emit(args, doc, lines)
    return 0 if sol.verdict != INCONSISTENT else 1


def _cmd_classify(args):
    cat = _build_cat(args)
    rows = classify_pairs(cat)
    doc = {"category": cat.name, "pairs": [
        {"rho": cat.display(r.rho), "phi": cat.display(r.phi), "verdict": r.verdict,
         "vertices": r.n_vertices, "edges": r.n_edges, "cycles": r.n_cycles}
        for r in rows]}
    lines = [f"({cat.display(r.rho)}, {cat.display(r.phi)}): {r.verdict}   "
             f"graph {r.n_vertices}v/{r.n_edges}e/{r.n_cycles}c" for r in rows]
    _emit(args, doc, lines)
    return 0


def _cmd_verify(args):
    if args.check == "loop":
        rng = np.random.default_rng(args.seed)
        q = complex(args.q)
        reports = []
        worst = 0.0
        for mu, mu2 in zip(mu_annulus(rng, args.samples), mu_annulus(rng, args.samples)):
            rep = loop_functional_check(q, mu, mu2, tol=args.tol or 1e-10)
            reports.append(rep)
            worst = max(worst, rep.max_residual)
        z1 = loop_partition_enumeration(q, 1.7, 2, 2)
        z2 = loop_partition_transfer(q, 1.7, 2, 2)
        zres = abs(z1 - z2) / max(abs(z1), 1e-300)
        passed = worst < (args.tol or 1e-10) and zres < 1e-10
        doc = {"check": "loop", "q": _cpair(q), "samples": args.samples,
               "seed": args.seed,
               "functional_max_residual": fmt_float(worst),
               "partition_2x2_relative_gap": fmt_float(zres),
               "verdict": "pass" if passed else "fail"}
        _emit(args, doc, [f"loop functional residual {worst:.3e}; "
                          f"2x2 partition gap {zres:.3e}: "
                          f"{'pass' if passed else 'fail'}"])
        return 0 if passed else 1

    if args.family is None:
        raise DomainError(f"--family is required for verify {args.check}")
    if args.rho is None:
        raise DomainError(f"--rho is required for verify {args.check}")
    cat = _build_cat(args)
    rho = cat.label_id(args.rho)
    tol = args.tol
    if args.check in ("current", "ybe", "transfer", "braid"):
        phi = cat.label_id(args.phi) if args.phi else None
        if phi is None:
            raise DomainError(f"--phi is required for verify {args.check}")
        sol = solve_central(cat, rho, phi)
        if args.check == "current":
            rep = verify_current_vertex(cat, rho, phi, sol, samples=args.samples,
                                        seed=args.seed, tol=tol or 1e-10)
        elif args.check == "ybe":
            rep = verify_ybe(cat, rho, sol, L=args.L or 3, samples=args.samples,
                             seed=args.seed, tol=tol or 1e-8)
        elif args.check == "transfer":
            rep = verify_commuting_transfer(cat, rho, sol, L=args.L or 4,
                                            samples=min(args.samples, 10),
                                            seed=args.seed, tol=tol or 1e-8)
        else:
            rep = verify_braid_limits(cat, rho, sol)
            rep2 = verify_braid_relations(cat, rho, L=args.L or 4, tol=tol or 1e-9)
            rep.checks.extend(rep2.checks)
    elif args.check == "projectors":
        rep = verify_projector_algebra(cat, rho, L=args.L or 4, tol=tol or 1e-10)
    else:
        raise DomainError(f"unknown verify target {args.check!r}")
    doc = rep.to_dict()
    _emit(args, doc, rep.summary_lines())
    return 0 if rep.passed else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="baxcat",
        description="Solve the conserved-current constraint for Boltzmann "
                    "weights from category data and verify the results.")
    ap.add_argument("--format", choices=["table", "json"], default="table")
    sub = ap.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list built-in families")
    p_cat.add_argument("action", choices=["list"])
    p_cat.set_defaults(func=_cmd_catalog)

    p_bax = sub.add_parser("baxterize", help="solve the current constraint")
    _add_family_args(p_bax)
    p_bax.add_argument("--rho", required=True)
    p_bax.add_argument("--phi", required=True)
    p_bax.add_argument("--mu", action="append", default=[],
                       help="evaluate amplitudes at this mu (repeatable; complex ok)")
    p_bax.set_defaults(func=_cmd_baxterize)

    p_cls = sub.add_parser("classify", help="verdicts for every (rho, phi) pair")
    _add_family_args(p_cls)
    p_cls.set_defaults(func=_cmd_classify)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("check",
                       choices=["ybe", "current", "braid", "projectors", "transfer", "loop"])
    _add_family_args(p_ver, required=False)
    p_ver.add_argument("--rho")
    p_ver.add_argument("--phi")
    p_ver.add_argument("--L", type=int)
    p_ver.add_argument("--samples", type=int, default=25)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float)
    p_ver.add_argument("--q", default="0.80901699437494742+0.58778525229247314j",
                       help="loop-model q (verify loop only)")
    p_ver.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CapabilityError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
