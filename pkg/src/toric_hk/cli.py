"""``toric-hk``: command-line front end.

Subcommands ``density``, ``count``, ``converge``, ``ehrhart`` and ``segre``.
A spec argument is a JSON file, a JSON literal or builtin shorthand such as
``hirzebruch(1,2,1)``.  JSON reports carry ``"schema": "hk-beta/1"`` and write
rationals as reduced ``"p/q"`` strings.

Exit codes: 0 success, 2 invalid spec, 3 unsupported dimension.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import catalog
from .catalog import SpecError
from .counting import count_slice, count_table
from .convergence import (
    convergence_rows,
    fitted_orders,
    max_errors,
    near_breakpoint,
    uniform_grid,
)
from .density import (
    PiecewisePolynomial,
    UnsupportedDimensionError,
    density_report,
    hilbert_density,
    piecewise_fit,
    poly_add,
    poly_mul,
    product_pair,
    segre_g,
)
from .ehrhart import (
    cell_constancy_check,
    chamber_lines,
    ehrhart_qp,
    minkowski_count,
    reciprocity_check,
    slice_coefficient_scan,
)

SCHEMA = "hk-beta/1"
EXIT_SPEC = 2
EXIT_DIM = 3


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pp_doc(pp: PiecewisePolynomial, with_float: bool = False) -> dict:
    doc: dict[str, Any] = {
        "breakpoints": [rat(b) for b in pp.breakpoints],
        "pieces": [[rat(c) for c in p] for p in pp.pieces],
    }
    if with_float:
        doc["pieces_approx"] = [[float(c) for c in p] for p in pp.pieces]
    return doc


def _emit_json(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def _parse_rational_list(text: str) -> list[Fraction]:
    return [_parse_rational(x) for x in text.split(",") if x.strip()]


def _pair(text: str):
    spec = catalog.load_spec(text)
    return spec, catalog.pair_from_spec(spec)


def _header(command: str, spec: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "spec": catalog.canonical_spec(spec)}


# ------------------------------------------------------------------ commands
def cmd_density(args, out) -> int:
    spec, pair = _pair(args.spec)
    rep = density_report(pair)
    H = hilbert_density(pair)
    doc = _header("density", spec)
    doc.update({
        "d": pair.d,
        "e_hk": rat(rep.e_hk),
        "beta": rat(rep.beta),
        "breakpoints": [rat(b) for b in rep.breakpoints],
        "discontinuities": [rat(b) for b in rep.discontinuities],
        "degrees": {"f": list(rep.f.degrees), "g": list(rep.g.degrees)},
        "f": pp_doc(rep.f, args.float),
        "g": pp_doc(rep.g, args.float),
        "hilbert": {"e0": rat(H.e0), "e1": rat(H.e1)},
    })
    if args.float:
        doc["approx"] = {"e_hk": float(rep.e_hk), "beta": float(rep.beta)}
    _emit_json(doc, out)
    return 0


def cmd_count(args, out) -> int:
    spec, pair = _pair(args.spec)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["q", "m", "count"])
    for q in sorted(args.q):
        if q < 1:
            raise SpecError("q must be a positive integer")
        if args.all:
            table = count_table(pair, q, threads=args.threads, strict=args.strict)
            for m in sorted(table.per_degree):
                w.writerow([q, m, table.per_degree[m]])
        else:
            for m in sorted(args.m):
                w.writerow([q, m, count_slice(pair, q, m)])
    return 0


def cmd_converge(args, out) -> int:
    spec, pair = _pair(args.spec)
    rep = density_report(pair)
    end = rep.breakpoints[-1] if rep.breakpoints else Fraction(0)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["lambda", "f", "g", "f_n", "g_n", "q"])
    grid = []
    for lam in uniform_grid(end, args.grid):
        b = near_breakpoint(lam, rep.breakpoints, args.margin)
        if b is None:
            grid.append(lam)
        else:
            out.write(f"# warning: dropped lambda={rat(lam)} within {rat(args.margin)} of breakpoint {rat(b)}\n")
    rows = convergence_rows(pair, rep, sorted(args.q_list), grid, threads=args.threads)
    for r in rows:
        w.writerow([rat(r.lam), rat(r.f), rat(r.g), rat(r.f_n), rat(r.g_n), r.q])
    if not rows:
        return 0
    errs = max_errors(rows)
    orders = fitted_orders({q: e[1] for q, e in errs.items()})
    out.write("\n")
    w.writerow(["summary_q", "max_f_error", "max_g_error", "g_order_approx"])
    for q in sorted(errs):
        o = orders.get(q)
        w.writerow([q, rat(errs[q][0]), rat(errs[q][1]), "" if o is None else f"{o:.4f}"])
    return 0


def cmd_ehrhart(args, out) -> int:
    spec = catalog.load_spec(args.spec)
    P = catalog.polytope_from_spec(spec)
    if P.is_empty:
        raise SpecError("empty polytope")
    if P.ambient_dim > 4:
        raise UnsupportedDimensionError("ehrhart routines support ambient dimension <= 4")
    doc = _header("ehrhart", spec)
    doc["mode"] = args.mode
    if args.mode == "qp":
        qp = ehrhart_qp(P)
        doc.update({
            "degree": qp.degree,
            "period": qp.period,
            "coefficients": {str(r): [rat(c) for c in qp.coefficients[r]] for r in sorted(qp.coefficients)},
            "relative_volume": rat(P.relative_volume()) if P.dim >= 0 else None,
        })
    elif args.mode == "reciprocity":
        rep = reciprocity_check(P, args.n_max)
        doc.update({
            "checked": rep.checked,
            "violations": [{"n": n, "interior": c, "predicted": rat(p)} for n, c, p in rep.violations],
        })
    elif args.mode in ("minkowski", "chambers"):
        if not args.other:
            raise SpecError(f"--other is required for mode {args.mode}")
        other = catalog.polytope_from_spec(catalog.load_spec(args.other))
        if other.ambient_dim != P.ambient_dim:
            raise SpecError("polytopes live in different dimensions")
        doc["other"] = catalog.canonical_spec(catalog.load_spec(args.other))
        if args.mode == "minkowski":
            doc.update({"r1": rat(args.r1), "r2": rat(args.r2),
                        "count": minkowski_count(P, other, args.r1, args.r2)})
        else:
            lines = chamber_lines(P, other)
            rep = cell_constancy_check(P, other, samples=args.samples, seed=args.seed)
            doc.update({
                "lines": [{"j": ln.j, "normal": list(ln.normal), "z": list(ln.z),
                           "h1": rat(ln.h1), "h2": rat(ln.h2), "rhs": ln.rhs} for ln in lines],
                "samples": rep.samples,
                "cells": rep.cells,
                "violations": len(rep.violations),
            })
    elif args.mode == "slice-scan":
        rep = slice_coefficient_scan(P, args.lambdas, args.n_max)
        doc.update({
            "max_abs_coefficient": rat(rep.max_abs),
            "top_constant": {rat(k): v for k, v in rep.top_constant.items()},
            "table": {rat(lam): {str(n): [rat(c) for c in row] for n, row in rows.items()}
                      for lam, rows in rep.table.items()},
        })
    _emit_json(doc, out)
    return 0


def segre_document(spec_a: dict, spec_b: dict) -> dict:
    A, B = catalog.pair_from_spec(spec_a), catalog.pair_from_spec(spec_b)
    if A.d < 2 or B.d < 2:
        raise SpecError("Segre factors need d >= 2")
    HA, HB = hilbert_density(A), hilbert_density(B)
    formula = segre_g(piecewise_fit(A, "f"), piecewise_fit(A, "g"), HA,
                      piecewise_fit(B, "f"), piecewise_fit(B, "g"), HB)
    G_expanded = poly_add(poly_mul(HA.G, HB.F), poly_mul(HB.G, HA.F))
    pair = product_pair(A, B)
    HP = hilbert_density(pair)
    doc = {
        "schema": SCHEMA,
        "command": "segre",
        "spec_a": catalog.canonical_spec(spec_a),
        "spec_b": catalog.canonical_spec(spec_b),
        "d": pair.d,
        "formula_g": pp_doc(formula),
        "e1": {"direct": rat(HP.e1), "formula": rat(G_expanded[-1]) if G_expanded else "0/1"},
        "e1_equal": HP.G == G_expanded,
    }
    if pair.d > 4:
        doc.update({"direct_g": None, "direct": None, "equal": None})
        return doc
    direct = piecewise_fit(pair, "g")
    doc.update({"direct_g": pp_doc(direct), "equal": direct == formula})
    return doc


def cmd_segre(args, out) -> int:
    _emit_json(segre_document(catalog.load_spec(args.spec_a), catalog.load_spec(args.spec_b)), out)
    return 0


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-hk", description="Hilbert-Kunz and beta densities of toric pairs.")
    p.add_argument("--threads", type=int, default=None,
                   help="counting threads (default: available cores; results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="exact f, g, e_HK and beta as JSON")
    d.add_argument("spec")
    d.add_argument("--float", action="store_true", help="also emit approximate doubles")
    d.set_defaults(fn=cmd_density)

    c = sub.add_parser("count", help="degree counts of the q-dilated region as CSV")
    c.add_argument("spec")
    c.add_argument("--q", type=_parse_int_list, required=True, help="q or comma-separated list")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=_parse_int_list, help="degree or comma-separated list")
    g.add_argument("--all", action="store_true", help="every nonzero degree")
    c.add_argument("--strict", action="store_true", help="reject q that is not a prime power")
    c.set_defaults(fn=cmd_count)

    v = sub.add_parser("converge", help="f_n, g_n against f, g on a lambda grid as CSV")
    v.add_argument("spec")
    v.add_argument("--q-list", type=_parse_int_list, default=[16, 32, 64])
    v.add_argument("--grid", type=int, default=40, help="number of equally spaced grid points")
    v.add_argument("--margin", type=_parse_rational, default=Fraction(1, 64))
    v.set_defaults(fn=cmd_converge)

    e = sub.add_parser("ehrhart", help="Ehrhart quasi-polynomial tools as JSON")
    e.add_argument("spec")
    e.add_argument("--mode", choices=["qp", "reciprocity", "minkowski", "slice-scan", "chambers"], default="qp")
    e.add_argument("--other", help="second polytope (minkowski, chambers)")
    e.add_argument("--r1", type=_parse_rational, default=Fraction(1))
    e.add_argument("--r2", type=_parse_rational, default=Fraction(1))
    e.add_argument("--n-max", type=int, default=20)
    e.add_argument("--lambdas", type=_parse_rational_list, default=[Fraction(1, 2)])
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--seed", type=int, default=0)
    e.set_defaults(fn=cmd_ehrhart)

    s = sub.add_parser("segre", help="beta-density of a Segre product, directly and by formula")
    s.add_argument("spec_a")
    s.add_argument("spec_b")
    s.set_defaults(fn=cmd_segre)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return args.fn(args, out)
    except UnsupportedDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except SpecError as exc:
        print(f"error: invalid spec: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
