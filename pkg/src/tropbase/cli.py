"""Batch front end: parse ideal files, run the pipeline, emit JSON reports.

Exit codes: 0 on success, 1 when a computation-level assertion fails
(non-principal elimination, exhausted retries), 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .arith import PAdicField, RationalFunctionField
from .groebner import WorkBudgetError
from .newton import DegreeError, ShapeError, enumerate_Qn, qn_image, \
    sylvester_resultant
from .poly import ParseError, PolyRing, Polynomial, parse_polynomial, to_str
from .projection import (EliminationError, ProjectionSpec, RetryBudgetError,
                         compute_tropical_basis, project_hypersurface)
from .tropical import (UnsupportedDimensionError, circuits_linear,
                       extend_point, hypersurface_cells, intersection_complex,
                       member_of_intersection, one_skeleton, tropicalize)

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


class IdealFileError(ValueError):
    pass


# ---------------------------------------------------------------------------
# ideal files

def parse_ideal_file(path):
    """Read a header (vars, field) plus one polynomial per line.

    Returns (ring, generators).  Errors carry the offending line number.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise IdealFileError(f"cannot read {path}: {exc}") from exc
    variables = None
    field = None
    gens = []
    ring = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            if variables is not None:
                raise IdealFileError(f"line {lineno}: duplicate vars header")
            variables = tuple(v.strip() for v in line[5:].split(",")
                              if v.strip())
            if not variables:
                raise IdealFileError(f"line {lineno}: empty variable list")
            continue
        if line.startswith("field:"):
            if field is not None:
                raise IdealFileError(f"line {lineno}: duplicate field header")
            field = _parse_field(line[6:].strip(), lineno)
            continue
        if variables is None or field is None:
            raise IdealFileError(
                f"line {lineno}: polynomial before vars/field headers")
        if ring is None:
            ring = PolyRing(variables, field)
        try:
            p = parse_polynomial(ring, line, line_offset=lineno)
        except ParseError as exc:
            raise IdealFileError(str(exc)) from exc
        if not p:
            raise IdealFileError(f"line {lineno}: zero polynomial")
        gens.append(p)
    if variables is None or field is None:
        raise IdealFileError("missing vars/field headers")
    if not gens:
        raise IdealFileError("no polynomials in file body")
    return ring, gens


def _parse_field(text, lineno):
    parts = text.split()
    if not parts:
        raise IdealFileError(f"line {lineno}: empty field spec")
    head = parts[0]
    if head in ("Q(t)", "Qt"):
        return RationalFunctionField()
    if head == "Q":
        for part in parts[1:]:
            if part.startswith("p="):
                try:
                    return PAdicField(int(part[2:]))
                except ValueError as exc:
                    raise IdealFileError(
                        f"line {lineno}: bad prime ({exc})") from exc
        raise IdealFileError(f"line {lineno}: field Q needs p=<prime>")
    raise IdealFileError(f"line {lineno}: unknown field {head!r}")


def _field_json(field):
    if isinstance(field, PAdicField):
        return {"kind": "padic", "p": field.p}
    return {"kind": "laurent", "var": field.scalar_symbol}


# ---------------------------------------------------------------------------
# small parsers for option payloads

def parse_kernel_list(text, expect_empty_ok=True):
    """Semicolon-separated integer tuples like "(0,0,1);(1,2,0)"."""
    kernels = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk.startswith("(") or not chunk.endswith(")"):
            raise UsageError(f"kernel tuple {chunk!r} must be parenthesized")
        inner = chunk[1:-1].strip()
        if not inner:
            kernels.append(())
            continue
        try:
            kernels.append(tuple(int(x.strip()) for x in inner.split(",")))
        except ValueError as exc:
            raise UsageError(f"bad kernel tuple {chunk!r}") from exc
    if not kernels:
        raise UsageError("empty kernel list")
    return kernels


def parse_point(text):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point {text!r}") from exc


def _frac_str(x):
    return str(Fraction(x))


def _emit(doc, args):
    payload = {"schema": SCHEMA_VERSION}
    payload.update(doc)
    if getattr(args, "timings", False):
        payload["timings"] = {"total_s": round(time.monotonic()
                                               - args._t0, 6)}
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_basis(args):
    ring, gens = parse_ideal_file(args.file)
    kernels = None
    seed = args.seed
    if args.kernels:
        kernels = [(k,) if k else () for k in parse_kernel_list(args.kernels)]
    elif seed is None:
        env = os.environ.get("TROPBASE_SEED")
        seed = int(env) if env else 0
    try:
        report = compute_tropical_basis(
            gens, kernels=kernels, seed=seed or 0, bound=args.bound,
            dimension=args.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "command": "basis",
        "field": _field_json(ring.field),
        "variables": list(ring.variables),
        "generators": [to_str(g) for g in report.generators],
        "dimension": report.dimension,
        "codimension": report.codimension,
        "seed": report.seed,
        "bound": report.bound,
        "cardinality": {
            "expected": len(report.generators) + report.codimension + 1,
            "actual": report.cardinality,
        },
        "basis": [to_str(g) for g in report.basis],
        "projections": [
            {
                "kernel": [list(row) for row in o.spec.kernel],
                "generator": to_str(o.generator),
                "attempts": o.attempts,
                "checks": {
                    "membership": o.membership_ok,
                    "kernel_homogeneity": o.homogeneity_ok,
                    "homogeneity_values": [_frac_str(v)
                                           for v in o.homogeneity_values],
                    "algebraic_regularity": {
                        "ok": o.regularity.ok,
                        "enforced": o.regularity_enforced,
                        "witness": None if o.regularity.witness is None else {
                            "generator": o.regularity.witness.generator_index,
                            "kernel_row": o.regularity.witness.kernel_row,
                            "alpha": list(o.regularity.witness.alpha),
                            "beta": list(o.regularity.witness.beta),
                        },
                    },
                },
            }
            for o in report.outcomes
        ],
        "warnings": list(report.warnings),
    }
    _emit(doc, args)
    return 0


def _cmd_member(args):
    ring, gens = parse_ideal_file(args.file)
    point = parse_point(args.point)
    if len(point) != ring.arity:
        raise UsageError(f"point has {len(point)} coordinates, "
                         f"ring has {ring.arity}")
    forms = [tropicalize(g) for g in gens]
    _emit({
        "command": "member",
        "point": [_frac_str(x) for x in point],
        "member": member_of_intersection(forms, point),
    }, args)
    return 0


def _cell_json(cell):
    def con_json(con):
        coeffs, rhs, rel = con
        return {"coeffs": [_frac_str(c) for c in coeffs],
                "rhs": _frac_str(rhs), "rel": rel}
    return {
        "dim": cell.dim,
        "defining_pairs": [
            {"form": fi, "alpha": list(a), "beta": list(b)}
            for fi, a, b in cell.defining_pairs],
        "equalities": [con_json(c) for c in cell.equalities],
        "inequalities": [con_json(c) for c in cell.inequalities],
    }


def _skeleton_json(items):
    out = []
    for item in items:
        entry = {"type": item["type"]}
        for key in ("at", "base", "dir"):
            if key in item:
                entry[key] = [_frac_str(x) for x in item[key]]
        if "ends" in item:
            entry["ends"] = [[_frac_str(x) for x in end]
                             for end in item["ends"]]
        out.append(entry)
    return out


def _cmd_cells(args):
    ring, gens = parse_ideal_file(args.file)
    forms = [tropicalize(g) for g in gens]
    if len(forms) == 1:
        complex_ = hypersurface_cells(forms[0])
    else:
        complex_ = intersection_complex(forms)
    doc = {
        "command": "cells",
        "variables": list(ring.variables),
        "cells": [_cell_json(c) for c in complex_.cells],
    }
    if args.emit_segments:
        doc["segments"] = _skeleton_json(one_skeleton(complex_))
    _emit(doc, args)
    return 0


def _cmd_project(args):
    ring, gens = parse_ideal_file(args.file)
    rows = parse_kernel_list(args.kernel)
    rows = [r for r in rows if r]
    spec = ProjectionSpec(tuple(rows), ring.arity)
    g = project_hypersurface(gens, spec)
    _emit({
        "command": "project",
        "kernel": [list(r) for r in spec.kernel],
        "generator": to_str(g),
    }, args)
    return 0


def _cmd_resultant(args):
    ring, gens = parse_ideal_file(args.file)
    if len(gens) != 2:
        raise UsageError("resultant needs a file with exactly two "
                         "polynomials")
    if args.var not in ring.variables:
        raise UsageError(f"unknown variable {args.var!r}")
    res = sylvester_resultant(gens[0], gens[1], args.var)
    _emit({
        "command": "resultant",
        "variable": args.var,
        "resultant": to_str(res),
    }, args)
    return 0


def _cmd_qn(args):
    try:
        v = tuple(int(x.strip()) for x in args.v.split(","))
    except ValueError as exc:
        raise UsageError(f"bad exponent vector {args.v!r}") from exc
    try:
        points = enumerate_Qn(v)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    image = sorted(qn_image(points, len(v)))
    _emit({
        "command": "qn",
        "v": list(v),
        "points": [{"p": list(pt.p), "q": list(pt.q)} for pt in points],
        "image": [list(x) for x in image],
    }, args)
    return 0


def _cmd_extend(args):
    ring, gens = parse_ideal_file(args.file)
    w = parse_point(args.w)
    if len(w) != ring.arity - 1:
        raise UsageError("the point must cover every variable except the "
                         "first one")
    forms = [tropicalize(g) for g in gens]
    feasible = extend_point(forms, w)
    _emit({
        "command": "extend",
        "extends": ring.variables[0],
        "w": [_frac_str(x) for x in w],
        "intervals": [
            [None if iv.lo is None else _frac_str(iv.lo),
             None if iv.hi is None else _frac_str(iv.hi)]
            for iv in feasible.intervals],
        "nonempty": not feasible.is_empty(),
    }, args)
    return 0


def _cmd_oracle_linear(args):
    ring, gens = parse_ideal_file(args.file)
    try:
        circuits = circuits_linear(gens)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit({
        "command": "oracle-linear",
        "circuits": [to_str(c) for c in circuits],
    }, args)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropbase",
        description="Short tropical bases of prime ideals via regular "
                    "projections, with exact min-plus utilities.")
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report "
                             "(breaks byte-for-byte reproducibility)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="compute a short tropical basis")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--kernels", default=None,
                   help='explicit kernels, e.g. "(0,0,1);(1,2,0);(1,0,1)"')
    p.add_argument("--dim", type=int, default=None,
                   help="override the computed ideal dimension")
    p.add_argument("--bound", type=int, default=10,
                   help="entry range for random kernels")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("member", help="membership in the intersection of "
                                      "the file's tropical hypersurfaces")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("cells", help="polyhedral cells (arity <= 3)")
    p.add_argument("file")
    p.add_argument("--emit-segments", action="store_true")
    p.set_defaults(func=_cmd_cells)

    p = sub.add_parser("project", help="single-projection eliminant")
    p.add_argument("file")
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("resultant", help="Sylvester resultant of two "
                                         "polynomials")
    p.add_argument("file")
    p.add_argument("--var", required=True)
    p.set_defaults(func=_cmd_resultant)

    p = sub.add_parser("qn", help="lattice-point bound for staggered "
                                  "linear forms")
    p.add_argument("--v", required=True)
    p.set_defaults(func=_cmd_qn)

    p = sub.add_parser("extend", help="feasible first coordinates over a "
                                      "partial point")
    p.add_argument("file")
    p.add_argument("--w", required=True)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("oracle-linear", help="circuits of a linear ideal")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle_linear)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.monotonic()
    try:
        return args.func(args)
    except (UsageError, IdealFileError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EliminationError, RetryBudgetError, WorkBudgetError,
            UnsupportedDimensionError, DegreeError, ShapeError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
