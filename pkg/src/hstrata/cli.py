"""Command-line front end: per-diagram analysis, counting, verification.

Subcommands: dim, count, verify, asymptotics, lookup, coeffs.  Every command
builds one report dictionary and renders it as text, JSON (a single document)
or CSV (with a header row), so the three formats always carry the same
numbers.  Counts are printed as decimal strings since they outgrow fixed
width integers quickly.  The exit code is 0 exactly when no internal
cross-check failed; the JSON "status" field mirrors it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .diagrams import Diagram, DiagramParseError
from .enumeration import (
    DEFAULT_CELL_LIMIT,
    EnumerationLimitError,
    cauchon_diagrams,
    diagram_from_permutation,
    poly_bernoulli,
    tally_dimensions,
)
from .exactlinalg import (
    cycle_kernel_basis,
    in_white_kernel,
    kernel_basis,
    kernel_dim,
    perm_matrix_sum,
    to_boundary_kernel,
    to_square_kernel,
    white_adjacency_matrix,
)
from .genfunc import (
    asymptotic_proportion,
    closed_form_coeffs,
    stratum_poly,
    stratum_series,
)
from .pipedreams import (
    Permutation,
    all_black_permutation,
    cycle_decomposition,
    odd_cycle_count,
    toric_endpoint_table,
    toric_permutation,
    trace_permutation,
)

VERIFY_DEFAULT_CELLS = 9

FORMATS = ("text", "json", "csv")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except (DiagramParseError, EnumerationLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_render(report, args.format))
    return 0 if report["status"] == "ok" else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format")
    common.add_argument(
        "--max-cells",
        type=int,
        default=None,
        help="enumeration cell limit (defaults per command)",
    )
    common.add_argument(
        "--cache-dir",
        default=None,
        help="tally cache directory (overrides HSTRATA_CACHE_DIR)",
    )

    parser = argparse.ArgumentParser(
        prog="hstrata",
        description="Exact stratum dimensions of Cauchon diagrams, three ways.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="analyze one diagram file")
    p.add_argument("diagram", help="path to a '.'/'#' diagram file, or - for stdin")
    p.set_defaults(handler=_cmd_dim)

    p = sub.add_parser("count", parents=[common], help="count strata by dimension")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument(
        "--method",
        action="append",
        choices=("enum", "formula", "series"),
        help="counting method; may be repeated, methods are cross-checked",
    )
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("asymptotics", parents=[common], help="ratio table against the limit")
    p.add_argument("m", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(handler=_cmd_asymptotics)

    p = sub.add_parser("lookup", parents=[common], help="diagram for a restricted permutation")
    p.add_argument("permutation", help="one-line images, e.g. '[3,4,1,2]'")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_lookup)

    p = sub.add_parser("coeffs", parents=[common], help="closed-form coefficients c_k")
    p.add_argument("m", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(handler=_cmd_coeffs)

    return parser


# ---------------------------------------------------------------- commands


def _cmd_dim(args) -> dict:
    if args.diagram == "-":
        text = sys.stdin.read()
    else:
        with open(args.diagram) as handle:
            text = handle.read()
    d = Diagram.parse(text)
    lab = d.white_labeling()
    sigma = trace_permutation(d)
    tau = toric_permutation(d)
    decomp = cycle_decomposition(tau)
    odd = odd_cycle_count(decomp)
    kdim = kernel_dim(white_adjacency_matrix(d, lab))
    pp_dim = kernel_dim(perm_matrix_sum(sigma, all_black_permutation(d.m, d.n)))
    agree = odd == kdim == pp_dim
    cauchon = d.is_cauchon()
    report = {
        "command": "dim",
        "m": d.m,
        "n": d.n,
        "cauchon": cauchon,
        "white_squares": lab.count,
        "sigma": sigma.one_line(),
        "sigma_cycles": sigma.cycle_string(),
        "tau": tau.one_line(),
        "tau_cycles": str(decomp),
        "cycle_lengths": list(decomp.lengths()),
        "odd_cycles": odd,
        "kernel_dim": kdim,
        "boundary_kernel_dim": pp_dim,
        "dimension": odd,
        "agree": agree,
        "warning": "" if cauchon else "diagram is not Cauchon; the value is not a stratum dimension",
        "status": "ok" if agree else "fail",
    }
    return report


def _method_counts(m: int, n: int, method: str, args) -> dict[int, int]:
    if method == "enum":
        limit = args.max_cells if args.max_cells is not None else DEFAULT_CELL_LIMIT
        return dict(tally_dimensions(m, n, max_cells=limit, cache_dir=args.cache_dir).counts)
    if method == "formula":
        poly = stratum_poly(m, n)
        return {d: int(poly.coeff(d)) for d in range(poly.degree + 1) if poly.coeff(d)}
    series = stratum_series(max(m, 1), max(n, 1))
    poly = series.egf_coeff(m, n)
    return {d: int(poly.coeff(d)) for d in range(poly.degree + 1) if poly.coeff(d)}


def _cmd_count(args) -> dict:
    methods = args.method or ["formula"]
    if args.m < 1 or args.n < 1:
        raise ValueError("m and n must be positive")
    counts = {meth: _method_counts(args.m, args.n, meth, args) for meth in methods}
    first = counts[methods[0]]
    agree = all(counts[meth] == first for meth in methods)
    return {
        "command": "count",
        "m": args.m,
        "n": args.n,
        "methods": methods,
        "counts": {meth: {str(d): str(c) for d, c in sorted(cs.items())} for meth, cs in counts.items()},
        "totals": {meth: str(sum(cs.values())) for meth, cs in counts.items()},
        "agree": agree,
        "status": "ok" if agree else "fail",
    }


def run_verify(max_cells: int, inject_fault: bool = False) -> dict:
    """Cross-check suite over every Cauchon diagram with m*n <= max_cells.

    Checks, per diagram: the white matrix is skew-symmetric; the odd-cycle
    count equals both kernel dimensions; the endpoint gluing identity for
    consecutive white squares; the two kernel maps compose to -2 times the
    identity on both kernel bases and land in the asserted kernels.  Per
    shape: the enumerated tally matches the closed form and the total count
    matches the poly-Bernoulli value.  inject_fault flips one sign in one
    matrix to demonstrate the suite's sensitivity.
    """
    checks = {
        name: {"checked": 0, "failures": 0}
        for name in (
            "skew_symmetry",
            "dimension_equality",
            "gluing_identity",
            "iso_maps",
            "tally_vs_formula",
        )
    }

    def record(name: str, ok: bool) -> None:
        checks[name]["checked"] += 1
        if not ok:
            checks[name]["failures"] += 1

    shapes = [
        (m, n)
        for m in range(1, max_cells + 1)
        for n in range(1, max_cells // m + 1)
    ]
    fault_pending = inject_fault
    diagrams = 0
    for m, n in shapes:
        tally: dict[int, int] = {}
        for d in cauchon_diagrams(m, n, max_cells=max_cells):
            diagrams += 1
            lab = d.white_labeling()
            mat = white_adjacency_matrix(d, lab)
            if fault_pending and lab.count >= 2:
                mat = mat.with_entry(0, 1, -mat.entry(0, 1))
                fault_pending = False
            record("skew_symmetry", mat.is_skew_symmetric())

            tau = toric_permutation(d)
            decomp = cycle_decomposition(tau)
            odd = odd_cycle_count(decomp)
            kdim = kernel_dim(mat)
            pp = perm_matrix_sum(trace_permutation(d), all_black_permutation(m, n))
            record("dimension_equality", odd == kdim == kernel_dim(pp))
            tally[odd] = tally.get(odd, 0) + 1

            endpoints = toric_endpoint_table(d, lab)
            glue_ok = True
            for i, (r, c) in enumerate(lab.positions):
                next_c = _next_white(d, r, c, "right")
                if next_c is not None:
                    j = lab.label_at(r, next_c)
                    glue_ok &= endpoints[i].top == endpoints[j - 1].left
                next_r = _next_white(d, r, c, "up")
                if next_r is not None:
                    j = lab.label_at(next_r, c)
                    glue_ok &= endpoints[i].top == endpoints[j - 1].left
            record("gluing_identity", glue_ok)

            iso_ok = True
            try:
                for v in cycle_kernel_basis(decomp):
                    w = to_square_kernel(d, lab, v)
                    iso_ok &= in_white_kernel(d, lab, w)
                    iso_ok &= to_boundary_kernel(d, lab, w) == tuple(-2 * x for x in v)
                for w in kernel_basis(mat):
                    v = to_boundary_kernel(d, lab, w)
                    iso_ok &= all(x == 0 for x in pp.matvec(v))
                    iso_ok &= to_square_kernel(d, lab, v) == tuple(-2 * x for x in w)
            except ValueError:
                iso_ok = False
            record("iso_maps", iso_ok)

        poly = stratum_poly(m, n)
        formula_tally = {
            dd: int(poly.coeff(dd)) for dd in range(poly.degree + 1) if poly.coeff(dd)
        }
        record(
            "tally_vs_formula",
            tally == formula_tally and sum(tally.values()) == poly_bernoulli(m, n),
        )

    failures = sum(c["failures"] for c in checks.values())
    return {
        "command": "verify",
        "max_cells": max_cells,
        "shapes": len(shapes),
        "diagrams": diagrams,
        "checks": checks,
        "failures": failures,
        "status": "ok" if failures == 0 else "fail",
    }


def _next_white(d: Diagram, r: int, c: int, direction: str) -> int | None:
    """Next white square's moving coordinate, rightward or upward, if any."""
    if direction == "right":
        for cc in range(c + 1, d.n + 1):
            if d.is_white(r, cc):
                return cc
    else:
        for rr in range(r - 1, 0, -1):
            if d.is_white(rr, c):
                return rr
    return None


def _cmd_verify(args) -> dict:
    limit = args.max_cells if args.max_cells is not None else VERIFY_DEFAULT_CELLS
    if limit > DEFAULT_CELL_LIMIT:
        raise ValueError(f"--max-cells capped at {DEFAULT_CELL_LIMIT} for verify")
    return run_verify(limit, inject_fault=args.inject_fault)


def _cmd_asymptotics(args) -> dict:
    m, d = args.m, args.d
    if not 0 <= d <= m:
        raise ValueError("need 0 <= d <= m")
    if args.n_max < 1:
        raise ValueError("--n-max must be at least 1")
    limit = asymptotic_proportion(m, d)
    cf = closed_form_coeffs(m, d)
    rows = []
    for n in range(1, args.n_max + 1):
        count = cf.evaluate(n)
        total = poly_bernoulli(m, n)
        ratio = Fraction(count, total)
        gap = abs(ratio - limit)
        rows.append(
            {
                "n": n,
                "count": str(count),
                "total": str(total),
                "ratio": str(ratio),
                "ratio_approx": float(ratio),
                "gap": str(gap),
                "gap_approx": float(gap),
            }
        )
    return {
        "command": "asymptotics",
        "m": m,
        "d": d,
        "n_max": args.n_max,
        "limit": str(limit),
        "limit_approx": float(limit),
        "rows": rows,
        "status": "ok",
    }


def _cmd_lookup(args) -> dict:
    perm = Permutation.from_one_line(args.permutation)
    limit = args.max_cells if args.max_cells is not None else DEFAULT_CELL_LIMIT
    found = diagram_from_permutation(perm, args.m, args.n, max_cells=limit)
    return {
        "command": "lookup",
        "m": args.m,
        "n": args.n,
        "permutation": perm.one_line(),
        "found": found is not None,
        "diagram": found.serialize() if found is not None else None,
        "status": "ok",
    }


def _cmd_coeffs(args) -> dict:
    cf = closed_form_coeffs(args.m, args.d)
    data = cf.to_json_dict()
    return {
        "command": "coeffs",
        "m": data["m"],
        "d": data["d"],
        "coeffs": data["coeffs"],
        "formula": str(cf),
        "status": "ok",
    }


# ---------------------------------------------------------------- rendering


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "csv":
        return _render_csv(report)
    return _render_text(report)


def _csv_string(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _render_csv(report: dict) -> str:
    cmd = report["command"]
    if cmd == "count":
        methods = report["methods"]
        dims = sorted({int(k) for cs in report["counts"].values() for k in cs})
        rows = [["dimension"] + methods]
        for dd in dims:
            rows.append([dd] + [report["counts"][meth].get(str(dd), "0") for meth in methods])
        rows.append(["total"] + [report["totals"][meth] for meth in methods])
        return _csv_string(rows)
    if cmd == "verify":
        rows = [["check", "checked", "failures"]]
        for name, c in report["checks"].items():
            rows.append([name, c["checked"], c["failures"]])
        rows.append(["total", report["diagrams"], report["failures"]])
        return _csv_string(rows)
    if cmd == "asymptotics":
        cols = ["n", "count", "total", "ratio", "ratio_approx", "gap", "gap_approx"]
        rows = [cols] + [[row[c] for c in cols] for row in report["rows"]]
        return _csv_string(rows)
    if cmd == "coeffs":
        rows = [["k", "coefficient"]]
        for k, c in report["coeffs"].items():
            rows.append([k, c])
        return _csv_string(rows)
    # dim, lookup: one record
    keys = [k for k in report if k != "command"]
    values = []
    for k in keys:
        v = report[k]
        if isinstance(v, list):
            v = ";".join(str(x) for x in v)
        values.append(v)
    return _csv_string([keys, values])


def _render_text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if cmd == "dim":
        order = (
            "m",
            "n",
            "cauchon",
            "white_squares",
            "sigma",
            "sigma_cycles",
            "tau",
            "tau_cycles",
            "cycle_lengths",
            "odd_cycles",
            "kernel_dim",
            "boundary_kernel_dim",
            "dimension",
            "agree",
        )
        for k in order:
            v = report[k]
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            lines.append(f"{k}: {v}")
        if report["warning"]:
            lines.append(f"warning: {report['warning']}")
        lines.append(f"status: {report['status']}")
    elif cmd == "count":
        methods = report["methods"]
        lines.append(f"strata of a {report['m']}x{report['n']} grid by dimension")
        lines.append("dimension  " + "  ".join(f"{meth:>12}" for meth in methods))
        dims = sorted({int(k) for cs in report["counts"].values() for k in cs})
        for dd in dims:
            cells = "  ".join(f"{report['counts'][meth].get(str(dd), '0'):>12}" for meth in methods)
            lines.append(f"{dd:>9}  {cells}")
        lines.append(
            "    total  " + "  ".join(f"{report['totals'][meth]:>12}" for meth in methods)
        )
        lines.append(f"agree: {report['agree']}")
        lines.append(f"status: {report['status']}")
    elif cmd == "verify":
        lines.append(
            f"verified {report['diagrams']} diagrams across {report['shapes']} shapes "
            f"(cells <= {report['max_cells']})"
        )
        for name, c in report["checks"].items():
            lines.append(f"{name}: {c['checked']} checked, {c['failures']} failures")
        lines.append(f"status: {report['status']}")
    elif cmd == "asymptotics":
        lines.append(
            f"m={report['m']} d={report['d']}  limit {report['limit']} "
            f"(~{report['limit_approx']:.6f})"
        )
        lines.append(f"{'n':>4}  {'count':>14}  {'total':>14}  {'ratio':>10}  {'gap':>12}")
        for row in report["rows"]:
            lines.append(
                f"{row['n']:>4}  {row['count']:>14}  {row['total']:>14}  "
                f"{row['ratio_approx']:>10.6f}  {row['gap_approx']:>12.3e}"
            )
        lines.append(f"status: {report['status']}")
    elif cmd == "lookup":
        if report["found"]:
            lines.append(report["diagram"])
        else:
            lines.append("not-found")
        lines.append(f"status: {report['status']}")
    elif cmd == "coeffs":
        lines.append(report["formula"])
        for k, c in report["coeffs"].items():
            lines.append(f"c[{k}] = {c}")
        lines.append(f"status: {report['status']}")
    else:  # pragma: no cover
        lines.append(json.dumps(report))
    return "\n".join(lines)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
