"""Command-line interface: ``colorrep <command> [flags]``.

Exit codes: 0 success, 1 validation or usage error, 2 size guard, 3 the answer is
"no representation" (or a negative entry under ``--check-nonneg``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from . import closedform, colorop, graphs, ising, limits, rcm, solver
from .errors import ColorRepError, SizeLimitError

EXIT_OK, EXIT_INVALID, EXIT_SIZE, EXIT_INFEASIBLE = 0, 1, 2, 3

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def rational(text: str) -> Fraction:
    """Exact rational from ``p/q`` or an integer; decimals are refused."""
    if not _RATIONAL.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an integer or p/q, got {text!r}")
    return Fraction(text.strip())


def subset_arg(text: str) -> tuple:
    try:
        return tuple(sorted(int(v) for v in text.split(",") if v))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}")


def load_graph(source: str) -> graphs.Graph:
    if os.path.isfile(source):
        with open(source) as fh:
            return graphs.Graph.from_json(json.load(fh))
    return graphs.preset(source)


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flat_csv(data: dict) -> str:
    rows = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, u in v.items():
                walk(f"{prefix}.{k}" if prefix else str(k), u)
        elif isinstance(v, list):
            for i, u in enumerate(v):
                walk(f"{prefix}.{i}", u)
        else:
            rows.append([prefix, v])

    walk("", data)
    return _rows_csv(["key", "value"], rows)


# -- commands ------------------------------------------------------------------------
# each returns (payload for json, csv text, exit code)

def cmd_ising_dist(a):
    nu = ising.ising_measure(load_graph(a.graph), a.x, a.y)
    data = nu.to_json()
    return data, _rows_csv(["sigma", "probability"], data.items()), EXIT_OK


def cmd_rcm_dist(a):
    mu = rcm.rcm_measure(load_graph(a.graph), a.r, a.q)
    data = mu.to_json()
    return data, _rows_csv(["partition", "probability"], data.items()), EXIT_OK


def cmd_check_colorrep(a):
    nu = ising.ising_measure(load_graph(a.graph), a.x, a.y)
    out = solver.has_color_representation(nu, reduced=a.reduced)
    data = out.to_json()
    data["p"] = str(out.problem.p)
    if out.feasible:
        body = _rows_csv(["partition", "mass"], data["witness"].items())
    else:
        labels = [str(r) if a.reduced else "".join(map(str, r)) for r in out.problem.rows]
        body = _rows_csv(["row", "certificate"], zip(labels, data["certificate"]))
    return data, body, EXIT_OK if out.feasible else EXIT_INFEASIBLE


def cmd_formal_solution(a):
    mu = colorop.formal_solution(a.n, a.x, a.y)
    profile = colorop.formal_solution_sign_profile(a.n, a.x, a.y)
    data = {
        "measure": mu.to_json(),
        "image_equals_nu": colorop.check_formal_solution(a.n, a.x, a.y) if a.n <= colorop.MAX_MATRIX_N else None,
        "sign_profile": {str(k): {"min": str(v["min"]), "sign": v["sign"]} for k, v in profile.items()},
    }
    code = EXIT_OK
    if a.check_nonneg:
        data["nonnegative"] = all(v["sign"] != "-" for v in profile.values())
        code = EXIT_OK if data["nonnegative"] else EXIT_INFEASIBLE
    return data, _rows_csv(["partition", "mass"], data["measure"].items()), code


def _shape_str(sh) -> str:
    return "+".join(map(str, sh))


def cmd_limit_system(a):
    g = load_graph(a.graph)
    sys_ = limits.limiting_system_reduced(g, a.x)
    data = {
        "rows": [
            {"S": list(s), "rhs": str(b)} for s, b in zip(sys_.rows, sys_.rhs)
        ],
        "columns": [str(c) for c in sys_.cols],
    }
    if a.solve_zeros == "auto":
        if len(g.edges) != g.n * (g.n - 1) // 2 or g.n not in (4, 5):
            raise ColorRepError("--solve-zeros auto needs the complete graph K4 or K5")
        lam = [limits.lambda_complete(g.n, a.x, k) for k in range(g.n + 1)]
        red = limits.reduced_system(g.n, lam)
        cands = []
        for zeros, vals in limits.zero_pattern_solutions(red):
            entry = {"zeros": [_shape_str(red.cols[j]) for j in zeros]}
            if vals is None:
                entry["status"] = "singular"
            else:
                entry["values"] = {_shape_str(c): str(v) for c, v in zip(red.cols, vals)}
                entry["has_negative"] = any(v < 0 for v in vals)
            cands.append(entry)
        data["candidates"] = cands
    return data, _flat_csv(data), EXIT_OK


def cmd_region_scan(a):
    grid = closedform.RegionGrid(closedform.parse_range(a.x_range), closedform.parse_range(a.y_range), a.step)
    closedform.region_scan(a.model, grid)
    data = {
        "model": a.model,
        "cells": [{"x": str(c["x"]), "y": str(c["y"]), "sign": c["sign"], "feasible": c["feasible"]} for c in grid.cells],
    }
    return data, grid.to_csv(), EXIT_OK


def cmd_rcm_limit_check(a):
    g = load_graph(a.graph)
    res = rcm.necessary_condition_residual(g, a.r, a.S)
    data = {"residual": str(res), "passes": res == 0}
    return data, _flat_csv(data), EXIT_OK


def cmd_verify_coupling(a):
    data = {"equal": rcm.coupling_check(load_graph(a.graph), a.x)}
    return data, _flat_csv(data), EXIT_OK


def cmd_identities(a):
    g = graphs.complete_graph(a.n)
    nu = ising.ising_measure(g, a.x, a.y)
    out = {"moments": {}, "sum_conversion": {}, "transitive_i": {}, "transitive_ii": {}}
    for m in range(0, min(5, a.n) + 1):
        out["moments"][str(m)] = ising.moment_identity_check(a.n, a.x, a.y, m)
    for k in range(a.n + 1):
        s = tuple(range(1, k + 1))
        lhs, rhs = ising.sum_conversion_sides(nu, s)
        out["sum_conversion"][str(k)] = lhs == rhs
        if k >= 1:
            sides = ising.transitive_identity_sides(g, a.x, s)
            out["transitive_i"][str(k)] = sides["i"][0] == sides["i"][1]
            out["transitive_ii"][str(k)] = sides["ii"][0] == sides["ii"][1]
    return out, _flat_csv(out), EXIT_OK


def build_parser() -> Parser:
    p = Parser(prog="colorrep", description="Exact color-representation computations for Ising models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("ising-dist", cmd_ising_dist, "exact Ising distribution")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--y", type=rational, default=Fraction(1))

    sp = add("rcm-dist", cmd_rcm_dist, "exact random-cluster measure")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=rational, required=True)
    sp.add_argument("--q", type=rational, default=Fraction(2))

    sp = add("check-colorrep", cmd_check_colorrep, "decide whether a color representation exists")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--y", type=rational, default=Fraction(1))
    sp.add_argument("--reduced", action="store_true", help="solve the symmetry-reduced system")

    sp = add("formal-solution", cmd_formal_solution, "explicit signed solution on K_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--y", type=rational, required=True)
    sp.add_argument("--check-nonneg", action="store_true")

    sp = add("limit-system", cmd_limit_system, "h -> 0 limiting system")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--solve-zeros", choices=("none", "auto"), default="none")

    sp = add("region-scan", cmd_region_scan, "feasibility over an (x, y) grid")
    sp.add_argument("--model", choices=("K4", "K5", "LP-K4", "LP-K5"), default="K4")
    sp.add_argument("--x-range", default="1..8")
    sp.add_argument("--y-range", default="1..8")
    sp.add_argument("--step", type=rational, default=Fraction(1, 10))

    sp = add("rcm-limit-check", cmd_rcm_limit_check, "necessary-condition residual of the random-cluster model")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=rational, required=True)
    sp.add_argument("--S", type=subset_arg, default=(1, 2, 3))

    sp = add("verify-coupling", cmd_verify_coupling, "check Φ_{1/2}(rcm) = Ising at h = 0")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--x", type=rational, required=True)

    sp = add("identities", cmd_identities, "check the K_n χ-sum identities")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--y", type=rational, default=Fraction(1))
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        data, csv_text, code = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_INVALID
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ColorRepError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = csv_text if args.format == "csv" else json.dumps(data, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
