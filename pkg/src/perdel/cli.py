"""Command-line interface: exact periodic Delaunay and stratum toolkit.

Every subcommand reads and writes canonical JSON (sorted keys, rationals in
"p/q" form) so identical inputs give byte-identical outputs.  Domain errors
exit with status 1 and a machine-readable {"error": ..., "detail": ...} on
stderr; malformed input exits with status 2.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import catalog as cat
from .decomposition import PeriodicDecomposition
from .delaunay import delaunay_decomposition
from .errors import InputFormatError, PerdelError
from .graphs import DualGraph, named_graphs, stable_corpus, torelli_report
from .io import canonical_dumps, form_from_json, form_to_json, load_json
from .moment import WeightedSupport, moment_point
from .rationals import format_rational, parse_rational
from .seccone import et_detect, secondary_cone
from .sheaf import h0_general, h0_pullback, h0_simplicial
from .svg import render_decomposition


def _emit(text, out_path):
    if out_path and out_path != "-":
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_decomp(path):
    return PeriodicDecomposition.from_json(load_json(path))


def _long_tests_enabled(args):
    return bool(getattr(args, "long_tests", False)
                or os.environ.get("PERDEL_LONG_TESTS") == "1")


def _cmd_delaunay(args):
    q = form_from_json(load_json(args.form))
    decomp = delaunay_decomposition(q, window_scale=args.window_scale)
    include_walls = len(decomp.cells) <= 200 or _long_tests_enabled(args)
    _emit(canonical_dumps(decomp.to_json(include_walls=include_walls)), args.out)
    return 0


def _cmd_h0(args):
    decomp = _load_decomp(args.decomp)
    if decomp.fiber_rank > 0:
        base_report = None
        if decomp.fiber_rank < decomp.ambient_dim:
            base = PeriodicDecomposition(decomp.base_dim, 0, decomp.cells,
                                         window=decomp.window)
            base_report = h0_general(base)
        value = h0_pullback(base_report, decomp.fiber_rank, decomp.ambient_dim)
        payload = {"h0": value, "method": "pullback"}
        _emit(canonical_dumps(payload), args.out)
        return 0
    method = args.method
    if method == "auto":
        method = "simplicial" if all(c.is_simplicial_boundary()
                                     for c in decomp.cells) else "general"
    if method == "general" and len(decomp.cells) > 500 and not _long_tests_enabled(args):
        raise PerdelError(
            "general method on a decomposition this large requires --long-tests"
        )
    report = h0_simplicial(decomp) if method == "simplicial" else h0_general(decomp)
    _emit(canonical_dumps(report.to_json()), args.out)
    return 0


def _certify_payload(cert):
    payload = {
        "delaunay": cert.is_delaunay,
        "cone_dim": cert.voronoi_stratum_dim if cert.is_delaunay else None,
        "equality_solution_dim": cert.equality_solution_dim,
        "witness": None,
        "farkas": None,
    }
    if cert.witness is not None:
        payload["witness"] = form_to_json(cert.witness)["matrix"]
    if cert.farkas is not None:
        payload["farkas"] = [
            {"cell": ci, "point": list(pt), "coeff": format_rational(c)}
            for ci, pt, c in cert.farkas
        ]
    return payload


def _cmd_certify(args):
    decomp = _load_decomp(args.decomp)
    cert = secondary_cone(decomp)
    _emit(canonical_dumps(_certify_payload(cert)), args.out)
    return 0


def _cmd_et(args):
    decomp = _load_decomp(args.decomp)
    report = et_detect(decomp)
    _emit(canonical_dumps(report.to_json()), args.out)
    return 0


def _cmd_graph(args):
    data = load_json(args.infile)
    try:
        graph = DualGraph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad graph payload: {exc}") from exc
    report = torelli_report(graph)
    _emit(canonical_dumps(report), args.out)
    return 0


def _cmd_scan(args):
    graphs = stable_corpus(4) if args.corpus == "builtin" else None
    if graphs is None:
        raise InputFormatError(f"unknown corpus {args.corpus!r}")
    rows = []
    for g in graphs:
        rep = torelli_report(g)
        rows.append({k: rep[k] for k in
                     ("name", "genus", "planar", "cell_classes", "h0",
                      "cone_dim", "et_flag", "conjecture_consistent")})
    if args.format == "json":
        _emit(canonical_dumps({"rows": rows}), args.out)
    else:
        cols = ["name", "genus", "planar", "cell_classes", "h0", "cone_dim",
                "et_flag", "conjecture_consistent"]
        widths = {c: max(len(c), max(len(str(r[c])) for r in rows)) for c in cols}
        lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
        for r in rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_catalog(args):
    if args.catalog_cmd == "list":
        _emit(canonical_dumps(cat.registry()), args.out)
        return 0
    if args.catalog_cmd == "form":
        q = cat.gram(args.name, args.n)
        _emit(canonical_dumps(form_to_json(q)), args.out)
        return 0
    if args.catalog_cmd == "delta-rt":
        decomp = cat.delta_rt()
        _emit(canonical_dumps(decomp.to_json()), args.out)
        return 0
    if args.catalog_cmd == "rt-refinements":
        outdir = args.out_dir
        os.makedirs(outdir, exist_ok=True)
        names = []
        for ref in cat.rt_refinements():
            path = os.path.join(outdir, f"{ref.label}.json")
            with open(path, "w") as fh:
                fh.write(canonical_dumps(ref.to_json()))
            names.append(path)
        sys.stdout.write("\n".join(names) + "\n")
        return 0
    raise InputFormatError("unknown catalog subcommand")


def _cmd_moment(args):
    data = load_json(args.support)
    try:
        points = [tuple(int(x) for x in p) for p in data["points"]]
        weights = [parse_rational(str(w)) for w in data["weights"]]
        if len(points) != len(weights):
            raise InputFormatError("points and weights differ in length")
        support = WeightedSupport(dict(zip(points, weights)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad support payload: {exc}") from exc
    value = moment_point(support)
    _emit(canonical_dumps({"moment": [format_rational(x) for x in value]}), args.out)
    return 0


def _cmd_svg(args):
    if args.decomp:
        decomp = _load_decomp(args.decomp)
    else:
        import json
        try:
            decomp = PeriodicDecomposition.from_json(json.load(sys.stdin))
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"bad JSON on stdin: {exc}") from exc
    _emit(render_decomposition(decomp), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="perdel",
        description="exact periodic Delaunay decompositions, stratum "
                    "dimensions and secondary-cone certificates",
    )
    parser.add_argument("--long-tests", action="store_true",
                        help="allow expensive computations "
                             "(equivalent to PERDEL_LONG_TESTS=1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delaunay", help="Delaunay decomposition of a form")
    p.add_argument("--form", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--window-scale", type=int, default=1)
    p.set_defaults(func=_cmd_delaunay)

    p = sub.add_parser("h0", help="stratum dimension of a decomposition")
    p.add_argument("--decomp", required=True)
    p.add_argument("--method", choices=["general", "simplicial", "auto"],
                   default="auto")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_h0)

    p = sub.add_parser("certify", help="secondary-cone witness or Farkas certificate")
    p.add_argument("--decomp", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("et", help="extra-component test")
    p.add_argument("--decomp", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_et)

    p = sub.add_parser("graph", help="full pipeline report for a dual graph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--report", action="store_true",
                   help="accepted for compatibility; the report is always emitted")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("scan", help="pipeline over the built-in graph corpus")
    p.add_argument("--corpus", default="builtin")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("catalog", help="built-in forms and decompositions")
    csub = p.add_subparsers(dest="catalog_cmd", required=True)
    c = csub.add_parser("list")
    c.add_argument("--out", default="-")
    c.set_defaults(func=_cmd_catalog)
    c = csub.add_parser("form")
    c.add_argument("--name", required=True)
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--out", default="-")
    c.set_defaults(func=_cmd_catalog)
    c = csub.add_parser("delta-rt")
    c.add_argument("--out", default="-")
    c.set_defaults(func=_cmd_catalog)
    c = csub.add_parser("rt-refinements")
    c.add_argument("--out-dir", required=True)
    c.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("moment", help="finite-support moment map")
    p.add_argument("--support", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_moment)

    p = sub.add_parser("svg", help="render a g=2 decomposition as SVG")
    p.add_argument("--decomp", default=None,
                   help="input decomposition (default: stdin)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_svg)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        sys.stderr.write(canonical_dumps(exc.payload()))
        return 2
    except PerdelError as exc:
        sys.stderr.write(canonical_dumps(exc.payload()))
        return 1


if __name__ == "__main__":
    sys.exit(main())
