"""Command-line interface.

Exit codes: 0 success, 1 input or parse error, 2 verification failure,
3 budget or size guard exhausted, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bounds import bounds_report
from .catalog import CatalogError, dump_catalog, enumerate_tiles, load_catalog
from .criticality import verify_2cc
from .exact import alpha_exact, gamma_exact
from .families import FamilyError, parse_family_spec
from .graphcore import Graph
from .signature import SignatureError, counts, parse_signature, random_signature, render_signature
from .tilealg import build_graph, build_multigraph, to_dot, to_json

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _err(msg):
    print(msg, file=sys.stderr)


def _read_text(arg):
    if arg is None or arg == "-":
        return sys.stdin.read()
    return arg


def _catalog(args):
    try:
        return load_catalog(Path(args.catalog) if args.catalog else None)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read catalog: {exc}")
    except CatalogError as exc:
        raise _Exit(EXIT_INPUT, f"catalog error: {exc}")


def _signature(text, catalog):
    try:
        return parse_signature(text.strip("\n"), catalog)
    except SignatureError as exc:
        raise _Exit(EXIT_INPUT, f"signature error: {exc}")


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {out}: {exc}")


def _budget(args):
    kw = {}
    if args.budget_nodes is not None:
        kw["max_nodes"] = args.budget_nodes
    if args.budget_seconds is not None:
        kw["max_seconds"] = args.budget_seconds
    return kw


def cmd_parse(args):
    cat = _catalog(args)
    sig = _signature(_read_text(args.signature), cat)
    doc = {
        "signature": render_signature(sig),
        "tiles": [tok + fr for tok, fr in sig.tiles],
        "counts": counts(sig).as_dict(),
    }
    print(json.dumps(doc))
    return EXIT_OK


def cmd_build(args):
    cat = _catalog(args)
    sig = _signature(_read_text(args.signature), cat)
    lg = build_multigraph(sig, cat) if args.multigraph else build_graph(sig, cat)
    text = to_dot(lg) if args.format == "dot" else to_json(lg, render_signature(sig)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_bounds(args):
    cat = _catalog(args)
    sig = _signature(_read_text(args.signature), cat)
    rep = bounds_report(sig, compute_exact=args.exact, catalog=cat, **_budget(args))
    print(json.dumps(rep.as_dict()))
    if rep.budget_hit:
        _err("solver budget exhausted; reporting the incumbent")
        return EXIT_BUDGET
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _load_graph_file(path):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _Exit(EXIT_INPUT, f"bad graph file: {exc}")
    try:
        return Graph(doc.get("vertices", []), [tuple(e) for e in doc["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise _Exit(EXIT_INPUT, f"bad graph file: {exc}")


def cmd_verify_critical(args):
    if args.graph_file:
        g = _load_graph_file(args.graph_file)
        name = args.graph_file
    else:
        cat = _catalog(args)
        sig = _signature(_read_text(args.signature), cat)
        g = build_multigraph(sig, cat).graph
        name = render_signature(sig)
    if len(g) > args.max_vertices:
        _err(f"{len(g)} vertices exceed --max-vertices {args.max_vertices}")
        return EXIT_BUDGET
    rep = verify_2cc(g, workers=args.jobs)
    print(json.dumps({"input": name, "vertices": len(g), **rep.as_dict()}))
    return EXIT_OK if rep.is_2cc and rep.three_connected else EXIT_VERIFY


def cmd_family(args):
    try:
        inst = parse_family_spec(args.spec)
    except (FamilyError, SignatureError) as exc:
        raise _Exit(EXIT_INPUT, f"family error: {exc}")
    lg = build_graph(inst.signature)
    found = {"vertices": len(lg.graph)}
    budget_hit = False
    if "gamma" in inst.expected:
        r = gamma_exact(lg.graph, **_budget(args))
        found["gamma"] = r.value
        budget_hit |= not r.optimal
    if "alpha" in inst.expected:
        r = alpha_exact(lg.graph, **_budget(args))
        found["alpha"] = r.value
        budget_hit |= not r.optimal
    match = all(found.get(k) == v for k, v in inst.expected.items())
    print(json.dumps({
        "family": inst.family,
        "params": inst.params,
        "signature": inst.text,
        "expected": inst.expected,
        "found": found,
        "match": match,
    }))
    if budget_hit:
        return EXIT_BUDGET
    return EXIT_OK if match else EXIT_VERIFY


def _tile_counts(spec):
    lo, _, hi = str(spec).partition("-")
    lo = int(lo)
    hi = int(hi) if hi else lo
    ks = [k for k in range(lo, hi + 1) if k >= 3 and k % 2 == 1]
    if not ks:
        raise _Exit(EXIT_INPUT, f"--tiles {spec}: no odd count >= 3 in range")
    return ks


def sweep_record(job):
    """One sweep sample; pure function of its arguments."""
    idx, seed, ks, check_critical, max_vertices, budget, catalog_path = job
    cat = load_catalog(Path(catalog_path) if catalog_path else None)
    rng = random.Random(seed * 1_000_003 + idx)
    k = rng.choice(ks)
    sig = random_signature(k, seed=rng.randrange(2**31), catalog=cat)
    rep = bounds_report(sig, compute_exact=True, catalog=cat, **budget)
    d = rep.as_dict()
    rec = {
        "index": idx,
        "signature": d["signature"],
        "vertices": rep.n_vertices,
        "edges": build_graph(sig, cat).graph.edge_count(),
        "gamma": {k2: d["gamma"][k2] for k2 in ("lower", "upper", "exact", "status")},
        "alpha": {k2: d["alpha"][k2] for k2 in ("lower", "upper", "exact", "status")},
        "checks": d["checks"],
        "stats": d.get("stats", {}),
    }
    ok = rep.ok and not rep.budget_hit and rep.dom_witness_ok and rep.ind_witness_ok
    if check_critical:
        g = build_multigraph(sig, cat).graph
        if len(g) <= max_vertices:
            cr = verify_2cc(g)
            rec["critical"] = {"is_2cc": cr.is_2cc, "three_connected": cr.three_connected}
            ok = ok and cr.is_2cc and cr.three_connected
        else:
            rec["critical"] = {"skipped": f"more than {max_vertices} vertices"}
    rec["sandwich_ok"] = bool(rep.gamma_sandwich and rep.alpha_sandwich)
    rec["ok"] = ok
    return rec


_CSV_FIELDS = [
    "index", "signature", "vertices", "edges", "gamma_lower", "gamma_exact", "gamma_upper",
    "alpha_lower", "alpha_exact", "alpha_upper", "gamma_sandwich", "alpha_sandwich",
    "dom_witness_ok", "ind_witness_ok", "is_2cc", "ok",
]


def _csv_row(rec):
    return {
        "index": rec["index"], "signature": rec["signature"], "vertices": rec["vertices"],
        "edges": rec["edges"],
        "gamma_lower": rec["gamma"]["lower"], "gamma_exact": rec["gamma"]["exact"],
        "gamma_upper": rec["gamma"]["upper"],
        "alpha_lower": rec["alpha"]["lower"], "alpha_exact": rec["alpha"]["exact"],
        "alpha_upper": rec["alpha"]["upper"],
        **{k: rec["checks"][k] for k in ("gamma_sandwich", "alpha_sandwich", "dom_witness_ok", "ind_witness_ok")},
        "is_2cc": rec.get("critical", {}).get("is_2cc", ""),
        "ok": rec["ok"],
    }


def run_sweep(tiles, samples, seed, check_critical=False, max_vertices=40, budget=None,
              jobs=1, resume=0, catalog_path=None):
    """Yield sweep records in index order."""
    ks = _tile_counts(tiles)
    work = [(i, seed, ks, check_critical, max_vertices, budget or {}, catalog_path)
            for i in range(resume, samples)]
    if jobs > 1 and work:
        with ProcessPoolExecutor(jobs) as ex:
            yield from ex.map(sweep_record, work, chunksize=1)
    else:
        for w in work:
            yield sweep_record(w)


def cmd_sweep(args):
    if args.samples < 0:
        raise _Exit(EXIT_INPUT, "--samples must be >= 0")
    _catalog(args)
    if args.out in ("jsonl", "csv"):
        args.format, args.out = args.format or args.out, None
    if args.format is None:
        args.format = "csv" if args.out and args.out.endswith(".csv") else "jsonl"
    try:
        fh = open(args.out, "a" if args.resume else "w", newline="") if args.out else sys.stdout
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot open {args.out}: {exc}")
    passed = failed = 0
    try:
        writer = None
        if args.format == "csv":
            writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS, lineterminator="\n")
            if not args.resume:
                writer.writeheader()
        for rec in run_sweep(args.tiles, args.samples, args.seed, args.check_critical,
                             args.max_vertices, _budget(args), args.jobs, args.resume, args.catalog):
            if writer:
                writer.writerow(_csv_row(rec))
            else:
                fh.write(json.dumps(rec) + "\n")
            fh.flush()
            if rec["ok"]:
                passed += 1
            else:
                failed += 1
    finally:
        if fh is not sys.stdout:
            fh.close()
    _err(f"sweep: {passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_export_catalog(args):
    cat = _catalog(args)
    if args.format == "tiles":
        lines = [json.dumps({"name": t.name, "picture": t.picture_id, "orientation": t.orientation,
                             "frame": t.frame_id, "vertices": list(t.vertices),
                             "edges": [list(e) for e in t.edges], "left_wall": list(t.left_wall),
                             "right_wall": list(t.right_wall), "marks": list(t.marks)})
                 for t in enumerate_tiles(cat)]
        text = "\n".join(lines) + "\n"
    else:
        text = dump_catalog(cat)
    _emit(text, args.out)
    return EXIT_OK


def _add_globals(p, suppress):
    def d(value):
        return argparse.SUPPRESS if suppress else value
    p.add_argument("--catalog", default=d(os.environ.get("CROSSTILES_CATALOG")),
                   help="catalog document (default: bundled, or $CROSSTILES_CATALOG)")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--budget-nodes", type=int, default=d(None))
    p.add_argument("--budget-seconds", type=float, default=d(None))
    p.add_argument("--max-vertices", type=int, default=d(40))


def build_parser():
    p = argparse.ArgumentParser(prog="crosstiles", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    _add_globals(p, suppress=False)
    # repeated on every subcommand so flags work on either side of its name
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="normalize a signature and count symbols")
    s.add_argument("signature", nargs="?", default="-")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("build", parents=[common], help="export the graph of a signature")
    s.add_argument("signature", nargs="?", default="-")
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.add_argument("--out")
    s.add_argument("--multigraph", action="store_true", help="keep parallel edges")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("bounds", parents=[common], help="bounds, witnesses and optional exact values")
    s.add_argument("signature", nargs="?", default="-")
    s.add_argument("--exact", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify-critical", parents=[common], help="check 3-connectivity and 2-crossing-criticality")
    s.add_argument("signature", nargs="?", default="-")
    s.add_argument("--graph-file", help="JSON graph {vertices, edges} instead of a signature")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify_critical)

    s = sub.add_parser("family", parents=[common], help="regression on a named family, e.g. G1:n=3")
    s.add_argument("spec")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", parents=[common], help="random signatures with bound and witness checks")
    s.add_argument("--tiles", default="3", help="odd tile count or range such as 3-7")
    s.add_argument("--samples", type=int, default=10)
    s.add_argument("--check-critical", action="store_true")
    s.add_argument("--format", choices=("jsonl", "csv"), default=None)
    s.add_argument("--out", help="output path, or just 'jsonl' / 'csv' for standard output")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--resume", type=int, default=0, help="skip the first N samples and append")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("export-catalog", parents=[common], help="print the catalog or its 42 tiles")
    s.add_argument("--format", choices=("catalog", "tiles"), default="catalog")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Exit as exc:
        if str(exc):
            _err(str(exc))
        return exc.code
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
