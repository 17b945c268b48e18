"""Command-line interface.

Exit codes: 0 when everything requested holds, 2 when a check fails, 1 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .congruence import ji_con_poset
from .construct import ConstructionLog, enumerate_sr, find_cell, grid, insert_fork, random_sr
from .canon import canonical_digest
from .diagram import (
    DiagramError, NotSemimodular, PrimeInterval, is_rectangular, is_semimodular, is_slim,
    validate_planar,
)
from .latfile import LatFormatError, format_lat, read_lat, write_lat
from .swing import (
    peak_colors, peak_sublattices, swing_reachable, threec_relations, v_relations, w_relations,
)
from .svg import NotPlanar, export_svg

OK, USAGE, FAILED = 0, 1, 2


class UsageError(Exception):
    pass


def _edge(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad edge {text!r}, expected 'a,b'") from None
    return PrimeInterval(a, b)


def _load(path):
    try:
        return read_lat(path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _fmt_witness(w):
    return "" if w is None else f" [witness: {w}]"


def cmd_check(args, out):
    D = _load(args.file)
    preds = [p for p in ("slim", "planar", "semimodular", "rectangular") if getattr(args, p)]
    if args.all or not preds:
        preds = ["slim", "planar", "semimodular", "rectangular"]
    ok = True
    for pred in preds:
        witness = None
        if pred == "slim":
            res = is_slim(D)
            value, witness = bool(res), res.witness
        elif pred == "planar":
            res = validate_planar(D)
            value, witness = res.valid, res.witness
        elif pred == "semimodular":
            res = is_semimodular(D)
            value, witness = bool(res), res.witness
        else:
            try:
                res = is_rectangular(D)
                value, witness = bool(res), res.witness
            except NotSemimodular as exc:
                value, witness = False, str(exc)
        ok &= value
        print(f"{pred}: {'true' if value else 'false'}{'' if value else _fmt_witness(witness)}", file=out)
    return OK if ok else FAILED


def cmd_congruences(args, out):
    D = _load(args.file)
    ji = ji_con_poset(D)
    covers = sorted(ji.poset.covers)
    if args.json:
        doc = {
            "colors": [{"index": i, "blocks": c.blocks,
                        "edges": [list(e) for e in ji.edges_of(i)]} for i, c in enumerate(ji.colors)],
            "covers": [list(c) for c in covers],
        }
        print(json.dumps(doc), file=out)
        return OK
    for i, c in enumerate(ji.colors):
        edges = " ".join(f"{a},{b}" for a, b in ji.edges_of(i))
        line = f"color {i}: edges {edges}"
        if args.all:
            line += f" blocks {c.blocks}"
        print(line, file=out)
    for a, b in covers:
        print(f"cover {a} < {b}", file=out)
    return OK


def cmd_swing(args, out):
    D = _load(args.file)
    p, q = _edge(args.src), _edge(args.dst)
    for e in (p, q):
        if e not in D.edge_index:
            raise UsageError(f"{e[0]},{e[1]} is not a prime interval")
    steps = [] if p == q else swing_reachable(D, p, q)
    hit = p == q or steps is not None
    print(f"Collapses: {'yes' if hit else 'no'}", file=out)
    if args.witness and steps:
        for s in steps:
            print(s, file=out)
        print(f"= {q}", file=out)
    return OK


def cmd_relations(args, out):
    D = _load(args.file)
    ji = ji_con_poset(D)
    wanted = [k for k in ("v", "w", "threec", "peaks") if getattr(args, k)] or ["v", "w", "threec", "peaks"]
    if "v" in wanted:
        for v in v_relations(D, ji):
            print(f"V({v.a},{v.b},{v.c})", file=out)
    if "w" in wanted:
        for w in w_relations(D, ji):
            vers = ",".join(map(str, sorted(w.versions))) or "-"
            print(f"W({w.a},{w.b},{w.c},{w.d},{w.e},{w.f}) version {vers}", file=out)
    if "threec" in wanted:
        for t in threec_relations(D, ji):
            print("3C(" + ",".join(map(str, t)) + ")", file=out)
    if "peaks" in wanted:
        for pk in peak_sublattices(D):
            cols = peak_colors(D, pk, ji)
            print(f"peak top {pk.top} elements {list(pk)} colors {list(cols)}", file=out)
    return OK


def cmd_generate(args, out):
    if args.enumerate:
        target = Path(args.output)
        target.mkdir(parents=True, exist_ok=True)
        rows = ["key\tsize\tforks\tlog"]
        for k, (D, clog) in enumerate(enumerate_sr(*args.enumerate)):
            write_lat(D, target / f"sr{k:05d}.lat", f"sr{k:05d}")
            rows.append(f"{canonical_digest(D)}\t{D.n}\t{len(clog.forks)}\t{json.dumps(clog.to_json())}")
        (target / "index.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
        print(f"wrote {len(rows) - 1} lattices to {target}", file=out)
        return OK
    if args.random:
        seed, cap, forks = args.random
        D, clog = random_sr(seed, cap, forks)
    else:
        m, n = args.grid or (2, 2)
        clog = ConstructionLog((m, n))
        D = grid(m, n)
    for top, left in args.fork or []:
        try:
            D = insert_fork(D, find_cell(D, top, left))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        clog = ConstructionLog(clog.base_grid, clog.forks + ((top, left),))
    text = format_lat(D, str(clog))
    text = f"# log {json.dumps(clog.to_json())}\n" + text
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return OK


def _parse_checks(text):
    checks = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = [c for c in checks if c not in harness.ALL_CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {','.join(harness.ALL_CHECKS)}")
    return checks


def cmd_verify(args, out):
    checks = _parse_checks(args.checks)
    sink = open(args.report, "w", encoding="utf-8") if args.report else None
    failed = 0
    try:
        if args.replay:
            lines = Path(args.replay).read_text(encoding="utf-8").splitlines()
            reports = [json.loads(x) for x in lines if x.strip()]
            stream = []
            for rep in reports:
                if rep.get("summary"):
                    continue
                if args.all_entries or not all(r["pass"] for r in rep["checks"].values()):
                    stream.append(harness.replay(rep, checks if args.checks_given else None,
                                                 args.mutation, args.pair_cap))
            bad = sum(1 for r in stream if not all(c["pass"] for c in r["checks"].values()))
            stream.append({"summary": True, "lattices": len(stream), "failed_lattices": bad})
        else:
            config = harness.VerifyConfig(
                max_elements=args.max_elements, max_forks=args.max_forks, checks=checks,
                jobs=args.jobs, mutation=args.mutation, pair_cap=args.pair_cap,
                random_count=args.random, random_cap=args.random_cap,
                logs=[ConstructionLog.from_json(json.loads(x)) for x in args.log or []],
                enumerate=not args.log)
            stream = harness.verify_family(config)
        for rep in stream:
            line = json.dumps(rep, sort_keys=True)
            if sink:
                sink.write(line + "\n")
            if rep.get("summary"):
                failed = rep["failed_lattices"]
                print(line, file=out)
    finally:
        if sink:
            sink.close()
    return FAILED if failed else OK


def cmd_render(args, out):
    D = _load(args.file)
    colors = bold = filled = None
    ji = ji_con_poset(D) if (args.color_edges or args.peaks) else None
    if args.color_edges:
        colors = {tuple(e): ji.color_of(e) for e in D.edges}
    bold, filled = set(), set()
    if args.peaks:
        for pk in peak_sublattices(D):
            filled.update(pk)
            bold.update(tuple(e) for e in pk.top_edges)
    if args.witness:
        try:
            src, dst = args.witness.split(":")
        except ValueError:
            raise UsageError("--witness expects e1,e2:e3,e4") from None
        p, q = _edge(src), _edge(dst)
        steps = swing_reachable(D, p, q) or []
        bold.add(tuple(p))
        bold.update(tuple(s.dst) for s in steps)
    try:
        svg = export_svg(D, colors, bold, filled)
    except NotPlanar as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    Path(args.output).write_text(svg, encoding="utf-8")
    return OK


def make_parser():
    parser = argparse.ArgumentParser(prog="latlab", description="Slim semimodular lattice toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test structural predicates of a .lat file")
    p.add_argument("file")
    for flag in ("all", "slim", "planar", "semimodular", "rectangular"):
        p.add_argument(f"--{flag}", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("congruences", help="colors and the Ji poset")
    p.add_argument("file")
    p.add_argument("--ji", action="store_true", help="colors and covers only (default)")
    p.add_argument("--all", action="store_true", help="also print congruence blocks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("swing", help="does con(from) collapse to?")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_swing)

    p = sub.add_parser("relations", help="V, W and three-crown relations, peak sublattices")
    p.add_argument("file")
    p.add_argument("--v", action="store_true")
    p.add_argument("--w", action="store_true")
    p.add_argument("--3c", dest="threec", action="store_true")
    p.add_argument("--peaks", action="store_true")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("generate", help="build grids, forked lattices or an enumeration")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--grid", nargs=2, type=int, metavar=("M", "N"))
    src.add_argument("--enumerate", nargs=2, type=int, metavar=("MAXE", "MAXF"))
    src.add_argument("--random", nargs=3, type=int, metavar=("SEED", "CAPE", "NF"))
    p.add_argument("--fork", nargs=2, type=int, action="append", metavar=("TOP", "LEFT"),
                   help="fork the 4-cell with this top and left corner")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run checks over the enumerated family")
    p.add_argument("--max-elements", type=int, default=7)
    p.add_argument("--max-forks", type=int, default=1)
    p.add_argument("--checks", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    p.add_argument("--random", type=int, default=0, help="also check this many seeded random lattices")
    p.add_argument("--random-cap", type=int, default=60)
    p.add_argument("--pair-cap", type=int, default=20)
    p.add_argument("--mutation", choices=harness.MUTATIONS)
    p.add_argument("--log", action="append",
                   help="check this construction log (JSON) instead of the enumeration")
    p.add_argument("--replay", help="re-run the failing entries of a report file")
    p.add_argument("--all-entries", action="store_true", help="with --replay, re-run every entry")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="export an SVG drawing")
    p.add_argument("file")
    p.add_argument("--color-edges", action="store_true")
    p.add_argument("--peaks", action="store_true")
    p.add_argument("--witness")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "verify":
        args.checks_given = args.checks is not None
        args.checks = args.checks or ",".join(harness.DEFAULT_CHECKS)
    try:
        return args.func(args, out)
    except (UsageError, LatFormatError, DiagramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
