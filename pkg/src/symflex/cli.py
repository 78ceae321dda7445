"""Command line interface.

Exit status: 0 success or true, 1 false or a negative verdict, 2 error,
3 a search cap truncated the answer.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import closure as closure_mod
from . import colourings as col
from . import documents as docs
from . import flexes
from .fixtures import CATALOG, load
from .frameworks import (
    Framework,
    angle_preserving_classes,
    cartesian_from_apc,
    noninvariant_apc,
)
from .graph_core import DEFAULT_PATH_CAP, SymmetryError, format_edge

OK, NEGATIVE, ERROR, TRUNCATED = 0, 1, 2, 3


class Failure(Exception):
    def __init__(self, message: str, code: int = ERROR, kind: str = "Error"):
        super().__init__(message)
        self.code = code
        self.kind = kind


# ----------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_doc(path: str):
    doc = docs.parse_graph(_read(path))
    return doc, doc.graph()


def _colouring(doc, g, name: Optional[str]):
    if name is None:
        if len(doc.colourings) != 1:
            raise Failure("--colouring is required (document has "
                          f"{len(doc.colourings)} colourings)")
        name = next(iter(doc.colourings))
    try:
        return doc.colouring(g, name)
    except KeyError as exc:
        raise Failure(str(exc.args[0])) from None


def _tolerances(args) -> flexes.ToleranceProfile:
    if args.tol is None:
        return flexes.DEFAULT_TOL
    return dataclasses.replace(flexes.DEFAULT_TOL, length_variation=args.tol, axis=args.tol)


def _write(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, payload: dict, summary: str) -> None:
    if args.json:
        sys.stdout.write(docs.dumps(payload))
    else:
        print(summary)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_check(args) -> int:
    doc, g = _load_doc(args.doc)
    c = _colouring(doc, g, args.colouring)
    what = args.what
    if what == "nac":
        r = col.is_nac(g, c)
        payload = {"nac": r.ok, "reason": r.reason, "cycle": list(r.cycle or ())}
        _emit(args, payload, "NAC" if r.ok else f"not NAC: {r.reason}")
        return OK if r.ok else NEGATIVE
    if what == "pseudo-rs":
        r = col.is_pseudo_rs(g, c)
        payload = {"pseudo_rs": r.ok, "reason": r.reason}
        _emit(args, payload, "pseudo-RS" if r.ok else f"not pseudo-RS: {r.reason}")
        return OK if r.ok else NEGATIVE
    if what == "rs":
        v = col.classify_rs(g, c, cap=args.cap_cycles, budget=args.budget)
        payload = {"status": v.status, "reason": v.reason, "cycle": list(v.cycle),
                   "certified_cycles": len(v.certificates)}
        _emit(args, payload, v.status + (f" ({v.reason})" if v.reason else ""))
        if v.status == col.UNKNOWN_TRUNCATED:
            return TRUNCATED
        return OK if v.is_rs else NEGATIVE
    r = col.is_cartesian(g, c)
    payload = {"cartesian": r.ok, "pair": list(r.pair) if r.pair else None}
    _emit(args, payload, "Cartesian" if r.ok else "not Cartesian")
    return OK if r.ok else NEGATIVE


def cmd_enumerate(args) -> int:
    doc, g = _load_doc(args.doc)
    if args.what == "nac":
        found = col.enumerate_nac(g, up_to_swap=args.up_to_conjugation, budget=args.budget)
    else:
        try:
            found = col.enumerate_pseudo_rs(g, quotient_conjugation=args.up_to_conjugation,
                                            rs_only=args.what == "rs", budget=args.budget,
                                            cap=args.cap_cycles)
        except col.TruncatedSearch as exc:
            raise Failure(str(exc), TRUNCATED, "TruncatedSearch") from None
    items = [docs.colouring_to_json(c) for c in found]
    payload = {"kind": args.what, "up_to_conjugation": args.up_to_conjugation,
               "count": len(items), "colourings": items}
    if args.what != "nac" and args.classify:
        payload["status"] = [col.classify_rs(g, c, cap=args.cap_cycles, budget=args.budget).status
                             for c in found]
    if args.json:
        sys.stdout.write(docs.dumps(payload))
    else:
        print(f"{len(items)} {args.what} colouring(s)")
        for i, c in enumerate(found):
            print(f"# {i}")
            print(col.format_colouring(c))
    return OK


def cmd_closure(args) -> int:
    doc, g = _load_doc(args.doc)
    trace = closure_mod.gold_closure(g, budget=args.budget, cap=args.cap_cycles)
    if trace.vacuous:
        print("warning: a stage has no RS-colouring; gold core taken vacuously",
              file=sys.stderr)
    payload = {
        "stages": [{"edges": len(h.edges), "added": [format_edge(e) for e in sorted(p)]}
                   for h, p in trace.stages],
        "added": [format_edge(e) for e in trace.added],
        "vacuous": trace.vacuous,
        "final_edges": [format_edge(e) for e in trace.final.edges],
    }
    _emit(args, payload, "added: " + (" ".join(payload["added"]) or "(none)"))
    return OK


def cmd_verdict(args) -> int:
    doc, g = _load_doc(args.doc)
    try:
        v = closure_mod.necessity_verdict(g, budget=args.budget, cap=args.cap_cycles)
    except col.TruncatedSearch as exc:
        raise Failure(str(exc), TRUNCATED, "TruncatedSearch") from None
    payload = {"status": v.status,
               "sample": None if v.sample is None else docs.colouring_to_json(v.sample)}
    if v.closure is not None:
        payload["closure_added"] = [format_edge(e) for e in v.closure.added]
        payload["vacuous"] = v.closure.vacuous
        payload["restrictions"] = {"|".join(k): ok for k, ok in sorted(v.restrictions.items())}
    _emit(args, payload, v.status)
    return OK if v.status == closure_mod.HAS_RS else NEGATIVE


def _double_vertex(g, d1, d2, args) -> str:
    if args.vertex:
        return args.vertex
    for w in g.invariant_vertices:
        if flexes.check_double_conditions(g, d1, d2, w, args.cap_cycles).passed:
            return w
    raise Failure("no invariant vertex satisfies the two-colouring conditions; pass --vertex",
                  NEGATIVE, "ConditionsFailed")


def cmd_flex(args) -> int:
    doc, g = _load_doc(args.doc)
    tol = _tolerances(args)
    try:
        if args.kind == "grid":
            c = _colouring(doc, g, args.colouring)
            flex = flexes.grid_flex(g, c, seed=args.seed, cap=args.cap_cycles, tol=tol)
        elif args.kind == "double":
            if not args.other:
                raise Failure("flex double needs --with NAME")
            d1 = _colouring(doc, g, args.colouring)
            d2 = _colouring(doc, g, args.other)
            w = _double_vertex(g, d1, d2, args)
            flex = flexes.double_flex(g, d1, d2, w, seed=args.seed, mirrored=args.mirrored,
                                      force=args.force, cap=args.cap_cycles, tol=tol)
        else:
            coords = doc.coords()
            if coords is None:
                raise Failure("document has no realisation")
            fw = Framework(g, coords)
            if args.colouring:
                c = _colouring(doc, g, args.colouring)
            else:
                apcs = angle_preserving_classes(g)
                r = noninvariant_apc(g, apcs)
                if r is None:
                    raise Failure("every angle-preserving class is invariant", NEGATIVE, "Rigid")
                c = cartesian_from_apc(g, r, apcs)
            flex = flexes.walkindep_flex(fw, c, u_bar=args.vertex,
                                         tol=args.tol if args.tol is not None else 1e-9)
    except (flexes.NotRSNoCycle, flexes.ConditionsFailed, flexes.NotWalkIndependent,
            flexes.NotCartesian) as exc:
        raise Failure(str(exc), NEGATIVE, type(exc).__name__) from None
    _write(docs.emit_flex(flex, name=doc.name, coords=doc.coords()), args.output)
    return OK


def _load_flex(path: str) -> flexes.ParametricFlex:
    return docs.parse_flex(_read(path))


def cmd_verify(args) -> int:
    flex = _load_flex(args.flex)
    report = flexes.verify_flex(flex.graph, flex, args.samples, _tolerances(args))
    payload = report.as_dict()
    if args.json:
        sys.stdout.write(docs.dumps(payload))
    else:
        for k in sorted(payload):
            print(f"{k}: {payload[k]}")
    return OK if report.passed else NEGATIVE


def cmd_sample(args) -> int:
    flex = _load_flex(args.flex)
    _write(docs.dumps(docs.samples_to_json(flex, flexes.sample_flex(flex, args.n))), args.output)
    return OK


def cmd_export(args) -> int:
    from . import export

    if args.frames < 1:
        raise Failure("--frames must be at least 1")
    if not (args.csv or args.svg or args.report):
        raise Failure("nothing to export: give --csv, --svg or --report")
    flex = _load_flex(args.flex)
    if args.csv:
        _write(export.csv_text(flex, args.frames), args.csv)
    if args.svg:
        export.write_svg_frames(flex, args.frames, Path(args.svg))
    if args.report:
        report = flexes.verify_flex(flex.graph, flex, 200, _tolerances(args))
        export.write_report(flex, report, Path(args.report))
    return OK


def cmd_fixtures(args) -> int:
    if args.list or not args.name:
        for name in sorted(CATALOG) + ["gk", "strip", "gadget"]:
            print(name)
        return OK
    params = {k: getattr(args, k) for k in ("k", "m", "n", "brace", "triangles") if getattr(args, k) is not None}
    if args.name == "strip":
        params["seed"] = args.seed
    try:
        fx = load(args.name, **params)
    except KeyError as exc:
        raise Failure(str(exc.args[0])) from None
    doc = docs.make_document(fx.graph, fx.coords, fx.colourings, fx.name, fx.provenance)
    _write(docs.emit_graph(doc), args.output)
    return OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    parser.add_argument("--cap-cycles", type=int, default=d(DEFAULT_PATH_CAP),
                        help="cap on enumerated paths and cycles")
    parser.add_argument("--budget", type=int, default=d(None),
                        help=f"enumeration budget (default: {col.BUDGET_ENV} or 3^24)")
    parser.add_argument("--tol", type=float, default=d(None),
                        help="length-variation and axis tolerance")
    parser.add_argument("--json", action="store_true", default=d(False),
                        help="machine-readable output, including errors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symflex", description=__doc__.splitlines()[0])
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = command("check", cmd_check, "test one colouring")
    p.add_argument("what", choices=["nac", "pseudo-rs", "rs", "cartesian"])
    p.add_argument("doc")
    p.add_argument("--colouring")

    p = command("enumerate", cmd_enumerate, "list colourings")
    p.add_argument("what", choices=["nac", "pseudo-rs", "rs"])
    p.add_argument("doc")
    p.add_argument("--up-to-conjugation", action="store_true")
    p.add_argument("--classify", action="store_true", help="add the RS status of each colouring")

    p = command("closure", cmd_closure, "gold-closure trace")
    p.add_argument("doc")

    p = command("verdict", cmd_verdict, "necessary-condition verdict")
    p.add_argument("doc")

    p = command("flex", cmd_flex, "construct a flex")
    p.add_argument("kind", choices=["grid", "double", "walkindep"])
    p.add_argument("doc")
    p.add_argument("--colouring")
    p.add_argument("--with", dest="other", help="second colouring (double)")
    p.add_argument("--vertex", help="invariant vertex to split (double) or base vertex (walkindep)")
    p.add_argument("--mirrored", action="store_true", help="other branch of s(t) (double)")
    p.add_argument("--force", action="store_true", help="skip hypothesis checks (double)")
    p.add_argument("-o", "--output")

    p = command("verify", cmd_verify, "numerically verify a flex document")
    p.add_argument("flex", nargs="?", default="-")
    p.add_argument("--samples", type=int, default=200)

    p = command("sample", cmd_sample, "sample realisations")
    p.add_argument("flex", nargs="?", default="-")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")

    p = command("export", cmd_export, "CSV, SVG frames or a PNG report")
    p.add_argument("flex", nargs="?", default="-")
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--svg", metavar="DIR")
    p.add_argument("--report", metavar="PNG")
    p.add_argument("--frames", type=int, default=24)

    p = command("fixtures", cmd_fixtures, "write a shipped fixture document")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    for opt in ("k", "m", "n", "brace", "triangles"):
        p.add_argument(f"--{opt}", type=int)
    p.add_argument("-o", "--output")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Failure as exc:
        code, kind, message = exc.code, exc.kind, str(exc)
    except docs.SchemaError as exc:
        code, kind, message = ERROR, "SchemaError", str(exc)
    except SymmetryError as exc:
        code, kind, message = ERROR, type(exc).__name__, str(exc)
    except col.BudgetExceeded as exc:
        code, kind, message = ERROR, "BudgetExceeded", str(exc)
    except col.TruncatedSearch as exc:
        code, kind, message = TRUNCATED, "TruncatedSearch", str(exc)
    except (flexes.FlexError, closure_mod.NonTermination, ValueError, OSError) as exc:
        code, kind, message = ERROR, type(exc).__name__, str(exc)
    if args.json:
        sys.stdout.write(docs.dumps({"error": kind, "message": message, "exit": code}))
    else:
        print(f"symflex: {kind}: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
