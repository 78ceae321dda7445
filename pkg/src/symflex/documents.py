"""JSON documents for graphs, colourings and flexes.

Graph documents are canonical: keys sorted, edges as sorted ``[u, v]`` pairs,
coordinates as decimal strings with 12 significant digits.  Flex coefficients
are written with 17 significant digits so a flex read back evaluates to the
same floats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

import numpy as np

from .colourings import COLOURS, Colouring
from .flexes import S_TABLE_STEP, ParametricFlex
from .graph_core import SymmetricGraph, edge_key, format_edge, validate_symmetry

GRAPH_FORMAT = "symflex-graph/1"
FLEX_FORMAT = "symflex-flex/1"


class SchemaError(ValueError):
    """Invalid document; ``pointer`` is a JSON pointer to the offending value."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def fmt(x: float, digits: int = 12) -> str:
    """Decimal string with ``digits`` significant digits; no exponent, no -0."""
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("non-finite coordinate")
    s = np.format_float_positional(x, precision=digits, unique=False, fractional=False, trim="-")
    if s.startswith("-") and float(s) == 0:
        s = s[1:]
    return s


def fmt_exact(x: float) -> str:
    return fmt(x, 17)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------
# graph documents
# ----------------------------------------------------------------------

@dataclass
class GraphDocument:
    vertices: list[str]
    edges: list[tuple[str, str]]
    sigma: dict[str, str]
    realisation: Optional[dict[str, tuple[str, str]]] = None
    colourings: dict[str, dict[str, str]] = field(default_factory=dict)
    name: str = ""
    provenance: str = ""

    def graph(self) -> SymmetricGraph:
        return validate_symmetry(self.vertices, self.edges, self.sigma)

    def coords(self) -> Optional[dict[str, np.ndarray]]:
        if self.realisation is None:
            return None
        return {v: np.array([float(x), float(y)]) for v, (x, y) in self.realisation.items()}

    def colouring(self, g: SymmetricGraph, name: str) -> Colouring:
        if name not in self.colourings:
            raise KeyError(f"document has no colouring {name!r}")
        return {edge_key(*k.split("-")): c for k, c in self.colourings[name].items()}

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "format": GRAPH_FORMAT,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "sigma": dict(self.sigma),
        }
        if self.name:
            out["name"] = self.name
        if self.provenance:
            out["provenance"] = self.provenance
        if self.realisation is not None:
            out["realisation"] = {v: list(p) for v, p in self.realisation.items()}
        if self.colourings:
            out["colourings"] = {k: dict(v) for k, v in self.colourings.items()}
        return out


def colouring_to_json(colouring: Mapping) -> dict[str, str]:
    return {format_edge(e): colouring[e] for e in sorted(colouring)}


def make_document(g: SymmetricGraph, coords: Optional[Mapping] = None,
                  colourings: Optional[Mapping[str, Mapping]] = None,
                  name: str = "", provenance: str = "") -> GraphDocument:
    realisation = None
    if coords is not None:
        realisation = {v: (fmt(coords[v][0]), fmt(coords[v][1])) for v in g.vertices}
    return GraphDocument(
        vertices=list(g.vertices),
        edges=[tuple(e) for e in g.edges],
        sigma={v: g.sigma[v] for v in g.vertices},
        realisation=realisation,
        colourings={k: colouring_to_json(c) for k, c in (colourings or {}).items()},
        name=name,
        provenance=provenance,
    )


def _expect(cond: bool, pointer: str, message: str) -> None:
    if not cond:
        raise SchemaError(pointer, message)


def _escape(token: str) -> str:
    return token.replace("~", "~0").replace("/", "~1")


def parse_graph(text: str) -> GraphDocument:
    """Parse and check a graph document (structure and references, not symmetry)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc.msg}") from None
    return graph_from_json(data)


def graph_from_json(data: Any, base: str = "") -> GraphDocument:
    _expect(isinstance(data, dict), base, "expected an object")
    fmt_ = data.get("format", GRAPH_FORMAT)
    _expect(fmt_ == GRAPH_FORMAT, f"{base}/format", f"unsupported format {fmt_!r}")
    verts = data.get("vertices")
    _expect(isinstance(verts, list), f"{base}/vertices", "expected a list of strings")
    for i, v in enumerate(verts):
        _expect(isinstance(v, str) and v != "", f"{base}/vertices/{i}", "expected a non-empty string")
        _expect("-" not in v and ":" not in v, f"{base}/vertices/{i}", "vertex ids may not contain '-' or ':'")
    _expect(len(set(verts)) == len(verts), f"{base}/vertices", "duplicate vertex")
    vset = set(verts)

    edges = data.get("edges")
    _expect(isinstance(edges, list), f"{base}/edges", "expected a list of pairs")
    canon = []
    for i, e in enumerate(edges):
        ptr = f"{base}/edges/{i}"
        _expect(isinstance(e, list) and len(e) == 2, ptr, "expected a pair")
        for j, v in enumerate(e):
            _expect(v in vset, f"{ptr}/{j}", f"undeclared vertex {v!r}")
        canon.append(edge_key(*e))

    sigma = data.get("sigma", {})
    _expect(isinstance(sigma, dict), f"{base}/sigma", "expected an object")
    for k, v in sigma.items():
        ptr = f"{base}/sigma/{_escape(k)}"
        _expect(k in vset, ptr, f"undeclared vertex {k!r}")
        _expect(v in vset, ptr, f"maps to undeclared vertex {v!r}")

    realisation = None
    if "realisation" in data:
        raw = data["realisation"]
        _expect(isinstance(raw, dict), f"{base}/realisation", "expected an object")
        realisation = {}
        for k, p in raw.items():
            ptr = f"{base}/realisation/{_escape(k)}"
            _expect(k in vset, ptr, f"undeclared vertex {k!r}")
            _expect(isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p),
                    ptr, "expected two decimal strings")
            try:
                [float(x) for x in p]
            except ValueError:
                raise SchemaError(ptr, "not a decimal number") from None
            realisation[k] = (p[0], p[1])
        missing = sorted(vset - set(realisation))
        _expect(not missing, f"{base}/realisation", f"missing vertex {missing[0] if missing else ''!r}")

    colourings = {}
    raw_cols = data.get("colourings", {})
    _expect(isinstance(raw_cols, dict), f"{base}/colourings", "expected an object")
    eset = set(canon)
    for name, col in raw_cols.items():
        ptr = f"{base}/colourings/{_escape(name)}"
        _expect(isinstance(col, dict), ptr, "expected an object")
        out = {}
        for key, c in col.items():
            kptr = f"{ptr}/{_escape(key)}"
            parts = key.split("-")
            _expect(len(parts) == 2, kptr, "edge keys look like 'u-v'")
            e = edge_key(*parts)
            _expect(e in eset, kptr, "not an edge")
            _expect(c in COLOURS, kptr, f"unknown colour {c!r}")
            out[format_edge(e)] = c
        _expect(len(out) == len(eset), ptr, "colouring is not total")
        colourings[name] = dict(sorted(out.items()))

    return GraphDocument(
        vertices=sorted(verts),
        edges=sorted(canon),
        sigma={v: sigma.get(v, v) for v in sorted(verts)},
        realisation=None if realisation is None else dict(sorted(realisation.items())),
        colourings=dict(sorted(colourings.items())),
        name=data.get("name", ""),
        provenance=data.get("provenance", ""),
    )


def emit_graph(doc: GraphDocument) -> str:
    return dumps(doc.to_json())


# ----------------------------------------------------------------------
# flex documents
# ----------------------------------------------------------------------

def _vec(v) -> list[str]:
    return [fmt_exact(v[0]), fmt_exact(v[1])]


def _unvec(p, ptr: str) -> np.ndarray:
    _expect(isinstance(p, list) and len(p) == 2, ptr, "expected two decimal strings")
    try:
        return np.array([float(p[0]), float(p[1])])
    except (TypeError, ValueError):
        raise SchemaError(ptr, "not a decimal number") from None


def s_table(flex: ParametricFlex) -> list[list[str]]:
    if flex.s_params is None:
        return []
    t0, t1 = flex.domain
    n = int(np.floor((t1 - t0) / S_TABLE_STEP + 1e-9)) + 1
    ts = t0 + S_TABLE_STEP * np.arange(n)
    return [[fmt(t), fmt(s)] for t, s in zip(ts, flex.s_of(ts))]


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (np.floating, float)):
        return fmt_exact(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def flex_to_json(flex: ParametricFlex, name: str = "", coords: Optional[Mapping] = None) -> dict:
    g = flex.graph
    coeffs = {"A": flex.A, "Ap": flex.Ap, "Z": flex.Z}
    if flex.B is not None:
        coeffs["B"] = flex.B
        coeffs["Bp"] = flex.Bp
    out: dict[str, Any] = {
        "format": FLEX_FORMAT,
        "kind": flex.kind,
        "graph": make_document(g, coords, name=name).to_json(),
        "coefficients": {k: {v: _vec(m[v]) for v in g.vertices} for k, m in coeffs.items()},
        "domain": [fmt_exact(flex.domain[0]), fmt_exact(flex.domain[1])],
    }
    if flex.colouring is not None:
        out["colouring"] = colouring_to_json(flex.colouring)
    if flex.s_params is not None:
        out["s"] = {k: fmt_exact(v) for k, v in flex.s_params.items()}
        out["s_table"] = s_table(flex)
    if flex.probes:
        out["probes"] = {p: {k: _vec(v) for k, v in c.items()} for p, c in flex.probes.items()}
    meta = {k: _plain(v) for k, v in flex.meta.items() if k != "second_colouring"}
    if "second_colouring" in flex.meta:
        meta["second_colouring"] = colouring_to_json(flex.meta["second_colouring"])
    out["meta"] = meta
    return out


def emit_flex(flex: ParametricFlex, name: str = "", coords: Optional[Mapping] = None) -> str:
    return dumps(flex_to_json(flex, name, coords))


def parse_flex(text: str) -> ParametricFlex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc.msg}") from None
    _expect(isinstance(data, dict) and data.get("format") == FLEX_FORMAT, "/format",
            "not a flex document")
    doc = graph_from_json(data.get("graph"), "/graph")
    g = doc.graph()
    coeffs = data.get("coefficients")
    _expect(isinstance(coeffs, dict), "/coefficients", "expected an object")
    maps = {}
    for key in ("A", "Ap", "Z", "B", "Bp"):
        if key not in coeffs:
            _expect(key in ("B", "Bp"), f"/coefficients/{key}", "missing")
            continue
        raw = coeffs[key]
        _expect(isinstance(raw, dict), f"/coefficients/{key}", "expected an object")
        maps[key] = {}
        for v in g.vertices:
            _expect(v in raw, f"/coefficients/{key}/{_escape(v)}", "missing vertex")
            maps[key][v] = _unvec(raw[v], f"/coefficients/{key}/{_escape(v)}")
    dom = data.get("domain")
    _expect(isinstance(dom, list) and len(dom) == 2, "/domain", "expected two numbers")
    domain = (float(dom[0]), float(dom[1]))
    s_params = None
    if "s" in data:
        s_params = {k: float(v) for k, v in data["s"].items()}
    colouring = None
    if "colouring" in data:
        colouring = {edge_key(*k.split("-")): c for k, c in data["colouring"].items()}
    meta = dict(data.get("meta", {}))
    if "second_colouring" in meta:
        meta["second_colouring"] = {edge_key(*k.split("-")): c for k, c in meta["second_colouring"].items()}
    probes = {}
    for p, c in data.get("probes", {}).items():
        probes[p] = {k: _unvec(v, f"/probes/{_escape(p)}/{k}") for k, v in c.items()}
    return ParametricFlex(
        graph=g, A=maps["A"], Ap=maps["Ap"], Z=maps["Z"], domain=domain,
        B=maps.get("B"), Bp=maps.get("Bp"), s_params=s_params,
        kind=data.get("kind", "grid"), colouring=colouring, probes=probes,
        meta=meta,
    )


def samples_to_json(flex: ParametricFlex, samples) -> dict:
    """Sampled realisations; flexes with an ``s`` channel also record s(t)."""
    out = []
    for t, pos in samples:
        item = {"t": fmt(t), "positions": {v: [fmt(p[0]), fmt(p[1])] for v, p in sorted(pos.items())}}
        if flex.s_params is not None:
            item["s"] = fmt(float(flex.s_of(t)))
        out.append(item)
    return {"kind": flex.kind, "samples": out}
