"""Named example graphs with reflections, realisations and colourings.

Drawn examples are transcribed from figure source coordinates; families
(``gk``, ``strip``) are generated.  Every fixture carries a short provenance
string that is written into emitted documents.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .colourings import BLUE, GOLD, RED, Colouring, normalize_colouring
from .graph_core import SymmetricGraph, edge_key, gk_graph, validate_symmetry


@dataclass
class Fixture:
    name: str
    graph: SymmetricGraph
    coords: Optional[dict[str, np.ndarray]] = None
    colourings: dict[str, Colouring] = field(default_factory=dict)
    provenance: str = ""
    notes: dict = field(default_factory=dict)


def mirror_sigma(coords: Mapping[str, tuple[float, float]], tol: float = 1e-6) -> dict[str, str]:
    """Reflection read off coordinates: v maps to the vertex at (-x, y)."""
    sigma = {}
    pts = {v: np.asarray(p, float) for v, p in coords.items()}
    for v, p in pts.items():
        target = np.array([-p[0], p[1]])
        hits = [w for w, q in pts.items() if np.linalg.norm(q - target) < tol]
        if len(hits) != 1:
            raise ValueError(f"no unique mirror image for vertex {v}")
        sigma[v] = hits[0]
    return sigma


def _colouring(g, red=(), blue=(), gold=()) -> Colouring:
    col = {}
    for names, colour in ((red, RED), (blue, BLUE), (gold, GOLD)):
        for e in names:
            col[edge_key(*e.split("-"))] = colour
    return normalize_colouring(g, col)


def _pairs(text: str) -> list[str]:
    return text.split()


def _coords(raw: Mapping) -> dict[str, np.ndarray]:
    return {str(v): np.array(p, dtype=float) for v, p in raw.items()}


# ----------------------------------------------------------------------
# small examples
# ----------------------------------------------------------------------

def c4_antipodal() -> Fixture:
    # a crossed quadrilateral realises the antipodal involution as a mirror
    coords = _coords({"1": (-1, 0), "2": (-0.5, 1), "3": (1, 0), "4": (0.5, 1)})
    g = validate_symmetry(coords, [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")],
                          mirror_sigma(coords))
    return Fixture("c4_antipodal", g, coords,
                   {"c0": _colouring(g, red=["1-2", "2-3"], blue=["3-4", "1-4"])},
                   "generated: 4-cycle with the antipodal involution (1 3)(2 4)")


def c4_axial() -> Fixture:
    coords = _coords({"1": (-1, 0), "2": (1, 0), "3": (1, 1.5), "4": (-1, 1.5)})
    g = validate_symmetry(coords, [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")],
                          mirror_sigma(coords))
    return Fixture("c4_axial", g, coords, {},
                   "generated: rectangle with the mirror (1 2)(3 4)")


def k3_mirror() -> Fixture:
    coords = _coords({"1": (0, 1), "2": (1, 0), "3": (-1, 0)})
    g = validate_symmetry(coords, [("1", "2"), ("2", "3"), ("1", "3")], {"2": "3", "3": "2"})
    return Fixture("k3_mirror", g, coords, {}, "generated: triangle with sigma = (2 3)")


def c4_rhombus() -> Fixture:
    """Rhombus symmetric in the y-axis, sigma swaps the side vertices."""
    coords = _coords({"1": (0, -1), "2": (1, 0), "3": (0, 1), "4": (-1, 0)})
    g = validate_symmetry(coords, [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")],
                          mirror_sigma(coords))
    return Fixture("c4_rhombus", g, coords,
                   {"c0": _colouring(g, red=["1-2", "3-4"], blue=["2-3", "1-4"])},
                   "generated: rhombus with its vertical mirror")


# ----------------------------------------------------------------------
# transcribed drawings
# ----------------------------------------------------------------------

def fig2() -> Fixture:
    coords = _coords({
        "1": (-0.51, 0), "2": (0.51, 0), "3": (0, 0.74), "4": (-1.35, 0.56),
        "5": (-0.76, 1.4), "6": (0, 2.1), "7": (0.76, 1.4), "8": (1.35, 0.56),
    })
    edges = [e.split("-") for e in _pairs("1-2 1-3 1-4 2-3 2-8 3-5 3-7 4-5 5-6 6-7 7-8")]
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    cols = {
        "c0": _colouring(g, gold=_pairs("1-2 1-3 2-3 4-5 7-8"),
                         blue=_pairs("1-4 3-5 5-6"), red=_pairs("2-8 3-7 6-7")),
        "c1": _colouring(g, gold=_pairs("1-2 1-3 2-3 4-5 7-8"),
                         blue=_pairs("1-4 3-5 6-7"), red=_pairs("2-8 3-7 5-6")),
        "c2": _colouring(g, gold=_pairs("1-2 1-3 2-3 3-5 3-7 5-6 6-7"),
                         blue=_pairs("1-4 4-5"), red=_pairs("2-8 7-8")),
        "c3": _colouring(g, gold=_pairs("1-2 1-3 1-4 2-3 2-8"),
                         blue=_pairs("3-5 4-5 5-6"), red=_pairs("3-7 6-7 7-8")),
        "c4": _colouring(g, gold=_pairs("1-2 1-3 1-4 2-3 2-8"),
                         blue=_pairs("3-5 4-5 6-7"), red=_pairs("3-7 5-6 7-8")),
    }
    return Fixture("fig2", g, coords, cols,
                   "transcribed: eight-vertex graph with its five pseudo-RS-colourings up to conjugation")


def fig3() -> Fixture:
    coords = _coords({
        "1": (0.6, -0.8), "2": (0.9, 0.3), "3": (0, 1.8), "4": (-0.9, 0.3),
        "5": (-0.6, -0.8), "6": (1.4, -0.5), "7": (-1.4, -0.5), "8": (0, -1.8),
        "1a": (1.6, -1.5), "2a": (1.9, -0.4), "6a": (2.4, -1.2),
        "5a": (-1.6, -1.5), "4a": (-1.9, -0.4), "7a": (-2.4, -1.2),
        "8b": (1, -2.5), "5b": (0.4, -1.5), "8c": (-1, -2.5), "1c": (-0.4, -1.5),
    })
    gold = _pairs("1-5 8-5 1-8 1a-5b 8b-5b 1a-8b 1c-5a 8c-5a 1c-8c")
    blue1 = _pairs("4-3 4a-3 2-1 6-1 2-6 2a-1a 6a-1a 2a-6a 4-4a 5-5a 7-7a 8-8c 1-1c")
    red1 = _pairs("2-3 2a-3 5-4 7-5 4-7 1-1a 2-2a 6-6a 5a-4a 7a-5a 4a-7a 8-8b 5-5b")
    blue2 = _pairs("2-1 6-1 2-6 2a-1a 6a-1a 2a-6a 2-3 2a-3 2-2a 1-1a 8-8b 5-5b 6-6a")
    red2 = _pairs("5-4 7-5 4-7 5a-4a 7a-5a 4a-7a 4-4a 4-3 4a-3 8-8c 5-5a 7-7a 1-1c")
    edges = [e.split("-") for e in gold + blue1 + red1]
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    cols = {
        "c0": _colouring(g, gold=gold, blue=blue1, red=red1),
        "c1": _colouring(g, gold=gold, blue=blue2, red=red2),
    }
    return Fixture("fig3", g, coords, cols,
                   "transcribed: two RS-colourings certifying each other, invariant vertex 3",
                   notes={"w": "3"})


_PENTAGON = {
    "1": (0.587785, -0.809017), "2": (0.951057, 0.309017), "3": (0.0, 1.0),
    "4": (-0.951057, 0.309017), "5": (-0.587785, -0.809017),
    "6": (0.2, 0.125), "7": (-0.2, 0.125),
}
_PENTAGON_BLUE = _pairs("2-3 1-2 1-6 2-6 3-6")
_PENTAGON_RED = _pairs("3-4 4-5 4-7 5-7 3-7")


def fig4_left() -> Fixture:
    coords = _coords(_PENTAGON)
    edges = [e.split("-") for e in ["1-5"] + _PENTAGON_BLUE + _PENTAGON_RED]
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    col = _colouring(g, gold=["1-5"], blue=_PENTAGON_BLUE, red=_PENTAGON_RED)
    return Fixture("fig4_left", g, coords, {"c0": col},
                   "transcribed: pseudo-RS-colouring of a pentagon graph without RS-colourings")


def _rotate(p, centre, degrees):
    th = math.radians(degrees)
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    return centre + rot @ (np.asarray(p, float) - centre)


def _two_copies(local: Mapping[str, tuple], local_edges: list[str]):
    """Copies rotated +60 degrees about b and -60 degrees about a, merged by position."""
    a = np.array(_PENTAGON["1"])
    b = np.array(_PENTAGON["5"])
    placed = {"a": a, "b": b}
    edges = [("a", "b")]
    for prefix, centre, angle in (("L", b, 60.0), ("R", a, -60.0)):
        rename = {}
        for v, p in local.items():
            q = _rotate(p, centre, angle)
            hit = next((w for w, r in placed.items() if np.linalg.norm(r - q) < 1e-5), None)
            if hit is None:
                hit = prefix + v
                placed[hit] = q
            rename[v] = hit
        edges += [(rename[u], rename[v]) for u, v in (e.split("-") for e in local_edges)]
    # the shared apex of the two copies lies on the axis
    apex = [v for v, p in placed.items() if abs(p[0]) < 1e-5]
    assert len(apex) == 1
    placed["X"] = placed.pop(apex[0])
    edges = [tuple("X" if x == apex[0] else x for x in e) for e in edges]
    for v, p in placed.items():
        placed[v] = np.array([0.0 if abs(p[0]) < 1e-9 else p[0], p[1]])
    return placed, edges


def fig4_right() -> Fixture:
    coords, edges = _two_copies(_PENTAGON, ["1-5"] + _PENTAGON_BLUE + _PENTAGON_RED)
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    return Fixture("fig4_right", g, coords, {},
                   "transcribed: two rotated pentagon copies joined by a gold edge")


def fig6() -> Fixture:
    local = dict(_PENTAGON)
    mid = (np.array(_PENTAGON["1"]) + np.array(_PENTAGON["5"])) / 2
    local["8"] = tuple(mid + (0, 0.2))
    local["9"] = tuple(mid + (0, -0.2))
    diamond = _pairs("1-8 1-9 5-8 5-9 8-9")
    coords, edges = _two_copies(local, diamond + _PENTAGON_BLUE + _PENTAGON_RED)
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    return Fixture("fig6", g, coords, {},
                   "transcribed: pentagon copies with diamonds; its gold-closure adds two edges")


def colourcomb() -> Fixture:
    """Graph whose two RS-colourings fail the all-combinations condition."""
    def polar(p, deg, r):
        return p + r * np.array([math.cos(math.radians(deg)), math.sin(math.radians(deg))])

    c = {"1l": np.array([-2.0, 0.0]), "1r": np.array([2.0, 0.0])}
    c["2l"] = polar(c["1l"], 108, 4)
    c["2r"] = polar(c["1r"], 72, 4)
    c["w"] = polar(c["2r"], 144, 4)
    c["3l"] = polar(c["w"], -110, 3)
    c["3r"] = polar(c["w"], -70, 3)
    c["4l"] = polar(c["3l"], 200, 0.75)
    c["4r"] = polar(c["3r"], -20, 0.75)
    c["5l"] = polar(c["4l"], 180, 0.5)
    c["5r"] = polar(c["4r"], 0, 0.5)
    c["6l"] = polar(c["5l"], 140, 0.5)
    c["6r"] = polar(c["5r"], 40, 0.5)
    c["8l"] = np.array([-1.0, 1.2])
    c["8r"] = np.array([1.0, 1.2])
    c["7l"] = polar(c["8l"], 140, 1.2)
    c["7r"] = polar(c["8r"], 40, 1.2)
    c["9l"] = polar(c["8l"], 30, 1.8)
    c["9r"] = polar(c["8r"], 150, 1.8)
    c["10l"] = polar(c["9l"], 30, 0.75)
    c["10r"] = polar(c["9r"], 150, 0.75)
    c["w"][0] = 0.0
    g1_red = _pairs("1l-2l 2r-w 3r-w 3r-4r 6r-2r 3r-7r 7r-8r 3r-10l 9l-10l 4l-5l 5l-6l")
    g1_blue = _pairs("1r-2r 2l-w 3l-w 3l-4l 6l-2l 3l-7l 7l-8l 3l-10r 9r-10r 4r-5r 5r-6r")
    gold = _pairs("1l-1r 8r-9r 8l-9l")
    g2_red = _pairs("1r-2r 2r-w 3r-w 3l-4l 4r-5r 5r-6r 6l-2l 3l-7l 7r-8r 3r-10l 9l-10l")
    g2_blue = _pairs("1l-2l 2l-w 3l-w 3r-4r 4l-5l 5l-6l 6r-2r 3r-7r 7l-8l 3l-10r 9r-10r")
    edges = [e.split("-") for e in gold + g1_red + g1_blue]
    sigma = {}
    for v in c:
        if v.endswith("l"):
            sigma[v] = v[:-1] + "r"
            sigma[v[:-1] + "r"] = v
    g = validate_symmetry(c, edges, sigma)
    cols = {"c0": _colouring(g, gold=gold, red=g1_red, blue=g1_blue),
            "c1": _colouring(g, gold=gold, red=g2_red, blue=g2_blue)}
    return Fixture("colourcomb", g, c, cols,
                   "transcribed: two RS-colourings violating the all-combinations condition",
                   notes={"w": "w"})


def walkindep_example() -> Fixture:
    """The eight-vertex graph of ``fig2`` realised as a walk-independent framework."""
    w = math.radians(70)
    a1 = 1.25 * np.array([math.cos(w), math.sin(w)])
    sa1 = np.array([-a1[0], a1[1]])
    d1 = np.array([0.0, 0.75])
    dt1 = np.array([0.5, 0.0])
    coords = {"1": -dt1, "2": dt1, "3": d1, "4": sa1 - dt1, "5": sa1 + d1,
              "6": a1 + sa1 + d1, "7": a1 + d1, "8": a1 + dt1}
    coords["6"][0] = 0.0
    base = fig2()
    return Fixture("walkindep", base.graph, coords, dict(base.colourings),
                   "transcribed: walk-independent realisation of the eight-vertex graph")


def gk(k: int) -> Fixture:
    g = gk_graph(k)
    coords = {"l0": np.array([-1.0, 0.0]), "r0": np.array([1.0, 0.0])}
    for i in range(1, k + 1):
        coords[f"l{i}"] = np.array([-1.5 - 0.3 * i, 0.8 * i])
        coords[f"r{i}"] = np.array([1.5 + 0.3 * i, 0.8 * i])
        coords[f"m{i}"] = np.array([0.0, 0.9 * i + 0.3])
    return Fixture(f"gk{k}", g, coords, {}, f"generated: G_k family with k = {k}")


def triangle_chain() -> Fixture:
    coords = _coords({
        "u": (0, 0), "a": (-1, 1), "a'": (1, 1), "b": (-1, 2.2), "b'": (1, 2.2),
        "p": (-1, -1), "p'": (1, -1), "q": (0, -2.3),
    })
    edges = [e.split("-") for e in _pairs("u-a u-a' a-a' a-b a-b' a'-b' a'-b b-b' u-p u-p' p-q p'-q")]
    g = validate_symmetry(coords, edges, mirror_sigma(coords))
    return Fixture("gadget-triangle-chain", g, coords, {},
                   "generated: invariant vertex below two stacked mirrored triangles, with a flexible tail")


# ----------------------------------------------------------------------
# parallelogram strips
# ----------------------------------------------------------------------

def strip(m: int, n: int, seed: int = 0, brace: int = 0, triangles: int = 0) -> Fixture:
    """Axis-symmetric ``m`` x ``n`` patch of parallelograms.

    Vertex ``i.j`` sits at column ``i`` and row ``j``; the mirror maps column
    ``i`` to ``m - i``.  ``brace`` symmetric pairs of squares get one diagonal
    each (the middle column of an odd strip gets both) and ``triangles``
    symmetric pairs of boundary edges get an outward triangle.
    """
    if m < 1 or n < 1:
        raise ValueError("strip needs m, n >= 1")
    rng = random.Random(seed)
    steps = [None] * m
    for k in range((m + 1) // 2):
        x = rng.uniform(0.8, 1.5)
        y = 0.0 if 2 * k + 1 == m else rng.uniform(-0.4, 0.4)
        steps[k] = np.array([x, y])
        steps[m - 1 - k] = np.array([x, -y])
    heights = [rng.uniform(0.8, 1.5) for _ in range(n)]
    total = sum(s[0] for s in steps)

    def name(i, j):
        return f"{i}.{j}"

    coords: dict[str, np.ndarray] = {}
    for i in range(m + 1):
        base = np.array([-total / 2, 0.0]) + sum(steps[:i], np.zeros(2))
        for j in range(n + 1):
            p = base + np.array([0.0, sum(heights[:j])])
            coords[name(i, j)] = p
    for i in range(m + 1):
        if 2 * i == m:
            for j in range(n + 1):
                coords[name(i, j)][0] = 0.0

    def mirror(i, j):
        return m - i, j

    edges = set()
    for i in range(m + 1):
        for j in range(n + 1):
            if i < m:
                edges.add(edge_key(name(i, j), name(i + 1, j)))
            if j < n:
                edges.add(edge_key(name(i, j), name(i, j + 1)))

    squares = [(i, j) for i in range((m + 1) // 2) for j in range(n)]
    rng.shuffle(squares)
    for i, j in squares[:brace]:
        mi = m - 1 - i
        if mi == i:
            edges.add(edge_key(name(i, j), name(i + 1, j + 1)))
            edges.add(edge_key(name(i + 1, j), name(i, j + 1)))
        else:
            edges.add(edge_key(name(i, j), name(i + 1, j + 1)))
            # mirror image of the diagonal (i,j)-(i+1,j+1)
            edges.add(edge_key(name(*mirror(i, j)), name(*mirror(i + 1, j + 1))))

    # boundary edges on the left half (and the middle), each at most one triangle
    boundary = [("h", i, 0) for i in range((m + 1) // 2)]
    boundary += [("h", i, n) for i in range((m + 1) // 2)]
    boundary += [("v", 0, j) for j in range(n)]
    rng.shuffle(boundary)
    apex_id = 0
    for kind, i, j in boundary[:triangles]:
        if kind == "h":
            u, v = (i, j), (i + 1, j)
            out = np.array([0.0, -1.0 if j == 0 else 1.0])
        else:
            u, v = (0, j), (0, j + 1)
            out = np.array([-1.0, 0.0])
        pu, pv = coords[name(*u)], coords[name(*v)]
        apex = (pu + pv) / 2 + 0.55 * out + 0.1 * (pv - pu) * rng.uniform(-1, 1)
        images = [(u, v, apex)]
        mu, mv = mirror(*u), mirror(*v)
        if {mu, mv} != {u, v}:
            images.append((mu, mv, np.array([-apex[0], apex[1]])))
        else:
            images = [(u, v, np.array([0.0, apex[1]]))]
        for uu, vv, pos in images:
            t = f"t{apex_id}"
            apex_id += 1
            coords[t] = pos
            edges.add(edge_key(t, name(*uu)))
            edges.add(edge_key(t, name(*vv)))

    g = validate_symmetry(coords, sorted(edges), mirror_sigma(coords))
    return Fixture(f"strip-{m}x{n}", g, coords, {},
                   f"generated: parallelogram strip m={m} n={n} seed={seed} brace={brace} triangles={triangles}")


CATALOG = {
    "c4_antipodal": c4_antipodal,
    "c4_axial": c4_axial,
    "c4_rhombus": c4_rhombus,
    "k3_mirror": k3_mirror,
    "fig2": fig2,
    "fig3": fig3,
    "fig4_left": fig4_left,
    "fig4_right": fig4_right,
    "fig6": fig6,
    "colourcomb": colourcomb,
    "walkindep": walkindep_example,
}


def load(name: str, **params) -> Fixture:
    if name in CATALOG:
        return CATALOG[name]()
    if name == "gk":
        return gk(int(params.get("k", 3)))
    if name == "strip":
        return strip(int(params.get("m", 2)), int(params.get("n", 1)),
                     seed=int(params.get("seed", 0)), brace=int(params.get("brace", 0)),
                     triangles=int(params.get("triangles", 0)))
    if name in ("gadget", "triangle-chain", "gadget-triangle-chain"):
        return triangle_chain()
    raise KeyError(f"unknown fixture {name!r}")
