"""Frameworks, angle-preserving classes and walk-independence."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .colourings import (
    BLUE,
    GOLD,
    RED,
    Colouring,
    _UnionFind,
    normalize_colouring,
)
from .graph_core import (
    TAU,
    Edge,
    Graph,
    SymmetricGraph,
    cycle_basis,
    cycle_edges,
    edge_key,
)


@dataclass
class Framework:
    graph: SymmetricGraph
    p: dict[str, np.ndarray]

    def __post_init__(self):
        self.p = {str(v): np.asarray(x, float) for v, x in self.p.items()}
        missing = [v for v in self.graph.vertices if v not in self.p]
        if missing:
            raise ValueError(f"no position for vertex {missing[0]}")
        for u, v in self.graph.edges:
            if np.allclose(self.p[u], self.p[v], atol=0, rtol=0):
                raise ValueError(f"edge {u}-{v} has coincident endpoints")

    def lengths(self) -> dict[Edge, float]:
        return {e: float(np.linalg.norm(self.p[e[0]] - self.p[e[1]])) for e in self.graph.edges}

    def symmetry_residual(self) -> float:
        return max(float(np.abs(self.p[self.graph.sigma[v]] - TAU @ self.p[v]).max())
                   for v in self.graph.vertices)

    def is_symmetric(self, tol: float = 1e-9) -> bool:
        return self.symmetry_residual() <= tol


# ----------------------------------------------------------------------
# angle-preserving classes
# ----------------------------------------------------------------------

def triangles(g: Graph) -> list[tuple[str, str, str]]:
    out = []
    for u, v in g.edges:
        for w in g.adjacency[u]:
            if w > v and g.has_edge(v, w):
                out.append((u, v, w))
    return out


def four_cycles(g: Graph, induced: bool = False) -> list[tuple[str, str, str, str]]:
    """4-cycles ``(u, x, w, y)`` listed once each; ``induced`` drops those with a chord."""
    found = set()
    for u, w in itertools.combinations(g.vertices, 2):
        common = sorted(set(g.adjacency[u]) & set(g.adjacency[w]))
        for x, y in itertools.combinations(common, 2):
            cyc = (u, x, w, y)
            key = frozenset(cycle_edges(cyc))
            if key in found:
                continue
            if induced and (g.has_edge(u, w) or g.has_edge(x, y)):
                continue
            found.add(key)
    out = []
    for key in found:
        # rebuild a vertex order from the edge set
        edges = sorted(key)
        u, x = edges[0]
        nxt = {}
        for a, b in edges:
            nxt.setdefault(a, []).append(b)
            nxt.setdefault(b, []).append(a)
        w = next(z for z in nxt[x] if z != u)
        y = next(z for z in nxt[w] if z != x)
        out.append((u, x, w, y))
    return sorted(out)


@dataclass
class APCPartition:
    classes: list[tuple[Edge, ...]]
    class_of: dict[Edge, int]
    mirror: list[int] = field(default_factory=list)

    def is_invariant(self, i: int) -> bool:
        return self.mirror[i] == i


def angle_preserving_classes(g: Graph) -> APCPartition:
    """Edge classes of the closure of triangle-sharing and 4-cycle opposition."""
    uf = _UnionFind(range(len(g.edges)))
    idx = g.edge_index
    for u, v, w in triangles(g):
        a, b, c = idx[edge_key(u, v)], idx[edge_key(v, w)], idx[edge_key(u, w)]
        uf.union(a, b)
        uf.union(a, c)
    for cyc in four_cycles(g):
        e = cycle_edges(cyc)
        uf.union(idx[e[0]], idx[e[2]])
        uf.union(idx[e[1]], idx[e[3]])
    groups: dict[int, list[Edge]] = {}
    for e in g.edges:
        groups.setdefault(uf.find(idx[e]), []).append(e)
    classes = sorted(tuple(sorted(c)) for c in groups.values())
    class_of = {e: i for i, c in enumerate(classes) for e in c}
    mirror = []
    if isinstance(g, SymmetricGraph):
        for c in classes:
            images = {class_of[g.sigma_edge(e)] for e in c}
            assert len(images) == 1, "sigma does not permute angle-preserving classes"
            mirror.append(images.pop())
    return APCPartition(classes, class_of, mirror)


def noninvariant_apc(g: SymmetricGraph, apcs: Optional[APCPartition] = None) -> Optional[tuple[Edge, ...]]:
    apcs = apcs or angle_preserving_classes(g)
    for i, c in enumerate(apcs.classes):
        if not apcs.is_invariant(i):
            return c
    return None


class ClassInvariant(ValueError):
    pass


def cartesian_from_apc(g: SymmetricGraph, r: Union[int, Sequence[Edge]],
                       apcs: Optional[APCPartition] = None) -> Colouring:
    """Colour class ``r`` red, its mirror class blue and everything else gold."""
    apcs = apcs or angle_preserving_classes(g)
    i = r if isinstance(r, int) else apcs.class_of[edge_key(*r[0])]
    if apcs.is_invariant(i):
        raise ClassInvariant("angle-preserving class is mapped to itself")
    red = set(apcs.classes[i])
    blue = set(apcs.classes[apcs.mirror[i]])
    return {e: RED if e in red else BLUE if e in blue else GOLD for e in g.edges}


def apc_pattern_check(g: SymmetricGraph, colouring: Mapping, apcs: Optional[APCPartition] = None) -> bool:
    """Red and blue occur, classes are monochromatic, invariant classes gold,
    and each mirrored pair of classes is gold/gold or red/blue."""
    colouring = normalize_colouring(g, colouring)
    apcs = apcs or angle_preserving_classes(g)
    if not {RED, BLUE} <= set(colouring.values()):
        return False
    colour_of = []
    for c in apcs.classes:
        cols = {colouring[e] for e in c}
        if len(cols) != 1:
            return False
        colour_of.append(cols.pop())
    for i, c in enumerate(colour_of):
        j = apcs.mirror[i]
        if i == j and c != GOLD:
            return False
        if (c == GOLD) != (colour_of[j] == GOLD):
            return False
        if c == RED and colour_of[j] != BLUE:
            return False
    return True


# ----------------------------------------------------------------------
# walk-independence
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WalkCheck:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def is_walk_independent(fw: Framework, tol: float = 1e-9,
                        apcs: Optional[APCPartition] = None) -> WalkCheck:
    g, p = fw.graph, fw.p
    for u, v in itertools.combinations(g.vertices, 2):
        if np.linalg.norm(p[u] - p[v]) <= tol:
            return WalkCheck(False, "NotInjective", (u, v))
    for cyc in four_cycles(g, induced=True):
        a, b, c, d = (p[v] for v in cyc)
        if np.abs(a - b + c - d).max() > tol:
            return WalkCheck(False, "NotParallelogram", cyc)
        e1 = (b - a) / np.linalg.norm(b - a)
        e2 = (d - a) / np.linalg.norm(d - a)
        if abs(e1[0] * e2[1] - e1[1] * e2[0]) < 1e-9:
            return WalkCheck(False, "DegenerateParallelogram", cyc)
    apcs = apcs or angle_preserving_classes(g)
    for cyc in cycle_basis(g):
        sums = np.zeros((len(apcs.classes), 2))
        n = len(cyc)
        for k in range(n):
            u, v = cyc[k], cyc[(k + 1) % n]
            sums[apcs.class_of[edge_key(u, v)]] += p[v] - p[u]
        bad = np.nonzero(np.abs(sums).max(axis=1) > tol)[0]
        if len(bad):
            return WalkCheck(False, "ClassSumNonzero", (cyc, int(bad[0])))
    return WalkCheck(True)


FLEXIBLE = "Flexible"
RIGID = "Rigid"
NOT_APPLICABLE = "NotApplicable"


@dataclass
class TPDecision:
    status: str
    reason: str = ""
    colouring: Optional[Colouring] = None
    flex: object = None
    report: object = None


def decide_tp_flexibility(fw: Framework, tol: float = 1e-9, n_samples: int = 200) -> TPDecision:
    """Reflection-symmetric flexibility of a walk-independent framework."""
    from .flexes import verify_flex, walkindep_flex

    if not fw.is_symmetric(tol):
        return TPDecision(NOT_APPLICABLE, "framework is not reflection-symmetric")
    check = is_walk_independent(fw, tol)
    if not check:
        return TPDecision(NOT_APPLICABLE, f"not walk-independent: {check.reason}")
    apcs = angle_preserving_classes(fw.graph)
    r = noninvariant_apc(fw.graph, apcs)
    if r is None:
        return TPDecision(RIGID, "no non-invariant angle-preserving class")
    colouring = cartesian_from_apc(fw.graph, r, apcs)
    flex = walkindep_flex(fw, colouring, tol=tol)
    report = verify_flex(fw.graph, flex, n_samples)
    return TPDecision(FLEXIBLE, "", colouring, flex, report)
