"""Graphs with a reflection (non-identity involutive automorphism) and the
small graph algorithms the rest of the package is built on.

Vertices are opaque strings ordered lexicographically; an edge is the sorted
pair ``(u, v)`` with ``u < v``.  Every operation is a pure function and every
value is immutable after construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, NamedTuple, Union

import numpy as np

Edge = tuple[str, str]

#: Mirror through the y-axis.
TAU = np.array([[-1.0, 0.0], [0.0, 1.0]])

DEFAULT_PATH_CAP = 10_000


def edge_key(u, v) -> Edge:
    u, v = str(u), str(v)
    return (u, v) if u < v else (v, u)


def format_edge(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


# ----------------------------------------------------------------------
# errors
# ----------------------------------------------------------------------

class SymmetryError(ValueError):
    """Rejected input; ``invariant`` names the violated property."""

    invariant = "symmetric-graph"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSimple(SymmetryError):
    invariant = "simple"


class NotInvolution(SymmetryError):
    invariant = "involution"


class IdentityMap(SymmetryError):
    invariant = "non-identity"


class NotAutomorphism(SymmetryError):
    invariant = "automorphism"


class Disconnected(SymmetryError):
    invariant = "connected"


# ----------------------------------------------------------------------
# graphs
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.  Use :func:`make_graph` to build one."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edge_set

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SymmetricGraph(Graph):
    """A connected simple graph together with a validated reflection ``sigma``."""

    sigma: Mapping[str, str] = field(default_factory=dict)

    def sigma_edge(self, e: Edge) -> Edge:
        return edge_key(self.sigma[e[0]], self.sigma[e[1]])

    def is_invariant_vertex(self, v: str) -> bool:
        return self.sigma[v] == v

    def is_invariant_edge(self, e: Edge) -> bool:
        return self.sigma_edge(e) == e

    @cached_property
    def invariant_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.sigma[v] == v)

    @cached_property
    def invariant_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if self.sigma_edge(e) == e)

    def with_edges(self, extra: Iterable[Edge]) -> "SymmetricGraph":
        """Return the graph with ``extra`` edges added, revalidated."""
        return validate_symmetry(self.vertices, list(self.edges) + list(extra), self.sigma)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, tuple(sorted(self.sigma.items()))))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and dict(self.sigma) == dict(other.sigma))


def make_graph(vertices: Iterable, edges: Iterable) -> Graph:
    """Plain graph constructor; rejects loops, parallel edges and unknown endpoints."""
    verts = tuple(sorted({str(v) for v in vertices}))
    vset = set(verts)
    seen: set[Edge] = set()
    for u, v in edges:
        e = edge_key(u, v)
        if e[0] == e[1]:
            raise NotSimple(f"loop at vertex {e[0]}", witness=e)
        if e[0] not in vset or e[1] not in vset:
            raise NotSimple(f"edge {format_edge(e)} has an undeclared endpoint", witness=e)
        if e in seen:
            raise NotSimple(f"parallel edge {format_edge(e)}", witness=e)
        seen.add(e)
    return Graph(verts, tuple(sorted(seen)))


def validate_symmetry(vertices: Iterable, edges: Iterable, sigma: Mapping) -> SymmetricGraph:
    """Validate a graph with a reflection.

    Vertices missing from ``sigma`` are fixed points, so cycle notation such as
    ``{"2": "3", "3": "2"}`` is accepted for K3.  Raises a subclass of
    :class:`SymmetryError` naming the violated invariant and a witness.
    """
    g = make_graph(vertices, edges)
    vset = set(g.vertices)
    s: dict[str, str] = {v: v for v in g.vertices}
    for k, v in sigma.items():
        k, v = str(k), str(v)
        if k not in vset:
            raise NotInvolution(f"sigma maps undeclared vertex {k}", witness=k)
        if v not in vset:
            raise NotInvolution(f"sigma maps {k} to undeclared vertex {v}", witness=k)
        s[k] = v
    for v in g.vertices:
        if s[s[v]] != v:
            raise NotInvolution(f"sigma(sigma({v})) = {s[s[v]]} != {v}", witness=v)
    if all(s[v] == v for v in g.vertices):
        raise IdentityMap("sigma is the identity", witness=None)
    for e in g.edges:
        img = edge_key(s[e[0]], s[e[1]])
        if img not in g.edge_set:
            raise NotAutomorphism(
                f"edge {format_edge(e)} maps to non-edge {format_edge(img)}", witness=e)
    comps = _components(g.vertices, g.adjacency)
    if len(comps) > 1:
        raise Disconnected(
            f"graph has {len(comps)} components", witness=comps[1][0])
    return SymmetricGraph(g.vertices, g.edges, s)


# ----------------------------------------------------------------------
# orbits and components
# ----------------------------------------------------------------------

class EdgeOrbit(NamedTuple):
    representative: Edge
    mirror: Edge
    is_invariant: bool

    @property
    def edges(self) -> tuple[Edge, ...]:
        return (self.representative,) if self.is_invariant else (self.representative, self.mirror)


def edge_orbits(g: SymmetricGraph) -> list[EdgeOrbit]:
    seen: set[Edge] = set()
    out = []
    for e in g.edges:
        if e in seen:
            continue
        m = g.sigma_edge(e)
        seen.update((e, m))
        rep, mir = min(e, m), max(e, m)
        out.append(EdgeOrbit(rep, mir, rep == mir))
    return sorted(out)


EdgePredicate = Union[Callable[[Edge], bool], Iterable[Edge]]


def _as_predicate(keep: EdgePredicate | None) -> Callable[[Edge], bool]:
    if keep is None:
        return lambda e: True
    if callable(keep):
        return keep
    allowed = {edge_key(*e) for e in keep}
    return allowed.__contains__


def _components(vertices, adjacency) -> list[tuple[str, ...]]:
    seen: set[str] = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        seen.add(v)
        comp = [v]
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


def components(g: Graph, keep: EdgePredicate | None = None) -> list[tuple[str, ...]]:
    """Connected components of the spanning subgraph on edges satisfying ``keep``.

    Components are sorted tuples, ordered by their smallest vertex.
    """
    pred = _as_predicate(keep)
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if pred(e):
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
    return _components(g.vertices, adj)


def component_labels(g: Graph, keep: EdgePredicate | None = None) -> dict[str, int]:
    """Vertex -> index into :func:`components` for the same predicate."""
    return {v: i for i, comp in enumerate(components(g, keep)) for v in comp}


# ----------------------------------------------------------------------
# paths and cycles
# ----------------------------------------------------------------------

class PathSearch(NamedTuple):
    paths: list[tuple[str, ...]]
    truncated: bool


def simple_paths(g: Graph, u: str, v: str, avoid: EdgePredicate | None = None,
                 cap: int = DEFAULT_PATH_CAP) -> PathSearch:
    """All simple ``u``-``v`` paths on non-avoided edges, DFS order, at most ``cap``."""
    if u == v:
        raise ValueError("simple_paths needs distinct endpoints")
    blocked = _as_predicate(avoid) if avoid is not None else (lambda e: False)
    adj = {x: [y for y in g.adjacency[x] if not blocked(edge_key(x, y))] for x in g.vertices}
    return _dfs_paths(adj, u, v, cap)


def _dfs_paths(adj: Mapping[str, list[str]], u: str, v: str, cap: int) -> PathSearch:
    paths: list[tuple[str, ...]] = []
    path = [u]
    on_path = {u}
    # iterative DFS keeps deep graphs clear of the recursion limit
    stack = [iter(adj[u])]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        if nxt in on_path:
            continue
        if nxt == v:
            if len(paths) >= cap:
                return PathSearch(paths, True)
            paths.append(tuple(path) + (v,))
            continue
        path.append(nxt)
        on_path.add(nxt)
        stack.append(iter(adj[nxt]))
    return PathSearch(paths, False)


def spanning_tree(g: Graph, root: str | None = None) -> dict[str, str | None]:
    """BFS parent map from ``root`` (default: smallest vertex)."""
    root = g.vertices[0] if root is None else root
    parent: dict[str, str | None] = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return parent


def _root_path(parent: Mapping[str, str | None], v: str) -> list[str]:
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out


def tree_path(parent: Mapping[str, str | None], u: str, v: str) -> list[str]:
    """Vertex sequence from ``u`` to ``v`` inside a spanning tree."""
    pu, pv = _root_path(parent, u), _root_path(parent, v)
    on_pv = set(pv)
    i = next(i for i, x in enumerate(pu) if x in on_pv)
    lca = pu[i]
    return pu[: i + 1] + list(reversed(pv[: pv.index(lca)]))


def cycle_basis(g: Graph) -> list[tuple[str, ...]]:
    """Fundamental cycles of the BFS tree rooted at the smallest vertex.

    Each cycle is a vertex sequence ``(u, ..., v)`` closed by the non-tree edge
    ``uv``; there are ``|E| - |V| + 1`` of them for a connected graph.
    """
    if not g.vertices:
        return []
    parent = spanning_tree(g)
    tree = {edge_key(c, p) for c, p in parent.items() if p is not None}
    return [tuple(tree_path(parent, u, v)) for (u, v) in g.edges if (u, v) not in tree]


def cycle_edges(cycle: tuple[str, ...]) -> list[Edge]:
    """Edges of a closed vertex sequence."""
    n = len(cycle)
    return [edge_key(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


# ----------------------------------------------------------------------
# graph families
# ----------------------------------------------------------------------

def gk_graph(k: int) -> SymmetricGraph:
    """The family G_k: two stars l0/r0 joined by l0r0, spokes closed through a clique on m_i."""
    if k < 1:
        raise ValueError("gk_graph needs k >= 1")
    idx = range(1, k + 1)
    vertices = [f"l{i}" for i in range(k + 1)] + [f"r{i}" for i in range(k + 1)] + [f"m{i}" for i in idx]
    edges = [("l0", "r0")]
    for i in idx:
        edges += [("l0", f"l{i}"), (f"l{i}", f"m{i}"), ("r0", f"r{i}"), (f"r{i}", f"m{i}")]
    edges += [(f"m{i}", f"m{j}") for i in idx for j in idx if i < j]
    sigma = {f"l{i}": f"r{i}" for i in range(k + 1)}
    sigma.update({f"r{i}": f"l{i}" for i in range(k + 1)})
    return validate_symmetry(vertices, edges, sigma)


MIRROR_SUFFIX = "'"


def glue_double(g: Graph, f: Edge) -> SymmetricGraph:
    """Two copies of ``g`` identified along ``f``; sigma swaps the copies.

    The mirror copy of vertex ``v`` is named ``v'``; the endpoints of ``f`` are
    shared and are the only invariant vertices.
    """
    f = edge_key(*f)
    if f not in g.edge_set:
        raise ValueError(f"{format_edge(f)} is not an edge")
    names = set(g.vertices)
    clash = [v for v in g.vertices if v + MIRROR_SUFFIX in names]
    if clash:
        raise ValueError(f"vertex name {clash[0]}{MIRROR_SUFFIX} already used")

    def mirror(v: str) -> str:
        return v if v in f else v + MIRROR_SUFFIX

    vertices = list(g.vertices) + [mirror(v) for v in g.vertices if v not in f]
    edges = list(g.edges) + [(mirror(u), mirror(v)) for (u, v) in g.edges if (u, v) != f]
    sigma = {}
    for v in g.vertices:
        if v not in f:
            sigma[v] = mirror(v)
            sigma[mirror(v)] = v
    return validate_symmetry(vertices, edges, sigma)
