"""NAC-, pseudo-RS-, RS- and Cartesian colourings.

A colouring is a plain ``dict`` from canonical edges to one of the strings
``"red"``, ``"blue"`` or ``"gold"``.  NAC checks use the component criterion:
a red/blue colouring is NAC iff it is surjective, no red edge joins two
vertices of one blue component and no blue edge joins two vertices of one red
component.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .graph_core import (
    DEFAULT_PATH_CAP,
    Edge,
    Graph,
    SymmetricGraph,
    component_labels,
    cycle_edges,
    edge_key,
    edge_orbits,
    format_edge,
    glue_double,
    simple_paths,
)

RED, BLUE, GOLD = "red", "blue", "gold"
COLOURS = (RED, BLUE, GOLD)

DEFAULT_BUDGET = 3 ** 24
BUDGET_ENV = "SYMFLEX_BUDGET"

Colouring = dict[Edge, str]

# orbit assignments in a fixed order: (colour of representative, colour of mirror)
ORBIT_CHOICES = ((RED, BLUE), (BLUE, RED), (GOLD, GOLD))


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"search needs {needed} candidates, budget is {budget}")
        self.needed = needed
        self.budget = budget


class TruncatedSearch(RuntimeError):
    """A cycle cap was hit, so an exact answer could not be given."""


class NotNAC(ValueError):
    pass


def resolve_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(needed: int, budget: Optional[int]) -> None:
    limit = resolve_budget(budget)
    if needed > limit:
        raise BudgetExceeded(needed, limit)


# ----------------------------------------------------------------------
# basic helpers
# ----------------------------------------------------------------------

def normalize_colouring(g: Graph, colouring: Mapping) -> Colouring:
    """Canonical-keyed copy of ``colouring``; must be total on ``g``."""
    out: Colouring = {}
    for k, c in colouring.items():
        e = edge_key(*k) if isinstance(k, tuple) else edge_key(*str(k).split("-"))
        if c not in COLOURS:
            raise ValueError(f"unknown colour {c!r} on {format_edge(e)}")
        out[e] = c
    missing = [e for e in g.edges if e not in out]
    if missing:
        raise ValueError(f"colouring misses edge {format_edge(missing[0])}")
    extra = [e for e in out if e not in g.edge_set]
    if extra:
        raise ValueError(f"colouring names non-edge {format_edge(extra[0])}")
    return {e: out[e] for e in g.edges}


def canonical_key(g: Graph, colouring: Mapping[Edge, str]) -> tuple[str, ...]:
    return tuple(colouring[e] for e in g.edges)


def from_key(g: Graph, key: Sequence[str]) -> Colouring:
    return dict(zip(g.edges, key))


def substitute(colouring: Mapping[Edge, str], gold_to: str) -> Colouring:
    return {e: (gold_to if c == GOLD else c) for e, c in colouring.items()}


def conjugate(g: SymmetricGraph, colouring: Mapping[Edge, str]) -> Colouring:
    """The conjugate colouring ``e -> colouring(sigma e)``."""
    return {e: colouring[g.sigma_edge(e)] for e in g.edges}


def format_colouring(colouring: Mapping[Edge, str]) -> str:
    return "".join(f"{format_edge(e)}: {colouring[e]}\n" for e in sorted(colouring))


def parse_colouring(g: Graph, text: str) -> Colouring:
    raw = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            key, colour = (s.strip() for s in line.split(":"))
            u, v = key.split("-")
        except ValueError:
            raise ValueError(f"line {n}: expected 'u-v: colour'") from None
        raw[(u, v)] = colour
    return normalize_colouring(g, raw)


# ----------------------------------------------------------------------
# NAC
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class NacResult:
    ok: bool
    reason: str = ""
    cycle: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _bfs_path(g: Graph, u: str, v: str, keep) -> list[str]:
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in g.adjacency[x]:
            if y not in parent and keep(edge_key(x, y)):
                parent[y] = x
                queue.append(y)
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def is_nac(g: Graph, colouring: Mapping[Edge, str]) -> NacResult:
    """Check a red/blue colouring against the NAC definition.

    On failure ``reason`` is ``"NotSurjective"`` or ``"Cycle"``; in the latter
    case ``cycle`` lists a cycle with exactly one edge of some colour.
    """
    used = set(colouring.values())
    if used - {RED, BLUE}:
        raise ValueError("is_nac expects a red/blue colouring")
    if used != {RED, BLUE}:
        return NacResult(False, "NotSurjective")
    for colour, other in ((RED, BLUE), (BLUE, RED)):
        labels = component_labels(g, lambda e, c=other: colouring[e] == c)
        for e in g.edges:
            if colouring[e] == colour and labels[e[0]] == labels[e[1]]:
                path = _bfs_path(g, e[0], e[1], lambda f, c=other: colouring[f] == c)
                return NacResult(False, "Cycle", tuple(path))
    return NacResult(True)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _split_ok(vertices, assigned: Mapping[Edge, str], side: frozenset) -> bool:
    """No edge in ``side`` closes inside the complement and vice versa."""
    inside = _UnionFind(vertices)
    outside = _UnionFind(vertices)
    for (u, v), c in assigned.items():
        (inside if c in side else outside).union(u, v)
    for (u, v), c in assigned.items():
        uf = outside if c in side else inside
        if uf.find(u) == uf.find(v):
            return False
    return True


_RED_SIDE = frozenset({RED})
_REDGOLD_SIDE = frozenset({RED, GOLD})


def _edge_order(g: Graph, edges: Sequence[Edge]) -> list[Edge]:
    """Edges in BFS-adjacent order so partial assignments close cycles early."""
    remaining = list(edges)
    if not remaining:
        return []
    order = [remaining.pop(0)]
    touched = set(order[0])
    while remaining:
        pick = next((e for e in remaining if e[0] in touched or e[1] in touched), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        touched.update(pick)
    return order


def enumerate_nac(g: Graph, up_to_swap: bool = False, budget: Optional[int] = None,
                  method: str = "pruned") -> list[Colouring]:
    """All NAC-colourings of ``g`` in canonical order.

    With ``up_to_swap`` only colourings whose first edge is red are kept.
    ``method="naive"`` filters all ``2^|E|`` colourings with :func:`is_nac`.
    """
    _check_budget(2 ** len(g.edges), budget)
    keys: list[tuple[str, ...]] = []
    if method == "naive":
        for key in itertools.product((BLUE, RED), repeat=len(g.edges)):
            if is_nac(g, from_key(g, key)):
                keys.append(key)
    elif method == "pruned":
        order = _edge_order(g, g.edges)
        assigned: Colouring = {}

        def walk(i: int) -> Iterator[Colouring]:
            if i == len(order):
                yield dict(assigned)
                return
            for c in (BLUE, RED):
                assigned[order[i]] = c
                if _split_ok(g.vertices, assigned, _RED_SIDE):
                    yield from walk(i + 1)
                del assigned[order[i]]

        for col in walk(0):
            if set(col.values()) == {RED, BLUE}:
                keys.append(canonical_key(g, col))
    else:
        raise ValueError(f"unknown method {method!r}")
    if up_to_swap and g.edges:
        keys = [k for k in keys if k[0] == RED]
    return [from_key(g, k) for k in sorted(keys)]


# ----------------------------------------------------------------------
# pseudo-RS
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PseudoRsResult:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def is_pseudo_rs(g: SymmetricGraph, colouring: Mapping[Edge, str]) -> PseudoRsResult:
    """Check the four pseudo-RS conditions.

    Conditions (2) and (3) are equivalent once (4) holds; both are evaluated
    and a disagreement raises ``AssertionError``.
    """
    used = set(colouring.values())
    if not {RED, BLUE} <= used:
        return PseudoRsResult(False, "MissingColour", sorted({RED, BLUE} - used))
    for e in g.edges:
        c, m = colouring[e], colouring[g.sigma_edge(e)]
        if (c == RED) != (m == BLUE):
            return PseudoRsResult(False, "NotSymmetric", e)
    as_blue = is_nac(g, substitute(colouring, BLUE))
    as_red = is_nac(g, substitute(colouring, RED))
    if bool(as_blue) != bool(as_red):
        raise AssertionError("gold->blue and gold->red substitutions disagree")
    if not as_blue:
        return PseudoRsResult(False, "GoldToBlueNotNAC", as_blue.cycle)
    return PseudoRsResult(True)


def enumerate_pseudo_rs(g: SymmetricGraph, quotient_conjugation: bool = False,
                        rs_only: bool = False, budget: Optional[int] = None,
                        cap: int = DEFAULT_PATH_CAP, method: str = "pruned") -> list[Colouring]:
    """All pseudo-RS-colourings (or RS-colourings with ``rs_only``), canonical order.

    Each non-invariant orbit takes (red, blue), (blue, red) or (gold, gold) and
    invariant edges are gold.  ``method="naive"`` filters every one of those
    assignments; ``"pruned"`` abandons a partial assignment as soon as an
    assigned blue edge closes a red/gold path or vice versa (this can never be
    repaired by later edges), and returns the same list.

    Raises :class:`TruncatedSearch` if ``rs_only`` meets a truncated cycle search.
    """
    orbits = edge_orbits(g)
    free = [o for o in orbits if not o.is_invariant]
    _check_budget(3 ** len(free), budget)
    fixed = {o.representative: GOLD for o in orbits if o.is_invariant}

    found: list[Colouring] = []
    if method == "naive":
        for choice in itertools.product(ORBIT_CHOICES, repeat=len(free)):
            col = dict(fixed)
            for o, (c, m) in zip(free, choice):
                col[o.representative] = c
                col[o.mirror] = m
            col = {e: col[e] for e in g.edges}
            if is_pseudo_rs(g, col):
                found.append(col)
    elif method == "pruned":
        found = list(_pruned_search(g, free, fixed))
    else:
        raise ValueError(f"unknown method {method!r}")

    if rs_only:
        pool = found
        kept = []
        for col in found:
            verdict = classify_rs(g, col, pool, cap=cap)
            if verdict.status == UNKNOWN_TRUNCATED:
                raise TruncatedSearch("almost red-blue cycle enumeration hit the cap")
            if verdict.is_rs:
                kept.append(col)
        found = kept

    keys = {canonical_key(g, c) for c in found}
    if quotient_conjugation:
        keys = {min(k, canonical_key(g, conjugate(g, from_key(g, k)))) for k in keys}
    return [from_key(g, k) for k in sorted(keys)]


def _pruned_search(g: SymmetricGraph, free, fixed: Colouring) -> Iterator[Colouring]:
    order_edges = _edge_order(g, [o.representative for o in free])
    by_rep = {o.representative: o for o in free}
    order = [by_rep[e] for e in order_edges]
    assigned: Colouring = dict(fixed)
    if not (_split_ok(g.vertices, assigned, _REDGOLD_SIDE)
            and _split_ok(g.vertices, assigned, _RED_SIDE)):
        return

    def walk(i: int) -> Iterator[Colouring]:
        if i == len(order):
            col = {e: assigned[e] for e in g.edges}
            if is_pseudo_rs(g, col):
                yield col
            return
        o = order[i]
        for c, m in ORBIT_CHOICES:
            assigned[o.representative] = c
            assigned[o.mirror] = m
            if (_split_ok(g.vertices, assigned, _REDGOLD_SIDE)
                    and _split_ok(g.vertices, assigned, _RED_SIDE)):
                yield from walk(i + 1)
        del assigned[o.representative]
        assigned.pop(o.mirror, None)

    yield from walk(0)


# ----------------------------------------------------------------------
# almost red-blue cycles and certificates
# ----------------------------------------------------------------------

def canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    """Rotate to start at the smallest vertex, direction towards the smaller neighbour."""
    n = len(cycle)
    i = min(range(n), key=lambda k: cycle[k])
    fwd = tuple(cycle[(i + k) % n] for k in range(n))
    bwd = tuple(cycle[(i - k) % n] for k in range(n))
    return min(fwd, bwd)


@dataclass(frozen=True)
class CycleSearch:
    cycles: list[tuple[str, ...]]
    truncated: bool


def almost_red_blue_cycles(g: SymmetricGraph, colouring: Mapping[Edge, str],
                           cap: int = DEFAULT_PATH_CAP) -> CycleSearch:
    """Cycles with exactly one gold edge, at most ``cap`` in total."""
    found: set[tuple[str, ...]] = set()
    truncated = False
    for e in g.edges:
        if colouring[e] != GOLD:
            continue
        left = cap - len(found)
        res = simple_paths(g, e[0], e[1], avoid=lambda f: colouring[f] == GOLD, cap=left)
        for path in res.paths:
            if len(path) > 2:
                found.add(canonical_cycle(path))
        if res.truncated:
            truncated = True
            break
    return CycleSearch(sorted(found, key=lambda c: (len(c), c)), truncated)


def has_almost_red_blue_cycle(g: Graph, colouring: Mapping[Edge, str]) -> bool:
    """True iff some gold edge has both ends in one red-blue component."""
    labels = component_labels(g, lambda e: colouring[e] != GOLD)
    return any(labels[u] == labels[v] for (u, v), c in colouring.items() if c == GOLD)


NOT_PSEUDO_RS = "NotPseudoRS"
PSEUDO_RS_ONLY = "PseudoRSOnly"
RS_NO_CYCLE = "RS_NoCycle"
RS_CERTIFIED = "RS_Certified"
UNKNOWN_TRUNCATED = "UnknownTruncated"


@dataclass(frozen=True)
class Certificate:
    colouring: Colouring
    e1: Edge
    e2: Edge


@dataclass
class RsVerdict:
    status: str
    reason: str = ""
    cycle: tuple[str, ...] = ()
    certificates: dict[tuple[str, ...], Certificate] = field(default_factory=dict)

    @property
    def is_rs(self) -> bool:
        return self.status in (RS_NO_CYCLE, RS_CERTIFIED)


class _LazyList:
    """Re-iterable view of an iterator that is consumed only as far as needed."""

    def __init__(self, source: Iterator):
        self._source = source
        self._items: list = []

    def __iter__(self):
        i = 0
        while True:
            if i == len(self._items):
                nxt = next(self._source, None)
                if nxt is None:
                    return
                self._items.append(nxt)
            yield self._items[i]
            i += 1


def find_certificate(colouring: Mapping[Edge, str], cycle: Sequence[str],
                     candidates: Iterable[Mapping[Edge, str]]) -> Optional[Certificate]:
    edges = cycle_edges(tuple(cycle))
    pairs = [(a, b) for a, b in itertools.combinations(edges, 2) if colouring[a] == colouring[b]]
    for other in candidates:
        for a, b in pairs:
            if other[a] != other[b]:
                return Certificate(dict(other), a, b)
    return None


def classify_rs(g: SymmetricGraph, colouring: Mapping[Edge, str],
                certificate_pool: Optional[Iterable[Mapping[Edge, str]]] = None,
                cap: int = DEFAULT_PATH_CAP, budget: Optional[int] = None) -> RsVerdict:
    """Classify a colouring as RS or not.

    The conjugate is tried as a certificate before the pool; the pool defaults
    to every pseudo-RS-colouring of ``g`` and is computed only when needed.
    """
    colouring = normalize_colouring(g, colouring)
    check = is_pseudo_rs(g, colouring)
    if not check:
        return RsVerdict(NOT_PSEUDO_RS, reason=check.reason)
    if not has_almost_red_blue_cycle(g, colouring):
        return RsVerdict(RS_NO_CYCLE)
    search = almost_red_blue_cycles(g, colouring, cap=cap)
    if search.truncated:
        return RsVerdict(UNKNOWN_TRUNCATED, reason="cycle cap reached")
    if not search.cycles:
        return RsVerdict(RS_NO_CYCLE)

    if certificate_pool is None:
        orbits = edge_orbits(g)
        free = [o for o in orbits if not o.is_invariant]
        _check_budget(3 ** len(free), budget)
        fixed = {o.representative: GOLD for o in orbits if o.is_invariant}
        source: Iterator = _pruned_search(g, free, fixed)
    else:
        source = (normalize_colouring(g, c) for c in certificate_pool)
    pool = _LazyList(source)

    def candidates() -> Iterator[Mapping[Edge, str]]:
        yield conjugate(g, colouring)
        yield from pool

    certs = {}
    for cyc in search.cycles:
        cert = find_certificate(colouring, cyc, candidates())
        if cert is None:
            return RsVerdict(PSEUDO_RS_ONLY, reason="uncertified almost red-blue cycle", cycle=cyc)
        certs[cyc] = cert
    return RsVerdict(RS_CERTIFIED, certificates=certs)


# ----------------------------------------------------------------------
# Cartesian colourings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CartesianResult:
    ok: bool
    pair: tuple[str, str] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_cartesian(g: Graph, colouring: Mapping[Edge, str]) -> CartesianResult:
    """False iff two vertices share a component in each two-colour subgraph."""
    labels = [
        component_labels(g, lambda e, s=side: colouring[e] in s)
        for side in ({RED, BLUE}, {RED, GOLD}, {BLUE, GOLD})
    ]
    seen: dict[tuple[int, int, int], str] = {}
    for v in g.vertices:
        key = (labels[0][v], labels[1][v], labels[2][v])
        if key in seen:
            return CartesianResult(False, (seen[key], v))
        seen[key] = v
    return CartesianResult(True)


# ----------------------------------------------------------------------
# NP reduction
# ----------------------------------------------------------------------

def lift_nac_to_pseudo_rs(g: Graph, nac: Mapping[Edge, str], f: Edge
                          ) -> tuple[SymmetricGraph, Colouring]:
    """Glue two copies of ``g`` along ``f`` and recolour a NAC-colouring.

    ``f`` is made red first (swapping colours if needed).  On the original copy
    red becomes gold; on the mirror copy red becomes gold and blue becomes red.
    """
    nac = normalize_colouring(g, nac)
    if not is_nac(g, nac):
        raise NotNAC("input colouring is not a NAC-colouring")
    f = edge_key(*f)
    if nac[f] == BLUE:
        nac = {e: (RED if c == BLUE else BLUE) for e, c in nac.items()}
    h = glue_double(g, f)
    out: Colouring = {}
    for e, c in nac.items():
        out[e] = GOLD if c == RED else BLUE
        if e != f:
            out[h.sigma_edge(e)] = GOLD if c == RED else RED
    return h, {e: out[e] for e in h.edges}
