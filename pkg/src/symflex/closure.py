"""Gold-closure of a reflection-symmetric graph and the necessity verdicts it supports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .colourings import (
    GOLD,
    Colouring,
    canonical_key,
    enumerate_pseudo_rs,
)
from .graph_core import (
    DEFAULT_PATH_CAP,
    Edge,
    SymmetricGraph,
    component_labels,
    edge_key,
)


class NonTermination(RuntimeError):
    pass


@dataclass(frozen=True)
class GoldCore:
    edges: frozenset[Edge]
    vacuous: bool
    rs_count: int


def rs_colourings(g: SymmetricGraph, budget: Optional[int] = None,
                  cap: int = DEFAULT_PATH_CAP) -> list[Colouring]:
    """Every RS-colouring of ``g`` (conjugates included)."""
    return enumerate_pseudo_rs(g, rs_only=True, budget=budget, cap=cap)


def gold_core(g: SymmetricGraph, budget: Optional[int] = None,
              cap: int = DEFAULT_PATH_CAP) -> GoldCore:
    """Edges gold in every RS-colouring; all edges (``vacuous``) if there is none."""
    rs = rs_colourings(g, budget, cap)
    if not rs:
        return GoldCore(frozenset(g.edges), True, 0)
    core = frozenset(e for e in g.edges if all(c[e] == GOLD for c in rs))
    return GoldCore(core, False, len(rs))


@dataclass(frozen=True)
class GammaResult:
    pairs: frozenset[Edge]
    vacuous: bool


def gamma_pairs(g: SymmetricGraph, original: Optional[SymmetricGraph] = None,
                budget: Optional[int] = None, cap: int = DEFAULT_PATH_CAP) -> GammaResult:
    """Pairs {u, v} with u invariant, v joined to sigma(v) in ``original``,
    u and v connected through edges gold in all RS-colourings of ``g``, and uv
    not yet an edge of ``g``."""
    original = g if original is None else original
    core = gold_core(g, budget, cap)
    labels = component_labels(g, core.edges)
    candidates = [v for v in g.vertices if original.has_edge(v, g.sigma[v])]
    pairs = set()
    for u in g.invariant_vertices:
        for v in candidates:
            if v != u and labels[u] == labels[v] and not g.has_edge(u, v):
                pairs.add(edge_key(u, v))
    for u, v in pairs:
        w = v if g.sigma[u] == u else u
        x = u if w == v else v
        assert edge_key(x, g.sigma[w]) in pairs, "gamma pairs are not sigma-closed"
    return GammaResult(frozenset(pairs), core.vacuous)


@dataclass
class ClosureTrace:
    stages: list[tuple[SymmetricGraph, frozenset[Edge]]] = field(default_factory=list)
    final: Optional[SymmetricGraph] = None
    vacuous: bool = False

    @property
    def added(self) -> list[Edge]:
        return sorted(e for _, pairs in self.stages for e in pairs)


def gold_closure(g: SymmetricGraph, budget: Optional[int] = None,
                 cap: int = DEFAULT_PATH_CAP) -> ClosureTrace:
    """Iterate ``G_{i+1} = G_i + Gamma(G_i)`` until Gamma is empty."""
    trace = ClosureTrace()
    current = g
    limit = len(g.vertices) ** 2 + 1
    for _ in range(limit):
        gamma = gamma_pairs(current, original=g, budget=budget, cap=cap)
        trace.vacuous |= gamma.vacuous
        trace.stages.append((current, gamma.pairs))
        if not gamma.pairs:
            trace.final = current
            return trace
        current = current.with_edges(sorted(gamma.pairs))
    raise NonTermination("gold-closure did not stabilise")


NO_RS = "NoRS"
CLOSURE_NO_RS = "ClosureNoRS"
HAS_RS = "HasRS"


@dataclass
class Verdict:
    status: str
    sample: Optional[Colouring] = None
    closure: Optional[ClosureTrace] = None
    # per RS-colouring of g (canonical key): is it a restriction of one of the closure's?
    restrictions: dict[tuple[str, ...], bool] = field(default_factory=dict)


def necessity_verdict(g: SymmetricGraph, budget: Optional[int] = None,
                      cap: int = DEFAULT_PATH_CAP) -> Verdict:
    rs = rs_colourings(g, budget, cap)
    if not rs:
        return Verdict(NO_RS)
    trace = gold_closure(g, budget, cap)
    final_rs = rs_colourings(trace.final, budget, cap)
    restricted = {tuple(c[e] for e in g.edges) for c in final_rs}
    restrictions = {canonical_key(g, c): canonical_key(g, c) in restricted for c in rs}
    if not final_rs:
        return Verdict(CLOSURE_NO_RS, rs[0], trace, restrictions)
    return Verdict(HAS_RS, rs[0], trace, restrictions)
