import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from symflex import colourings as col
from symflex.colourings import BLUE, GOLD, RED
from symflex.fixtures import load
from symflex.graph_core import cycle_edges, edge_key, make_graph

from conftest import c4, closed_graphs, naive_cycles, naive_nac

C4_EDGES = [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")]


def colour(g, red=(), blue=(), gold=()):
    out = {}
    for names, c in ((red, RED), (blue, BLUE), (gold, GOLD)):
        for e in names:
            out[edge_key(*e.split("-"))] = c
    assert set(out) == set(g.edges)
    return out


def naive_pseudo_rs(g):
    """Literal definition over all 3^|E| colourings."""
    out = []
    cycles = naive_cycles(g)
    for combo in itertools.product(col.COLOURS, repeat=len(g.edges)):
        c = dict(zip(g.edges, combo))
        if RED not in combo or BLUE not in combo:
            continue
        if any((c[e] == RED) != (c[g.sigma_edge(e)] == BLUE) for e in g.edges):
            continue
        if naive_nac(g, col.substitute(c, RED), cycles) and naive_nac(g, col.substitute(c, BLUE), cycles):
            out.append(c)
    return out


def keys(g, cols):
    return sorted(col.canonical_key(g, c) for c in cols)


# --- NAC ---------------------------------------------------------------

def test_nac_examples():
    g = make_graph("1234", C4_EDGES)
    assert col.is_nac(g, colour(g, red=["1-2", "3-4"], blue=["2-3", "1-4"]))
    bad = col.is_nac(g, colour(g, red=["1-2", "2-3", "3-4"], blue=["1-4"]))
    assert not bad and bad.reason == "Cycle"
    assert set(cycle_edges(tuple(bad.cycle))) == set(g.edges)
    mono = col.is_nac(g, {e: RED for e in g.edges})
    assert not mono and mono.reason == "NotSurjective"


def test_enumerate_nac_counts():
    k3 = make_graph("123", [("1", "2"), ("2", "3"), ("1", "3")])
    assert col.enumerate_nac(k3) == []
    sq = make_graph("1234", C4_EDGES)
    found = col.enumerate_nac(sq)
    assert len(found) == 6
    assert all(sorted(c.values()) == [BLUE, BLUE, RED, RED] for c in found)
    assert len(col.enumerate_nac(sq, up_to_swap=True)) == 3
    tree = make_graph("12345", [("1", "2"), ("2", "3"), ("2", "4"), ("4", "5")])
    assert len(col.enumerate_nac(tree)) == 2 ** 4 - 2


def test_enumerate_nac_naive_matches_pruned():
    g = load("fig2").graph
    assert keys(g, col.enumerate_nac(g)) == keys(g, col.enumerate_nac(g, method="naive"))


def test_budget_exceeded():
    g = load("fig3").graph
    with pytest.raises(col.BudgetExceeded):
        col.enumerate_pseudo_rs(g, budget=10)


def test_budget_env(monkeypatch):
    monkeypatch.setenv(col.BUDGET_ENV, "7")
    assert col.resolve_budget(None) == 7
    # an explicit budget is a deliberate choice and wins over the environment
    assert col.resolve_budget(100) == 100


# --- pseudo-RS -----------------------------------------------------------

def test_fig2_first_colouring_is_pseudo_rs():
    fx = load("fig2")
    assert col.is_pseudo_rs(fx.graph, fx.colourings["c0"])


def test_c4_axial_has_no_pseudo_rs(c4_axial_graph):
    g = c4_axial_graph
    assert naive_pseudo_rs(g) == []
    assert col.enumerate_pseudo_rs(g) == []
    for combo in itertools.product(col.COLOURS, repeat=4):
        assert not col.is_pseudo_rs(g, dict(zip(g.edges, combo)))


def test_c4_antipodal(c4_antipodal_graph):
    g = c4_antipodal_graph
    d = colour(g, red=["1-2", "2-3"], blue=["3-4", "1-4"])
    assert col.is_pseudo_rs(g, d)
    assert keys(g, naive_pseudo_rs(g)) == keys(g, col.enumerate_pseudo_rs(g))
    assert len(col.enumerate_pseudo_rs(g, quotient_conjugation=True)) == 2


def test_pseudo_rs_reasons(c4_antipodal_graph):
    g = c4_antipodal_graph
    assert col.is_pseudo_rs(g, {e: GOLD for e in g.edges}).reason == "MissingColour"
    asym = colour(g, red=["1-2", "3-4"], blue=["2-3", "1-4"])
    assert col.is_pseudo_rs(g, asym).reason == "NotSymmetric"


def test_conjugate_fig2():
    fx = load("fig2")
    g, d = fx.graph, fx.colourings["c0"]
    conj = col.conjugate(g, d)
    assert {e for e, c in conj.items() if c == RED} == {e for e, c in d.items() if c == BLUE}
    assert {e for e, c in conj.items() if c == BLUE} == {e for e, c in d.items() if c == RED}
    assert col.conjugate(g, conj) == d


def test_text_roundtrip():
    fx = load("fig2")
    d = fx.colourings["c3"]
    assert col.parse_colouring(fx.graph, col.format_colouring(d)) == d


# --- almost red-blue cycles and RS ---------------------------------------

def test_fig2_has_no_almost_red_blue_cycles():
    fx = load("fig2")
    for d in fx.colourings.values():
        assert col.almost_red_blue_cycles(fx.graph, d).cycles == []
        assert col.classify_rs(fx.graph, d).status == col.RS_NO_CYCLE


def test_fig4_left_pentagon():
    fx = load("fig4_left")
    d = fx.colourings["c0"]
    cycles = col.almost_red_blue_cycles(fx.graph, d).cycles
    assert ("1", "2", "3", "4", "5") in cycles
    verdict = col.classify_rs(fx.graph, d)
    assert verdict.status == col.PSEUDO_RS_ONLY
    assert len(verdict.cycle) >= 3


def test_fig3_mutual_certificates():
    fx = load("fig3")
    g, d0, d1 = fx.graph, fx.colourings["c0"], fx.colourings["c1"]
    for a, b in ((d0, d1), (d1, d0)):
        v = col.classify_rs(g, a, certificate_pool=[b])
        assert v.status == col.RS_CERTIFIED
        for cyc, cert in v.certificates.items():
            assert a[cert.e1] == a[cert.e2] and cert.colouring[cert.e1] != cert.colouring[cert.e2]


def test_gold_cut_has_no_cycle():
    # gold edges form a cut between the endpoints of each gold edge
    fx = load("fig2")
    d = fx.colourings["c2"]
    assert col.almost_red_blue_cycles(fx.graph, d).cycles == []


def test_truncation_surfaces():
    fx = load("fig3")
    v = col.classify_rs(fx.graph, fx.colourings["c0"], cap=3)
    assert v.status == col.UNKNOWN_TRUNCATED
    with pytest.raises(col.TruncatedSearch):
        col.enumerate_pseudo_rs(fx.graph, rs_only=True, cap=3)


def test_fig2_enumeration():
    fx = load("fig2")
    g = fx.graph
    found = col.enumerate_pseudo_rs(g, quotient_conjugation=True)
    assert len(found) == 5
    expected = set()
    for d in fx.colourings.values():
        expected.add(min(col.canonical_key(g, d), col.canonical_key(g, col.conjugate(g, d))))
    assert {col.canonical_key(g, c) for c in found} == expected


def test_not_pseudo_rs_status(c4_axial_graph):
    g = c4_axial_graph
    v = col.classify_rs(g, {e: GOLD for e in g.edges})
    assert v.status == col.NOT_PSEUDO_RS and not v.is_rs


# --- Cartesian -------------------------------------------------------------

def test_cartesian_examples():
    sq = make_graph("1234", C4_EDGES)
    assert col.is_cartesian(sq, colour(sq, red=["1-2", "3-4"], blue=["2-3", "1-4"]))
    assert not col.is_cartesian(sq, colour(sq, red=["1-2", "2-3"], blue=["3-4", "1-4"]))
    fx = load("fig2")
    assert col.is_cartesian(fx.graph, fx.colourings["c1"])
    assert not col.is_cartesian(fx.graph, fx.colourings["c0"])


def _cartesian_oracle(g, d):
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    labels = []
    for side in ({RED, BLUE}, {RED, GOLD}, {BLUE, GOLD}):
        h = nxg.copy()
        h.add_edges_from(e for e in g.edges if d[e] in side)
        labels.append({v: i for i, comp in enumerate(nx.connected_components(h)) for v in comp})
    return all(any(lab[u] != lab[v] for lab in labels)
               for u, v in itertools.combinations(g.vertices, 2))


@pytest.mark.parametrize("name", ["fig2", "fig3", "fig6", "c4_antipodal"])
def test_cartesian_matches_networkx(name):
    g = load(name).graph
    for d in col.enumerate_pseudo_rs(g)[:40]:
        assert bool(col.is_cartesian(g, d)) == _cartesian_oracle(g, d)


# --- NP reduction ------------------------------------------------------------

def test_lift_c4():
    sq = make_graph("1234", C4_EDGES)
    nac = colour(sq, red=["1-2", "3-4"], blue=["2-3", "1-4"])
    h, lifted = col.lift_nac_to_pseudo_rs(sq, nac, ("1", "2"))
    assert len(h.edges) == 7
    assert sum(c == GOLD for c in lifted.values()) == 3
    assert col.is_pseudo_rs(h, lifted)
    assert col.classify_rs(h, lifted).status != col.PSEUDO_RS_ONLY
    back = col.substitute(lifted, RED)
    assert {e: back[e] for e in sq.edges} == nac


def test_lift_rejects_non_nac():
    sq = make_graph("1234", C4_EDGES)
    with pytest.raises(col.NotNAC):
        col.lift_nac_to_pseudo_rs(sq, colour(sq, red=["1-2", "2-3", "3-4"], blue=["1-4"]), ("1", "2"))


# --- properties ----------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(closed_graphs(max_vertices=5, max_edges=7))
def test_pruned_equals_naive_and_oracle(g):
    pruned = keys(g, col.enumerate_pseudo_rs(g))
    assert pruned == keys(g, col.enumerate_pseudo_rs(g, method="naive"))
    assert pruned == keys(g, naive_pseudo_rs(g))


@settings(max_examples=60, deadline=None)
@given(closed_graphs(max_vertices=6, max_edges=8), st.data())
def test_is_nac_matches_cycle_scan(g, data):
    combo = data.draw(st.lists(st.sampled_from([RED, BLUE]), min_size=len(g.edges), max_size=len(g.edges)))
    d = dict(zip(g.edges, combo))
    assert bool(col.is_nac(g, d)) == naive_nac(g, d)


@settings(max_examples=40, deadline=None)
@given(closed_graphs(max_vertices=6, max_edges=8))
def test_pseudo_rs_invariants(g):
    for d in col.enumerate_pseudo_rs(g):
        assert all(d[e] == GOLD for e in g.invariant_edges)
        assert bool(col.is_nac(g, col.substitute(d, RED))) == bool(col.is_nac(g, col.substitute(d, BLUE)))
        conj = col.conjugate(g, d)
        assert col.conjugate(g, conj) == d
        assert {e for e in g.edges if d[e] == GOLD} == {e for e in g.edges if conj[e] == GOLD}
        assert bool(col.is_pseudo_rs(g, conj))
        assert bool(col.is_cartesian(g, d)) == bool(col.is_cartesian(g, conj))
        v, vc = col.classify_rs(g, d), col.classify_rs(g, conj)
        assert v.is_rs == vc.is_rs
        if col.is_cartesian(g, d):
            assert v.status == col.RS_NO_CYCLE


def test_quotient_keeps_smaller_key():
    g = load("fig2").graph
    for d in col.enumerate_pseudo_rs(g, quotient_conjugation=True):
        assert col.canonical_key(g, d) <= col.canonical_key(g, col.conjugate(g, d))


@settings(max_examples=60, deadline=None)
@given(closed_graphs(max_vertices=6, max_edges=8), st.data())
def test_cycle_existence_matches_search(g, data):
    combo = data.draw(st.lists(st.sampled_from([RED, BLUE, GOLD]), min_size=len(g.edges), max_size=len(g.edges)))
    d = dict(zip(g.edges, combo))
    found = col.almost_red_blue_cycles(g, d, cap=10_000)
    assert not found.truncated
    assert col.has_almost_red_blue_cycle(g, d) == bool(found.cycles)
