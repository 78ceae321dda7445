import math
import numpy as np
import pytest

from symflex import flexes as fl
from symflex.colourings import BLUE, GOLD, RED, classify_rs, enumerate_pseudo_rs, is_cartesian
from symflex.fixtures import load
from symflex.frameworks import Framework, angle_preserving_classes, cartesian_from_apc, noninvariant_apc
from symflex.graph_core import TAU, components


def rot(t):
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


# --- grid construction ---------------------------------------------------

def test_c4_rhombus_motion():
    fx = load("c4_antipodal")
    g, d = fx.graph, fx.colourings["c0"]
    flex = fl.grid_flex(g, d, seed=1)
    # oracle: a is constant on {1,2,3} (blue edges removed), z on everything
    assert np.array_equal(flex.A["1"], flex.A["2"]) and np.array_equal(flex.A["2"], flex.A["3"])
    assert not np.array_equal(flex.A["1"], flex.A["4"])
    r1, r2 = flex.A["1"], flex.A["4"]
    side = np.linalg.norm(r1 - r2)
    ts = np.linspace(0, 2 * math.pi, 9)
    pos = flex.positions(ts)
    idx = {v: i for i, v in enumerate(g.vertices)}
    for k, t in enumerate(ts):
        # closed form p_t(u) = rot(t) a(u) + rot(-t) tau a(sigma u) + z(u)
        for v in g.vertices:
            expect = rot(t) @ flex.A[v] + rot(-t) @ TAU @ flex.A[g.sigma[v]] + flex.Z[v]
            assert np.allclose(pos[k, idx[v]], expect, atol=1e-12)
        for u, v in g.edges:
            assert np.linalg.norm(pos[k, idx[u]] - pos[k, idx[v]]) == pytest.approx(side, rel=1e-12)
    e12 = pos[:, idx["2"]] - pos[:, idx["1"]]
    e34 = pos[:, idx["4"]] - pos[:, idx["3"]]
    angles = np.arctan2(e12[:, 0] * e34[:, 1] - e12[:, 1] * e34[:, 0], (e12 * e34).sum(axis=1))
    assert np.ptp(np.unwrap(angles)) > 1.0
    report = fl.verify_flex(g, flex)
    assert report.passed and report.nontriviality > 6


def test_k3_has_no_grid_flex():
    g = load("k3_mirror").graph
    e = g.edges
    d = {e[0]: RED, e[1]: BLUE, e[2]: GOLD}
    with pytest.raises(fl.NotRSNoCycle):
        fl.grid_flex(g, d)


@pytest.mark.parametrize("name", ["c0", "c1", "c2", "c3", "c4"])
def test_fig2_grid_flexes(name):
    fx = load("fig2")
    g, d = fx.graph, fx.colourings[name]
    flex = fl.grid_flex(g, d, seed=0)
    report = fl.verify_flex(g, flex)
    assert report.passed, report.failures
    assert report.symmetry_residual <= 1e-12
    p0 = flex.at(flex.domain[0])
    coincident = fl.coincident_pairs(p0)
    assert (not coincident) == bool(is_cartesian(g, d))
    assert coincident == fl.forced_coincidences(g, d)
    for u, v in coincident:
        assert not g.has_edge(u, v)


def test_grid_proof_identities():
    fx = load("fig2")
    g = fx.graph
    for d in enumerate_pseudo_rs(g, rs_only=True):
        flex = fl.grid_flex(g, d)
        pos = flex.positions(np.linspace(0, 2 * math.pi, 17))
        idx = {v: i for i, v in enumerate(g.vertices)}
        for u, v in g.edges:
            lengths = np.linalg.norm(pos[:, idx[u]] - pos[:, idx[v]], axis=1)
            if d[(u, v)] == RED:
                expect = np.linalg.norm(flex.A[g.sigma[u]] - flex.A[g.sigma[v]])
            elif d[(u, v)] == BLUE:
                expect = np.linalg.norm(flex.A[u] - flex.A[v])
            else:
                expect = np.linalg.norm(flex.Z[u] - flex.Z[v])
            assert np.allclose(lengths, expect, rtol=1e-12)


def test_grid_base_points_are_rational():
    fx = load("fig2")
    flex = fl.grid_flex(fx.graph, fx.colourings["c1"], seed=3)
    for coeffs in (flex.A, flex.Z):
        for p in coeffs.values():
            for x in p:
                assert abs(x * 1000 - round(x * 1000)) < 1e-6 * max(1, abs(x) * 1000)


def test_z_symmetry_on_fixtures():
    for name in ("fig2", "fig4_right", "fig6"):
        g = load(name).graph
        for d in enumerate_pseudo_rs(g, rs_only=True, quotient_conjugation=True):
            if classify_rs(g, d, certificate_pool=[]).status != "RS_NoCycle":
                continue
            flex = fl.grid_flex(g, d)
            for v in g.vertices:
                assert np.array_equal(flex.Z[g.sigma[v]], TAU @ flex.Z[v])
                assert np.array_equal(flex.Ap[v], flex.A[g.sigma[v]])


def test_grid_is_seed_deterministic():
    fx = load("fig2")
    a = fl.grid_flex(fx.graph, fx.colourings["c2"], seed=5)
    b = fl.grid_flex(fx.graph, fx.colourings["c2"], seed=5)
    assert all(np.array_equal(a.A[v], b.A[v]) and np.array_equal(a.Z[v], b.Z[v]) for v in fx.graph.vertices)


# --- verify_flex -----------------------------------------------------------

def test_constant_flex_fails_only_nontriviality():
    fx = load("c4_rhombus")
    g = fx.graph
    zero = {v: np.zeros(2) for v in g.vertices}
    flex = fl.ParametricFlex(g, zero, dict(zero), {v: fx.coords[v] for v in g.vertices})
    report = fl.verify_flex(g, flex)
    assert report.failures == ["nontriviality"]


def test_collision_fails_min_gap():
    fx = load("c4_antipodal")
    flex = fl.grid_flex(fx.graph, fx.colourings["c0"])
    # a(4) = a(3) makes every edge degenerate
    flex.A["4"] = flex.A["3"].copy()
    flex.Ap["2"] = flex.A["4"].copy()
    report = fl.verify_flex(fx.graph, flex)
    assert "min_edge_gap" in report.failures


def test_verify_needs_two_samples():
    fx = load("c4_antipodal")
    flex = fl.grid_flex(fx.graph, fx.colourings["c0"])
    with pytest.raises(ValueError):
        fl.verify_flex(fx.graph, flex, 1)


# --- sampling -----------------------------------------------------------------

def test_sample_single():
    fx = load("c4_antipodal")
    flex = fl.grid_flex(fx.graph, fx.colourings["c0"])
    [(t, pos)] = fl.sample_flex(flex, 1)
    assert t == flex.domain[0]
    assert all(np.array_equal(pos[v], flex.at(t)[v]) for v in fx.graph.vertices)
    with pytest.raises(ValueError):
        fl.sample_flex(flex, 0)


def test_rhombus_samples():
    fx = load("c4_rhombus")
    g = fx.graph
    flex = fl.walkindep_flex(Framework(g, fx.coords), fx.colourings["c0"])
    samples = fl.sample_flex(flex, 4)
    assert len(samples) == 4
    for _, pos in samples:
        sides = [np.linalg.norm(pos[u] - pos[v]) for u, v in g.edges]
        assert np.allclose(sides, sides[0], rtol=1e-12)
        assert sides[0] == pytest.approx(math.sqrt(2))


# --- two-colouring construction --------------------------------------------------

@pytest.fixture(scope="module")
def fig3():
    return load("fig3")


def test_fig3_conditions(fig3):
    g, d0, d1 = fig3.graph, fig3.colourings["c0"], fig3.colourings["c1"]
    cond = fl.check_double_conditions(g, d0, d1, fig3.notes["w"])
    assert cond.passed, cond.as_dict()
    assert cond.five_cycles


def test_fig3_double_flex(fig3):
    g, w = fig3.graph, fig3.notes["w"]
    flex = fl.double_flex(g, fig3.colourings["c0"], fig3.colourings["c1"], w, seed=0)
    report = fl.verify_flex(g, flex, 400)
    assert report.passed, report.as_dict()
    assert report.length_variation <= 1e-9
    assert report.axis_residual <= 1e-9
    # the split vertex stays on the axis and w itself is its average
    assert abs(flex.at(flex.domain[0])[w][0]) <= 1e-9
    lo, hi = flex.domain
    assert 0 <= lo < hi <= 2 * math.pi
    s = flex.s_of(fl.sample_times(flex, 400))
    # steep near the fold points but never a branch jump
    assert np.abs(np.diff(s)).max() < 0.5


def test_fig3_mirrored_branch(fig3):
    g, w = fig3.graph, fig3.notes["w"]
    flex = fl.double_flex(g, fig3.colourings["c0"], fig3.colourings["c1"], w, mirrored=True)
    assert flex.s_params["branch"] == -1.0
    assert fl.verify_flex(g, flex).passed


def test_domain_contains_zero_for_alpha_pi():
    alpha = math.pi
    lhs = math.cos(0 + alpha)
    assert -1.5 <= lhs <= 0.5
    flex = fl.ParametricFlex(load("c4_rhombus").graph, {}, {}, {}, s_params={"alpha": alpha, "beta": 0.0, "branch": 1.0})
    assert np.isfinite(flex.s_of(0.0))
    lo, hi = math.pi / 3 - alpha, 5 * math.pi / 3 - alpha
    assert lo <= 0 <= hi


def test_colourcomb_refused_and_forced():
    fx = load("colourcomb")
    g, d0, d1, w = fx.graph, fx.colourings["c0"], fx.colourings["c1"], fx.notes["w"]
    cond = fl.check_double_conditions(g, d0, d1, w)
    assert not cond.all_combinations_ok
    assert cond.mutual_certificates
    with pytest.raises(fl.ConditionsFailed):
        fl.double_flex(g, d0, d1, w)
    flex = fl.double_flex(g, d0, d1, w, force=True)
    pos = flex.positions(fl.sample_times(flex, 50))
    idx = {v: i for i, v in enumerate(g.vertices)}
    [inv] = g.invariant_edges
    near = [e for e in g.edges if e != inv and (set(e) & set(inv))]
    assert near
    zero = [e for e in near
            if np.linalg.norm(pos[:, idx[e[0]]] - pos[:, idx[e[1]]], axis=1).max() < 1e-9]
    assert zero


def test_double_rejects_non_invariant_vertex(fig3):
    g = fig3.graph
    v = next(x for x in g.vertices if g.sigma[x] != x)
    with pytest.raises(ValueError):
        fl.check_double_conditions(g, fig3.colourings["c0"], fig3.colourings["c1"], v)


# --- walk-independent frameworks -----------------------------------------------

def test_strip_shear_starts_at_p():
    fx = load("strip", m=2, n=2, seed=0)
    g = fx.graph
    fw = Framework(g, fx.coords)
    apcs = angle_preserving_classes(g)
    r = noninvariant_apc(g, apcs)
    assert r is not None
    d = cartesian_from_apc(g, r, apcs)
    flex = fl.walkindep_flex(fw, d)
    p0 = flex.at(0.0)
    assert max(np.linalg.norm(p0[v] - fx.coords[v]) for v in g.vertices) <= 1e-9
    assert fl.verify_flex(g, flex).passed
    # each class keeps its direction relative to classes of the same colour
    pos = flex.at(0.7)
    for u, v in g.edges:
        if d[(u, v)] == GOLD:
            assert np.allclose(pos[v] - pos[u], fx.coords[v] - fx.coords[u], atol=1e-9)


def test_walkindep_rejects_trapezoid():
    fx = load("c4_rhombus")
    coords = dict(fx.coords)
    coords["3"] = np.array([0.0, 2.0])
    with pytest.raises(fl.NotWalkIndependent):
        fl.walkindep_flex(Framework(fx.graph, coords), fx.colourings["c0"])


def test_walkindep_rejects_non_cartesian():
    fx = load("walkindep")
    non_cart = load("fig2").colourings["c0"]
    with pytest.raises(fl.NotCartesian):
        fl.walkindep_flex(Framework(fx.graph, fx.coords), non_cart)


def test_walkindep_default_base_vertex():
    fx = load("walkindep")
    g = fx.graph
    flex = fl.walkindep_flex(Framework(g, fx.coords), fx.colourings["c1"])
    assert flex.meta["u"] == g.invariant_vertices[0]
    p0 = flex.at(0.0)
    assert max(np.linalg.norm(p0[v] - fx.coords[v]) for v in g.vertices) <= 1e-9
