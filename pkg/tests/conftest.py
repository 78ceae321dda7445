import itertools

import pytest
from hypothesis import settings, strategies as st

from symflex.graph_core import edge_key, glue_double, make_graph, validate_symmetry

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def c4(sigma):
    return validate_symmetry("1234", [("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")], sigma)


@pytest.fixture
def c4_antipodal_graph():
    return c4({"1": "3", "3": "1", "2": "4", "4": "2"})


@pytest.fixture
def c4_axial_graph():
    return c4({"1": "2", "2": "1", "3": "4", "4": "3"})


def involutions(vertices):
    """Every non-identity involution of ``vertices`` as a dict."""
    vertices = list(vertices)

    def matchings(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        yield from matchings(tail)
        for i, other in enumerate(tail):
            for m in matchings(tail[:i] + tail[i + 1:]):
                yield [(first, other)] + m

    for m in matchings(vertices):
        if m:
            sigma = {v: v for v in vertices}
            for a, b in m:
                sigma[a], sigma[b] = b, a
            yield sigma


def naive_cycles(g):
    """All simple cycles as edge sets, by brute force over vertex sequences."""
    seen = set()
    adj = g.adjacency
    for start in g.vertices:
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == start and len(path) >= 3:
                    key = frozenset(tuple(sorted(p)) for p in zip(path, path[1:] + [start]))
                    seen.add(key)
                elif w > start and w not in path:
                    stack.append((w, path + [w]))
    return seen


def naive_nac(g, colouring, cycles=None):
    """Cycle definition: surjective and no cycle with exactly one edge of a colour."""
    if len(set(colouring.values())) < 2:
        return False
    for cyc in cycles if cycles is not None else naive_cycles(g):
        cols = [colouring[e] for e in cyc]
        if cols.count("red") == 1 or cols.count("blue") == 1:
            return False
    return True


@st.composite
def symmetric_graphs(draw):
    """Random connected graph glued to its mirror copy along one edge."""
    n = draw(st.integers(3, 6))
    verts = [str(i) for i in range(n)]
    edges = {(str(i - 1), str(i)) for i in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
    edges |= {edge_key(str(a), str(b)) for a, b in extra if a != b}
    g = make_graph(verts, edges)
    f = draw(st.sampled_from(sorted(g.edges)))
    return glue_double(g, f)




@st.composite
def closed_graphs(draw, max_vertices=6, max_edges=8):
    """Random connected graph with a random involution, edges closed under it."""
    from hypothesis import assume
    from symflex.graph_core import SymmetryError

    n = draw(st.integers(3, max_vertices))
    verts = [str(i) for i in range(n)]
    sigma = draw(st.sampled_from(list(involutions(verts))))
    pairs = list(itertools.combinations(verts, 2))
    chosen = draw(st.sets(st.sampled_from(pairs), min_size=n - 1, max_size=max_edges))
    edges = set()
    for u, v in chosen:
        edges.add(edge_key(u, v))
        edges.add(edge_key(sigma[u], sigma[v]))
    assume(len(edges) <= max_edges and all(u != v for u, v in edges))
    try:
        return validate_symmetry(verts, sorted(edges), sigma)
    except SymmetryError:
        assume(False)


__all__ = ["c4", "involutions", "naive_cycles", "naive_nac", "itertools", "symmetric_graphs", "closed_graphs"]
