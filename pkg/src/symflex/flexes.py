"""Reflection-symmetric flexes built from RS-colourings, and a numeric verifier.

Every flex has the closed form

    p_t(u) = R(t) A(u) + R(-t) tau A'(u) + R(s) B(u) + R(-s) tau B'(u) + Z(u)

with ``A'(u) = A(sigma u)``, ``B'(u) = B(sigma u)``, ``Z(sigma u) = tau Z(u)``
and ``s = s(t)`` for the two-parameter construction (``B`` is zero otherwise).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .colourings import (
    BLUE,
    GOLD,
    RED,
    RS_NO_CYCLE,
    Colouring,
    classify_rs,
    conjugate,
    is_cartesian,
    normalize_colouring,
)
from .graph_core import (
    DEFAULT_PATH_CAP,
    TAU,
    Edge,
    SymmetricGraph,
    component_labels,
    components,
    edge_key,
    make_graph,
    simple_paths,
    spanning_tree,
    tree_path,
    validate_symmetry,
)

MAX_RETRIES = 16
DOMAIN_EPS = 1e-6
S_TABLE_STEP = 1e-3


@dataclass(frozen=True)
class ToleranceProfile:
    length_variation: float = 1e-9
    symmetry: float = 1e-12
    min_edge_gap: float = 1e-8
    nontriviality: float = 1e-3
    axis: float = 1e-9


DEFAULT_TOL = ToleranceProfile()


class FlexError(RuntimeError):
    pass


class NotRSNoCycle(FlexError):
    pass


class DegenerateBasepoints(FlexError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConditionsFailed(FlexError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EmptyParameterDomain(FlexError):
    pass


class BranchDiscontinuity(FlexError):
    pass


class NotWalkIndependent(FlexError):
    pass


class NotCartesian(FlexError):
    pass


def rotation(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


# ----------------------------------------------------------------------
# the flex object
# ----------------------------------------------------------------------

@dataclass
class ParametricFlex:
    graph: SymmetricGraph
    A: dict[str, np.ndarray]
    Ap: dict[str, np.ndarray]
    Z: dict[str, np.ndarray]
    domain: tuple[float, float] = (0.0, 2 * math.pi)
    B: Optional[dict[str, np.ndarray]] = None
    Bp: Optional[dict[str, np.ndarray]] = None
    # s(t) = -beta + branch * arccos(-(1 + 2 cos(t + alpha)) / 2)
    s_params: Optional[dict] = None
    kind: str = "grid"
    colouring: Optional[Colouring] = None
    # coefficients of a split vertex that must stay on the mirror axis
    probes: dict[str, dict[str, np.ndarray]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def s_of(self, t):
        if self.s_params is None:
            return None
        sp = self.s_params
        arg = -(1 + 2 * np.cos(np.asarray(t) + sp["alpha"])) / 2
        return -sp["beta"] + sp["branch"] * np.arccos(np.clip(arg, -1.0, 1.0))

    def _matrices(self, keys):
        return (np.array([self.A[v] for v in keys]), np.array([self.Ap[v] for v in keys]),
                np.array([self.Z[v] for v in keys]),
                None if self.B is None else np.array([self.B[v] for v in keys]),
                None if self.Bp is None else np.array([self.Bp[v] for v in keys]))

    def _evaluate(self, coeffs, ts: np.ndarray) -> np.ndarray:
        """Positions, shape (len(ts), n, 2)."""
        A, Ap, Z, B, Bp = coeffs
        out = _rotate_many(A, ts) + _rotate_many(Ap @ TAU.T, -ts)
        if B is not None:
            s = self.s_of(ts)
            out = out + (_rotate_many(B, s) + _rotate_many(Bp @ TAU.T, -s))
        return out + Z[None, :, :]

    def positions(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, float))
        return self._evaluate(self._matrices(self.graph.vertices), ts)

    def at(self, t: float) -> dict[str, np.ndarray]:
        pos = self.positions([t])[0]
        return {v: pos[i] for i, v in enumerate(self.graph.vertices)}

    def probe_positions(self, ts) -> dict[str, np.ndarray]:
        ts = np.atleast_1d(np.asarray(ts, float))
        out = {}
        for name, c in self.probes.items():
            coeffs = tuple(None if c.get(k) is None else np.array([c[k]])
                           for k in ("A", "Ap", "Z", "B", "Bp"))
            out[name] = self._evaluate(coeffs, ts)[:, 0, :]
        return out


def _rotate_many(vecs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    c = np.cos(ts)[:, None]
    s = np.sin(ts)[:, None]
    x = vecs[None, :, 0]
    y = vecs[None, :, 1]
    return np.stack([c * x - s * y, s * x + c * y], axis=-1)


def sample_times(flex: ParametricFlex, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one sample")
    t0, t1 = flex.domain
    if n == 1:
        return np.array([t0])
    return np.linspace(t0, t1, n)


def sample_flex(flex: ParametricFlex, n: int) -> list[tuple[float, dict[str, np.ndarray]]]:
    """``n`` realisations at uniformly spaced parameters over the domain."""
    ts = sample_times(flex, n)
    pos = flex.positions(ts)
    return [(float(t), {v: pos[k, i] for i, v in enumerate(flex.graph.vertices)})
            for k, t in enumerate(ts)]


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------

@dataclass
class FlexReport:
    length_variation: float
    symmetry_residual: float
    min_edge_gap: float
    nontriviality: float
    samples: int
    axis_residual: Optional[float] = None
    tolerances: ToleranceProfile = DEFAULT_TOL
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        out = {
            "length_variation": self.length_variation,
            "symmetry_residual": self.symmetry_residual,
            "min_edge_gap": self.min_edge_gap,
            "nontriviality": self.nontriviality,
            "samples": self.samples,
            "passed": self.passed,
            "failures": list(self.failures),
        }
        if self.axis_residual is not None:
            out["axis_residual"] = self.axis_residual
        return out


def verify_flex(g: SymmetricGraph, flex: ParametricFlex, n_samples: int = 200,
                tol: ToleranceProfile = DEFAULT_TOL) -> FlexReport:
    """Sample the flex and measure lengths, symmetry, edge gaps and non-triviality."""
    if n_samples < 2:
        raise ValueError("verify_flex needs at least two samples")
    ts = sample_times(flex, n_samples)
    pos = flex.positions(ts)
    idx = {v: i for i, v in enumerate(flex.graph.vertices)}
    eu = np.array([idx[u] for u, _ in g.edges])
    ev = np.array([idx[v] for _, v in g.edges])
    vec = pos[:, eu, :] - pos[:, ev, :]
    lengths = np.linalg.norm(vec, axis=-1)
    mean = lengths.mean(axis=0)
    spread = lengths.max(axis=0) - lengths.min(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(mean > 0, spread / mean, np.inf)
    length_variation = float(rel.max()) if len(rel) else 0.0
    min_gap = float(lengths.min()) if lengths.size else math.inf

    sig = np.array([idx[g.sigma[v]] for v in flex.graph.vertices])
    mirrored = pos @ TAU.T
    symmetry = float(np.abs(pos[:, sig, :] - mirrored).max())

    # angle between each edge and its mirror image, unwrapped along the samples
    su = np.array([idx[g.sigma[u]] for u, _ in g.edges])
    sv = np.array([idx[g.sigma[v]] for _, v in g.edges])
    mvec = pos[:, su, :] - pos[:, sv, :]
    ang = np.arctan2(vec[..., 0] * mvec[..., 1] - vec[..., 1] * mvec[..., 0],
                     (vec * mvec).sum(axis=-1))
    ang = np.unwrap(ang, axis=0)
    nontrivial = float((ang.max(axis=0) - ang.min(axis=0)).max()) if len(g.edges) else 0.0

    axis = None
    if flex.probes:
        probe = flex.probe_positions(ts)
        axis = float(max(np.abs(p[:, 0]).max() for p in probe.values()))

    report = FlexReport(length_variation, symmetry, min_gap, nontrivial, n_samples, axis, tol)
    if not length_variation <= tol.length_variation:
        report.failures.append("length_variation")
    if not symmetry <= tol.symmetry:
        report.failures.append("symmetry")
    if not min_gap >= tol.min_edge_gap:
        report.failures.append("min_edge_gap")
    if not nontrivial >= tol.nontriviality:
        report.failures.append("nontriviality")
    if axis is not None and not axis <= tol.axis:
        report.failures.append("axis")
    return report


# ----------------------------------------------------------------------
# grid construction
# ----------------------------------------------------------------------

def _scales(seed: int, attempt: int) -> tuple[float, float, float]:
    """Three distinct rationals in [1/2, 3/2] drawn from the seed sequence."""
    rng = random.Random(seed * 1_000_003 + attempt)
    picked: list[int] = []
    while len(picked) < 3:
        k = rng.randint(500, 1500)
        if k not in picked:
            picked.append(k)
    return tuple(k / 1000 for k in picked)


def _z_coefficients(g: SymmetricGraph, keep_nongold, scale_d: float, scale_db: float,
                    pinned: Optional[Mapping[int, np.ndarray]] = None) -> dict[str, np.ndarray]:
    """Constant on non-gold components; mirrored pairs get d and tau d, invariant ones (0, y)."""
    comps = components(g, keep_nongold)
    label = {v: i for i, c in enumerate(comps) for v in c}
    pinned = dict(pinned or {})
    value: dict[int, np.ndarray] = {}
    for i, comp in enumerate(comps):
        j = label[g.sigma[comp[0]]]
        if i in pinned:
            value[i] = np.asarray(pinned[i], float)
            value[j] = TAU @ value[i]
    pair_no = inv_no = 0
    for i, comp in enumerate(comps):
        if i in value:
            continue
        j = label[g.sigma[comp[0]]]
        if j == i:
            inv_no += 1
            value[i] = np.array([0.0, inv_no * scale_db])
        else:
            pair_no += 1
            d = np.array([pair_no + 1.0, float((pair_no + 1) ** 2)]) * scale_d
            value[i] = d
            value[j] = TAU @ d
    return {v: value[label[v]] for v in g.vertices}


def _grid_coefficients(g: SymmetricGraph, colouring: Colouring, seed: int, attempt: int):
    scale_r, scale_d, scale_db = _scales(seed, attempt)
    comps = components(g, lambda e: colouring[e] != BLUE)
    a = {}
    for i, comp in enumerate(comps, start=1):
        r = np.array([float(i), float(i * i)]) * scale_r
        for v in comp:
            a[v] = r
    z = _z_coefficients(g, lambda e: colouring[e] != GOLD, scale_d, scale_db)
    return a, z


def forced_coincidences(g: SymmetricGraph, colouring: Colouring) -> set[tuple[str, str]]:
    """Vertex pairs that share every two-colour component; the grid flex merges them."""
    labels = [component_labels(g, lambda e, s=side: colouring[e] in s)
              for side in ({RED, BLUE}, {RED, GOLD}, {BLUE, GOLD})]
    out = set()
    for u, v in itertools.combinations(g.vertices, 2):
        if all(lab[u] == lab[v] for lab in labels):
            out.add((u, v))
    return out


def coincident_pairs(positions: Mapping[str, np.ndarray], tol: float = 1e-8) -> set[tuple[str, str]]:
    keys = sorted(positions)
    pts = np.array([positions[v] for v in keys])
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    i, j = np.nonzero(np.triu(dist < tol, k=1))
    return {(keys[a], keys[b]) for a, b in zip(i, j)}


def grid_flex(g: SymmetricGraph, colouring: Mapping, seed: int = 0,
              cap: int = DEFAULT_PATH_CAP, n_check: int = 64,
              tol: ToleranceProfile = DEFAULT_TOL) -> ParametricFlex:
    """Grid construction from an RS-colouring without almost red-blue cycles."""
    colouring = normalize_colouring(g, colouring)
    verdict = classify_rs(g, colouring, certificate_pool=[], cap=cap)
    if verdict.status != RS_NO_CYCLE:
        raise NotRSNoCycle(f"colouring status is {verdict.status}")
    forced = forced_coincidences(g, colouring)
    report = None
    for attempt in range(MAX_RETRIES):
        a, z = _grid_coefficients(g, colouring, seed, attempt)
        flex = ParametricFlex(
            graph=g,
            A={v: a[v] for v in g.vertices},
            Ap={v: a[g.sigma[v]] for v in g.vertices},
            Z=z,
            kind="grid",
            colouring=colouring,
            meta={"seed": seed, "attempt": attempt},
        )
        report = verify_flex(g, flex, n_check, tol)
        extra = coincident_pairs(flex.at(0.0)) - forced
        if report.passed and not extra:
            return flex
    raise DegenerateBasepoints(f"no generic base points after {MAX_RETRIES} attempts", report)


# ----------------------------------------------------------------------
# two-colouring construction
# ----------------------------------------------------------------------

PAIR_VALUES = ((RED, RED), (RED, BLUE), (BLUE, RED), (BLUE, BLUE), (GOLD, GOLD))


@dataclass
class DoubleConditions:
    same_gold: bool = False
    five_cycles: list[tuple[str, ...]] = field(default_factory=list)
    partition: Optional[tuple[tuple[str, ...], tuple[str, ...]]] = None
    partition_ok: bool = False
    colour_paths_ok: bool = False
    colour_path_witness: Optional[tuple] = None
    all_combinations_ok: bool = False
    all_combinations_witness: Optional[tuple[str, ...]] = None
    mutual_certificates: bool = False
    truncated: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.same_gold and bool(self.five_cycles) and self.partition_ok
                and self.colour_paths_ok and self.all_combinations_ok
                and self.mutual_certificates and not self.truncated)

    def as_dict(self) -> dict:
        return {
            "same_gold": self.same_gold,
            "five_cycles": [list(c) for c in self.five_cycles],
            "partition": None if self.partition is None else [list(p) for p in self.partition],
            "partition_ok": self.partition_ok,
            "colour_paths_ok": self.colour_paths_ok,
            "colour_path_witness": None if self.colour_path_witness is None
            else [list(x) if isinstance(x, tuple) else x for x in self.colour_path_witness],
            "all_combinations_ok": self.all_combinations_ok,
            "all_combinations_witness": None if self.all_combinations_witness is None
            else list(self.all_combinations_witness),
            "mutual_certificates": self.mutual_certificates,
            "truncated": list(self.truncated),
            "passed": self.passed,
        }


def _pair(d1: Colouring, d2: Colouring):
    return {e: (d1[e], d2[e]) for e in d1}


def _invariant_five_cycles(g: SymmetricGraph, w: str, pair) -> list[tuple[str, ...]]:
    """5-cycles (u, x, w, sigma x, sigma u) with u(sigma u) the only gold edge."""
    out = []
    for x in g.adjacency[w]:
        sx = g.sigma[x]
        if sx == x or not g.has_edge(w, sx):
            continue
        for u in g.adjacency[x]:
            su = g.sigma[u]
            if u in (w, sx) or su == u or not g.has_edge(u, su) or not g.has_edge(sx, su):
                continue
            cyc = (u, x, w, sx, su)
            cols = [pair[edge_key(cyc[i], cyc[(i + 1) % 5])] for i in range(5)]
            if sum(c == (GOLD, GOLD) for c in cols) == 1 and pair[edge_key(u, su)] == (GOLD, GOLD):
                if not any(GOLD in c and c != (GOLD, GOLD) for c in cols):
                    out.append(cyc)
    return out


def _neighbour_partition(g: SymmetricGraph, w: str, colouring: Colouring):
    rest = [v for v in g.vertices if v != w]
    sub = make_graph(rest, [e for e in g.edges if w not in e and colouring[e] != GOLD])
    label = component_labels(sub)
    groups: dict[int, list[str]] = {}
    for x in g.adjacency[w]:
        groups.setdefault(label[x], []).append(x)
    parts = sorted(tuple(sorted(p)) for p in groups.values())
    if len(parts) != 2:
        return None
    n, sn = parts
    if tuple(sorted(g.sigma[x] for x in n)) != sn:
        return None
    return n, sn


def _connected_avoiding(g: SymmetricGraph, u: str, v: str, allowed, removed: str) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for y in g.adjacency[x]:
            if y == removed or y in seen or not allowed(edge_key(x, y)):
                continue
            seen.add(y)
            stack.append(y)
    return False


def _split_graph(g: SymmetricGraph, w: str, n: tuple[str, ...]):
    """Split ``w`` into ``w1`` (neighbours in ``n``) and ``w2`` (the mirror side)."""
    w1, w2 = f"{w}~1", f"{w}~2"
    edges = []
    origin: dict[Edge, Edge] = {}
    for e in g.edges:
        if w in e:
            x = e[0] if e[1] == w else e[1]
            new = edge_key(x, w1 if x in n else w2)
        else:
            new = e
        edges.append(new)
        origin[new] = e
    vertices = [v for v in g.vertices if v != w] + [w1, w2]
    sigma = {v: g.sigma[v] for v in g.vertices if v != w}
    sigma.update({w1: w2, w2: w1})
    return validate_symmetry(vertices, edges, sigma), w1, w2, origin


def check_double_conditions(g: SymmetricGraph, d1: Mapping, d2: Mapping, w: str,
                            cap: int = DEFAULT_PATH_CAP) -> DoubleConditions:
    """Evaluate the hypotheses of the two-colouring construction.

    For an edge ``uv`` not at ``w`` the colour-path condition asks that ``u``
    and ``v`` are separated by the edges of colour pair ``delta(uv)`` once
    ``w`` may only be crossed within one side of the partition.  For an edge
    ``xw`` the endpoint ``w`` is read as the split copy on the side of ``x``.
    """
    d1 = normalize_colouring(g, d1)
    d2 = normalize_colouring(g, d2)
    if g.sigma[w] != w:
        raise ValueError(f"{w} is not an invariant vertex")
    pair = _pair(d1, d2)
    res = DoubleConditions()
    res.same_gold = ({e for e in g.edges if d1[e] == GOLD} == {e for e in g.edges if d2[e] == GOLD})
    res.five_cycles = _invariant_five_cycles(g, w, pair)

    part = _neighbour_partition(g, w, d1)
    res.partition = part
    res.partition_ok = part is not None and part == _neighbour_partition(g, w, d2)

    if part is not None:
        n, sn = part
        h, w1, w2, origin = _split_graph(g, w, n)
        ok = True
        for e in h.edges:
            colour = pair[origin[e]]
            allowed = (lambda f, c=colour: pair[origin[f]] != c)
            u, v = e
            if w1 in e or w2 in e:
                other = w2 if w1 in e else w1
                blocked = [other]
            else:
                blocked = [w1, w2]
            for removed in blocked:
                if _connected_avoiding(h, u, v, lambda f, a=allowed, e0=e: f != e0 and a(f), removed):
                    ok = False
                    res.colour_path_witness = (origin[e], removed)
                    break
            if not ok:
                break
        res.colour_paths_ok = ok

        ok = True
        for x in n:
            for y in sn:
                found = simple_paths(g, x, y, avoid=lambda f: w in f, cap=cap)
                if found.truncated:
                    res.truncated.append("all_combinations")
                for path in found.paths:
                    cyc = (w,) + path
                    vals = {pair[edge_key(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc))}
                    if len(vals) < 5:
                        ok = False
                        res.all_combinations_witness = cyc
                        break
                if not ok:
                    break
            if not ok:
                break
        res.all_combinations_ok = ok

    v1 = classify_rs(g, d1, certificate_pool=[d2], cap=cap)
    v2 = classify_rs(g, d2, certificate_pool=[d1], cap=cap)
    res.mutual_certificates = v1.is_rs and v2.is_rs
    return res


def _normalise_pair(g: SymmetricGraph, d1: Colouring, d2: Colouring, w: str, part):
    """Swap / conjugate so that delta(u x) = (blue, blue) and delta(x w1) = (blue, red)."""
    for swap, c1, c2 in itertools.product((False, True), repeat=3):
        e1, e2 = (d2, d1) if swap else (d1, d2)
        e1 = conjugate(g, e1) if c1 else e1
        e2 = conjugate(g, e2) if c2 else e2
        pair = _pair(e1, e2)
        for n, sn in (part, part[::-1]):
            for cyc in _invariant_five_cycles(g, w, pair):
                u, x = cyc[0], cyc[1]
                if x not in n:
                    continue
                if pair[edge_key(u, x)] == (BLUE, BLUE) and pair[edge_key(x, w)] == (BLUE, RED):
                    return e1, e2, n, sn, u, x, {"swap": swap, "conjugate1": c1, "conjugate2": c2}
    return None


def double_flex(g: SymmetricGraph, d1: Mapping, d2: Mapping, w: str, seed: int = 0,
                mirrored: bool = False, force: bool = False, cap: int = DEFAULT_PATH_CAP,
                n_check: int = 200, tol: ToleranceProfile = DEFAULT_TOL) -> ParametricFlex:
    """Flex from two RS-colourings that certify each other, around invariant vertex ``w``.

    The vertex ``w`` is split; ``s(t)`` keeps the split copy on the mirror
    axis.  With ``force`` the construction runs even if the hypotheses fail
    and the unchecked result is returned.
    """
    d1 = normalize_colouring(g, d1)
    d2 = normalize_colouring(g, d2)
    cond = check_double_conditions(g, d1, d2, w, cap)
    if not cond.passed and not force:
        raise ConditionsFailed("hypotheses of the two-colouring construction fail", cond)
    if cond.partition is None:
        raise ConditionsFailed("neighbours of the invariant vertex do not split in two", cond)
    norm = _normalise_pair(g, d1, d2, w, cond.partition)
    if norm is None:
        raise ConditionsFailed("no swap or conjugation gives the required 5-cycle colours", cond)
    e1, e2, n, _, u_bar, x, how = norm
    h, w1, w2, origin = _split_graph(g, w, n)
    pair = {e: (e1[origin[e]], e2[origin[e]]) for e in h.edges}

    a_lab = component_labels(h, lambda e: pair[e] != (BLUE, BLUE))
    b_lab = component_labels(h, lambda e: pair[e] != (BLUE, RED))
    z_lab = component_labels(h, lambda e: pair[e] != (GOLD, GOLD))
    separated = (a_lab[x] != a_lab[u_bar] and b_lab[w1] != b_lab[u_bar]
                 and z_lab[u_bar] != z_lab[h.sigma[u_bar]])
    if not separated and not force:
        raise ConditionsFailed("split graph does not separate the 5-cycle vertices", cond)

    report = None
    for attempt in range(MAX_RETRIES):
        rng = random.Random(seed * 1_000_003 + attempt)
        # keep [pi/3 - alpha, 5 pi/3 - alpha] inside [0, 2 pi]
        alpha = rng.uniform(-math.pi / 3 + 0.05, math.pi / 3 - 0.05)
        beta = rng.uniform(0, 2 * math.pi)
        scale_r, scale_d, scale_db = _scales(seed, attempt)

        def assign(labels, zero_of, special_of, angle):
            vals: dict[int, np.ndarray] = {labels[special_of]: 2 * np.array([math.cos(angle), math.sin(angle)])}
            # a forced run may merge the two components; the zero wins
            vals[labels[zero_of]] = np.zeros(2)
            k = 0
            for v in h.vertices:
                if labels[v] not in vals:
                    k += 1
                    phi = rng.uniform(0, 2 * math.pi)
                    rad = scale_r * (1 + k) * rng.uniform(0.5, 1.5)
                    vals[labels[v]] = rad * np.array([math.cos(phi), math.sin(phi)])
            return {v: vals[labels[v]] for v in h.vertices}

        a = assign(a_lab, u_bar, x, alpha)
        b = assign(b_lab, u_bar, w1, beta)
        zc = components(h, lambda e: pair[e] != (GOLD, GOLD))
        pinned = {}
        if z_lab[u_bar] != z_lab[h.sigma[u_bar]]:
            pinned[next(i for i, c in enumerate(zc) if u_bar in c)] = np.array([1.0, 0.0])
        z = _z_coefficients(h, lambda e: pair[e] != (GOLD, GOLD), scale_d, scale_db, pinned)

        A, Ap, B, Bp, Z = {}, {}, {}, {}, {}
        for v in g.vertices:
            if v == w:
                A[v] = Ap[v] = (a[w1] + a[w2]) / 2
                B[v] = Bp[v] = (b[w1] + b[w2]) / 2
                Z[v] = (z[w1] + z[w2]) / 2
            else:
                A[v], Ap[v] = a[v], a[h.sigma[v]]
                B[v], Bp[v] = b[v], b[h.sigma[v]]
                Z[v] = z[v]
        lo = math.pi / 3 - alpha + DOMAIN_EPS
        hi = 5 * math.pi / 3 - alpha - DOMAIN_EPS
        if not hi > lo:
            raise EmptyParameterDomain("empty t-domain")
        flex = ParametricFlex(
            graph=g, A=A, Ap=Ap, Z=Z, B=B, Bp=Bp, domain=(lo, hi),
            s_params={"alpha": alpha, "beta": beta, "branch": -1.0 if mirrored else 1.0},
            kind="double",
            colouring=e1,
            probes={w1: {"A": a[w1], "Ap": a[w2], "B": b[w1], "Bp": b[w2], "Z": z[w1]}},
            meta={"seed": seed, "attempt": attempt, "w": w, "u": u_bar, "x": x,
                  "normalisation": how, "second_colouring": e2},
        )
        s_vals = flex.s_of(sample_times(flex, n_check))
        jumps = np.abs(np.diff(np.unwrap(s_vals)))
        if len(jumps) and jumps.max() > 1.0:
            raise BranchDiscontinuity("s(t) jumps between samples")
        if force:
            return flex
        report = verify_flex(g, flex, n_check, tol)
        if report.passed:
            return flex
    raise DegenerateBasepoints(f"no generic base points after {MAX_RETRIES} attempts", report)


# ----------------------------------------------------------------------
# walk-independent frameworks
# ----------------------------------------------------------------------

def walkindep_flex(fw, colouring: Mapping, u_bar: Optional[str] = None,
                   tol: float = 1e-9) -> ParametricFlex:
    """Flex of a walk-independent framework starting at its own realisation.

    ``fw`` is a :class:`symflex.frameworks.Framework`.
    """
    from .frameworks import is_walk_independent

    g = fw.graph
    colouring = normalize_colouring(g, colouring)
    check = is_walk_independent(fw, tol)
    if not check:
        raise NotWalkIndependent(f"framework is not walk-independent: {check.reason}")
    if not is_cartesian(g, colouring):
        raise NotCartesian("colouring is not Cartesian")
    if classify_rs(g, colouring, certificate_pool=[]).status != RS_NO_CYCLE:
        raise NotCartesian("colouring is not an RS-colouring without almost red-blue cycles")
    if u_bar is None:
        u_bar = g.invariant_vertices[0] if g.invariant_vertices else g.vertices[0]
    shift = np.array([0.0, fw.p[u_bar][1]])
    p = {v: fw.p[v] - shift for v in g.vertices}

    parent = spanning_tree(g, u_bar)
    acc = {c: {} for c in (RED, BLUE, GOLD)}
    for v in g.vertices:
        path = tree_path(parent, u_bar, v)
        sums = {c: np.zeros(2) for c in (RED, BLUE, GOLD)}
        for x, y in zip(path, path[1:]):
            sums[colouring[edge_key(x, y)]] += p[y] - p[x]
        for c in sums:
            acc[c][v] = sums[c]
    su = g.sigma[u_bar]
    a = {v: acc[BLUE][v] - acc[BLUE][su] / 2 for v in g.vertices}
    z = {v: acc[GOLD][v] - acc[GOLD][su] / 2 + shift for v in g.vertices}
    return ParametricFlex(
        graph=g,
        A=a,
        Ap={v: a[g.sigma[v]] for v in g.vertices},
        Z=z,
        kind="walkindep",
        colouring=colouring,
        meta={"u": u_bar},
    )
