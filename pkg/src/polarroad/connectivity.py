"""Numerical connectivity checks: sampling, epsilon-graphs, curve tracing, RM_u verdicts.

Semi-algebraic connectivity is approximated by connectivity of epsilon-graphs
over certified sample points. Verdicts are three-valued: a sampling problem
yields "inconclusive", never a spurious "fail".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq
from scipy.optimize import linear_sum_assignment
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from . import univariate as uv
from .errors import UnsupportedShapeError
from .geometry import PolyMap, VarietySpec, critical_ideal, is_squared_distance
from .groebner import Ideal, krull_dimension
from .polyring import Poly, QQ, Ring
from .zerodim import solution_set

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

MAX_VARS = 4


class CompiledPoly:
    """Vectorised float evaluation of a polynomial and its gradient."""

    def __init__(self, p: Poly):
        self.n = p.ring.nvars
        items = sorted(p.terms_dict.items())
        self.exps = np.array([e for e, _ in items], dtype=float).reshape(len(items), self.n)
        self.coeffs = np.array([float(c) for _, c in items])

    def __call__(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        mons = np.prod(X[:, None, :] ** self.exps[None, :, :], axis=2)
        return mons @ self.coeffs

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        g = np.zeros(self.n)
        for k in range(self.n):
            e = self.exps[:, k]
            mask = e > 0
            if not mask.any():
                continue
            ex = self.exps[mask].copy()
            ex[:, k] -= 1
            g[k] = np.sum(self.coeffs[mask] * e[mask] * np.prod(x[None, :] ** ex, axis=1))
        return g


class CompiledSystem:
    def __init__(self, polys):
        self.parts = [CompiledPoly(p) for p in polys]

    def __call__(self, x):
        return np.array([float(p(x)[0]) for p in self.parts])

    def jacobian(self, x):
        return np.array([p.gradient(x) for p in self.parts])


# ---------------------------------------------------------------------------
# sampling


@dataclass
class PointCloud:
    points: np.ndarray
    residuals: np.ndarray
    source: str
    u: object
    tolerance: float
    requested: int
    lines_used: int = 0
    notes: list = field(default_factory=list)
    dimension: int = 2

    def __len__(self):
        return len(self.points)

    @property
    def shortfall(self) -> bool:
        return len(self.points) < self.requested


def _region(phi1: Poly, u, radius):
    """(center, radius, is_ball) of the sampling region."""
    n = phi1.ring.nvars
    c = is_squared_distance(phi1)
    if c is not None:
        if u < 0:
            return np.array([float(a) for a in c]), 0.0, True
        return np.array([float(a) for a in c]), float(u) ** 0.5, True
    if radius is None:
        raise UnsupportedShapeError("a sampling radius is required when phi_1 is not a squared distance")
    return np.zeros(n), float(radius), False


def _uniform_in_ball(rng: random.Random, n: int, r: float):
    while True:
        v = [rng.uniform(-1, 1) for _ in range(n)]
        if sum(a * a for a in v) <= 1:
            return [a * r for a in v]


def _direction(rng: random.Random, n: int):
    while True:
        v = [rng.gauss(0, 1) for _ in range(n)]
        s = sum(a * a for a in v) ** 0.5
        if s > 1e-3:
            return [a / s for a in v]


def _to_q(x: float, bits: int = 24):
    return mpq(round(x * (1 << bits)), 1 << bits)


def sample_real_points(I: Ideal, phi1: Poly, u, count: int, seed: int = 0, tolerance: float = 1e-10,
                       radius=None, max_attempts: int | None = None) -> PointCloud:
    """Real points of V(I) with phi1 <= u from seeded random rational lines (or planes for space curves)."""
    R = I.ring
    n = R.nvars
    if n > MAX_VARS:
        raise UnsupportedShapeError(f"sampling supports at most {MAX_VARS} variables, got {n}")
    u = QQ(u)
    dim = krull_dimension(I)
    if dim == -1:
        return PointCloud(np.zeros((0, n)), np.zeros(0), str(I), u, tolerance, count, 0, ["empty variety"], 0)
    if dim == n - 1 and len(I.generators) == 1:
        cuts = 1
    elif dim == 1:
        cuts = n - 1
    else:
        raise UnsupportedShapeError(f"sampling supports hypersurfaces and curves; dimension {dim} in {n} variables")
    center, r, ball = _region(phi1, u, radius)
    rng = random.Random(seed)
    comp = CompiledSystem(I.generators)
    phi_c = CompiledPoly(phi1)
    uf = float(u)
    pts = []
    res = []
    attempts = 0
    limit = max_attempts or (20 * count + 200 if cuts == 1 else 4 * count + 50)
    while len(pts) < count and attempts < limit and r > 0:
        attempts += 1
        if cuts == 1:
            found = _line_points(I.generators[0], center, r, ball, rng)
        else:
            found = _plane_points(I, center, r, ball, rng)
        for p in found:
            x = np.array(p)
            if float(phi_c(x)[0]) > uf + tolerance:
                continue
            if not ball and np.max(np.abs(x - center)) > r:
                continue
            rr = float(np.max(np.abs(comp(x))))
            if rr <= tolerance:
                pts.append(x)
                res.append(rr)
    notes = []
    if len(pts) < count:
        notes.append(f"too few hits: {len(pts)} of {count} after {attempts} sections")
    P = np.array(pts).reshape(len(pts), n)
    return PointCloud(P, np.array(res), str(I), u, tolerance, count, attempts, notes, dim)


_LINE_RING = Ring(["s"], allow_reserved=True)


def _line_points(f: Poly, center, r, ball, rng):
    n = f.ring.nvars
    if ball:
        p0 = [c + a for c, a in zip(center, _uniform_in_ball(rng, n, r))]
    else:
        p0 = [c + rng.uniform(-r, r) for c in center]
    d = _direction(rng, n)
    q0 = [_to_q(a) for a in p0]
    qd = [_to_q(a) for a in d]
    s = _LINE_RING.var(0)
    u = f.compose([_LINE_RING.const(a) + s * b for a, b in zip(q0, qd)])
    if u.is_constant():
        return []
    out = []
    coeffs = u.univariate_coeffs(0)
    sq = uv.squarefree_part(coeffs)
    for iv in uv.isolate_real_roots(sq):
        iv = uv.refine_root(sq, iv, mpq(1, 2 ** 48))
        m = float(iv.mid)
        out.append([float(a) + m * float(b) for a, b in zip(q0, qd)])
    return out


def _plane_points(I: Ideal, center, r, ball, rng):
    R = I.ring
    n = R.nvars
    p0 = [c + a for c, a in zip(center, _uniform_in_ball(rng, n, r))] if ball else [
        c + rng.uniform(-r, r) for c in center]
    d = [_to_q(a) for a in _direction(rng, n)]
    h = sum((x * c for x, c in zip(R.gens(), d)), R.zero()) - sum(
        (_to_q(a) * c for a, c in zip(p0, d)), mpq(0))
    J = Ideal(R, list(I.generators) + [h], I.budget)
    try:
        boxes = solution_set(J, mpq(1, 2 ** 40)).real_boxes
    except Exception:
        return []
    return [list(b.as_floats()) for b in boxes]


# ---------------------------------------------------------------------------
# epsilon-graphs


@dataclass
class ComponentGraph:
    labels: np.ndarray
    n_components: int
    epsilon: float
    edges: np.ndarray
    stable: bool
    counts: dict

    @property
    def vertices(self):
        return np.arange(len(self.labels))


def _components(points: np.ndarray, eps: float):
    m = len(points)
    if m == 0:
        return 0, np.zeros(0, dtype=int), np.zeros((0, 2), dtype=int)
    pairs = cKDTree(points).query_pairs(eps, output_type="ndarray")
    G = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(m, m)) if len(pairs) else coo_matrix((m, m))
    k, labels = connected_components(G, directed=False)
    return k, _canonical_labels(labels), pairs


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    # relabel by first occurrence so labels do not depend on library internals
    mapping = {}
    out = np.empty_like(labels)
    for idx, lab in enumerate(labels):
        out[idx] = mapping.setdefault(lab, len(mapping))
    return out


def median_nn_distance(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    d, _ = cKDTree(points).query(points, k=2)
    return float(np.median(d[:, 1]))


def thin_cloud(points: np.ndarray, radius: float) -> np.ndarray:
    """Indices of a greedy radius-net: every point lies within ``radius`` of a kept point."""
    if len(points) == 0:
        return np.zeros(0, dtype=int)
    tree = cKDTree(points)
    alive = np.ones(len(points), dtype=bool)
    keep = []
    for k in range(len(points)):
        if not alive[k]:
            continue
        keep.append(k)
        alive[tree.query_ball_point(points[k], radius)] = False
    return np.array(keep, dtype=int)


def knn_scale(points: np.ndarray, k: int = 6) -> float:
    """Median distance to the k-th nearest neighbour (a local sampling scale)."""
    if len(points) < 2:
        return 0.0
    k = min(k, len(points) - 1)
    d, _ = cKDTree(points).query(points, k=k + 1)
    return float(np.median(d[:, k]))


def neighbours_for_dimension(dim: int) -> int:
    # gaps between line samples on a curve are far more uneven than on a surface
    return 8 if dim <= 1 else 3


def net_components(points: np.ndarray, k: int = 3):
    """Epsilon-graph on a greedy net of the points.

    Raw line samples clump (Poisson statistics), so isolated samples would
    split a default-epsilon graph; a net with spacing of the k-th neighbour
    scale has nearest-neighbour distances concentrated in [r, 2r].
    Returns (net indices, ComponentGraph on the net).
    """
    idx = thin_cloud(points, knn_scale(points, k))
    return idx, epsilon_components(points[idx])


def epsilon_components(cloud, eps: float | None = None) -> ComponentGraph:
    points = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=float)
    if len(points) == 0:
        raise ValueError("cannot build an epsilon-graph on an empty cloud")
    if eps is None:
        eps = 3.0 * median_nn_distance(points)
    k, labels, pairs = _components(points, eps)
    k2, _, _ = _components(points, 2 * eps)
    return ComponentGraph(labels, k, eps, pairs, k == k2, {"eps": k, "2eps": k2})


# ---------------------------------------------------------------------------
# exact level slicing of curves


@dataclass
class Polyline:
    branch: int
    levels: list
    points: np.ndarray


@dataclass
class SliceResult:
    levels: list
    per_level: list  # list of (level, array of points)
    polylines: list
    perturbed: list


def slice_trace_curve(curve: Ideal, phi1: Poly, levels, width=mpq(1, 2 ** 30), offset=None) -> SliceResult:
    """Exact real points of curve + <phi1 - t> per level, linked into polylines."""
    R = curve.ring
    if curve.is_unit():
        return SliceResult([], [], [], [])
    dim = krull_dimension(curve)
    if dim != 1:
        raise UnsupportedShapeError(f"slice tracing needs a curve; dimension is {dim}")
    levels = sorted(QQ(t) for t in levels)
    if offset is None:
        gaps = [b - a for a, b in zip(levels, levels[1:]) if b > a]
        offset = (min(gaps) if gaps else mpq(1)) / 1000
    per_level = []
    perturbed = []
    for t in levels:
        tt = t
        for _ in range(8):
            sol = solution_set(Ideal(R, list(curve.generators) + [phi1 - tt], curve.budget), width)
            if sol.distinct_count == sol.multiplicity_count:
                break
            # a critical value of phi1 on the curve: move off it
            perturbed.append((t, tt + offset))
            tt = tt + offset
        pts = np.array([b.as_floats() for b in sol.real_boxes]).reshape(-1, R.nvars)
        per_level.append((tt, pts))
    polylines = _link_levels(per_level)
    return SliceResult([t for t, _ in per_level], per_level, polylines, perturbed)


def _link_levels(per_level):
    open_lines = []  # (branch id, levels, points)
    done = []
    next_id = 0
    for t, pts in per_level:
        new_open = []
        used = set()
        if open_lines and len(pts):
            prev = np.array([pl[2][-1] for pl in open_lines])
            cost = np.linalg.norm(prev[:, None, :] - pts[None, :, :], axis=2)
            rows, cols = linear_sum_assignment(cost)
            matched = set()
            for r_, c_ in zip(rows, cols):
                bid, lv, ps = open_lines[r_]
                new_open.append((bid, lv + [t], ps + [pts[c_]]))
                used.add(c_)
                matched.add(r_)
            for k, pl in enumerate(open_lines):
                if k not in matched:
                    done.append(pl)
        else:
            done.extend(open_lines)
        for c_ in range(len(pts)):
            if c_ not in used:
                new_open.append((next_id, [t], [pts[c_]]))
                next_id += 1
        open_lines = new_open
    done.extend(open_lines)
    out = [Polyline(b, lv, np.array(ps)) for b, lv, ps in done]
    out.sort(key=lambda pl: pl.branch)
    return out


# ---------------------------------------------------------------------------
# numerical continuation along curves


def _newton(system: CompiledSystem, x, extra=None, tol=1e-12, iters=30):
    """Gauss-Newton on system(x) = 0 (plus an optional affine row a.x = b)."""
    x = np.array(x, dtype=float)
    for _ in range(iters):
        F = system(x)
        J = system.jacobian(x)
        if extra is not None:
            a, b = extra
            F = np.append(F, a @ x - b)
            J = np.vstack([J, a])
        if np.max(np.abs(F)) < tol:
            return x, True
        dx = np.linalg.lstsq(J, -F, rcond=None)[0]
        x = x + dx
        if not np.all(np.isfinite(x)) or np.linalg.norm(dx) > 1e3:
            return x, False
    F = system(x)
    return x, bool(np.max(np.abs(F)) < 1e-9)


def _tangent(system: CompiledSystem, x):
    J = system.jacobian(x)
    _, s, vt = np.linalg.svd(J)
    t = vt[-1]
    # well-defined only if the Jacobian has full rank n-1
    ok = len(s) >= J.shape[1] - 1 and (s[min(len(s), J.shape[1] - 1) - 1] > 1e-10)
    return t / np.linalg.norm(t), ok


def trace_curve(system: CompiledSystem, seed, inside, step: float = 0.02, max_steps: int = 20000):
    """Trace the real curve through ``seed`` in both directions while ``inside`` holds.

    Returns a list of polylines (arrays of points).
    """
    seed = np.asarray(seed, dtype=float)
    t0, ok = _tangent(system, seed)
    if not ok:
        return [seed[None, :]]
    out = []
    closed = False
    for sign in (1.0, -1.0):
        if closed:
            break
        pts = [seed]
        x = seed
        t = sign * t0
        h = step
        travelled = 0.0
        for _ in range(max_steps):
            moved = False
            while h > step * 1e-4:
                pred = x + h * t
                y, conv = _newton(system, pred, extra=(t, t @ pred))
                if conv and np.linalg.norm(y - x) < 2.5 * h:
                    moved = True
                    break
                h /= 2
            if not moved:
                break
            tn, ok = _tangent(system, y)
            if not ok:
                tn = t
            if tn @ t < 0:
                tn = -tn
            travelled += float(np.linalg.norm(y - x))
            if not inside(y):
                pts.append(y)
                break
            if travelled > 3 * step and np.linalg.norm(y - seed) < 0.75 * step:
                pts.append(seed)
                closed = True
                break
            pts.append(y)
            x, t = y, tn
            h = min(step, h * 2)
        out.append(np.array(pts))
    if closed:
        return [out[0]]
    return [np.vstack([out[1][::-1], out[0][1:]])]


def _near_polylines(x, polylines, tol):
    for pl in polylines:
        if len(pl) and np.min(np.linalg.norm(pl - x, axis=1)) < tol:
            return True
    return False


# ---------------------------------------------------------------------------
# RM_u verification


@dataclass
class ConnectivityReport:
    u: object
    variety_components: int
    per_component: list  # (has_roadmap_point, roadmap_connected)
    verdict: str
    diagnostics: dict

    def to_dict(self):
        return {
            "u": str(self.u),
            "variety_components": self.variety_components,
            "per_component": [
                {"has_roadmap_point": bool(a), "roadmap_connected": bool(b)} for a, b in self.per_component
            ],
            "verdict": self.verdict,
            "diagnostics": self.diagnostics,
        }


@dataclass
class VerifyParams:
    samples: int = 2500
    seed: int = 0
    step: float = 0.02
    tolerance: float = 1e-10
    link_factor: float = 3.0


@dataclass
class RoadmapRealization:
    w_polylines: list
    f_polylines: list
    fiber_levels: list

    def vertices(self):
        parts = [pl for pl in self.w_polylines + self.f_polylines if len(pl)]
        return np.vstack(parts) if parts else np.zeros((0, 0))


def _gap_levels(values, u):
    """One rational level inside each gap between consecutive critical values up to u."""
    vals = sorted(v for v in values if v < u)
    pts = vals + [u]
    levels = []
    for a, b in zip(pts, pts[1:]):
        if b > a:
            levels.append((a + b) / 2)
    if not vals:
        levels.append(u / 2 if u > 0 else u)
    return levels


def realize_roadmap(bundle, u, params: VerifyParams | None = None) -> RoadmapRealization:
    """Float polylines for W_i and (if present) the fibers of F_i inside phi_1 <= u."""
    params = params or VerifyParams()
    if bundle.i != 2:
        raise UnsupportedShapeError("roadmap realization is implemented for i = 2 (one-dimensional W_i)")
    V = bundle.variety
    u = QQ(u)
    phi1 = bundle.map[0]
    phi_c = CompiledPoly(phi1)
    uf = float(u)
    tol = 1e-9

    def inside(x):
        return float(phi_c(x)[0]) <= uf + tol

    Wgens = list(bundle.W.W_ideal.generators)
    w_polys = []
    if not bundle.W.W_ideal.is_unit():
        Wsys = CompiledSystem(Wgens)
        crit = []
        for cv in bundle.critical_values:
            cv.refine(mpq(1, 2 ** 40))
            crit.append(cv.interval.mid)
        levels = _gap_levels(crit, u)
        sl = slice_trace_curve(bundle.W.W_ideal, phi1, levels)
        for _, pts in sl.per_level:
            for x in pts:
                if _near_polylines(x, w_polys, 2 * params.step):
                    continue
                w_polys.extend(trace_curve(Wsys, x, inside, params.step))
        # isolated real points of W inside the region (e.g. local extrema)
        for b in bundle.K_points.real_boxes:
            x = np.array(b.as_floats())
            if inside(x) and not _near_polylines(x, w_polys, 2 * params.step):
                if all(abs(float(p(x)[0])) < 1e-8 for p in Wsys.parts):
                    w_polys.extend(trace_curve(Wsys, x, inside, params.step))
    f_polys = []
    fiber_levels = []
    if bundle.has_fibers:
        for root in bundle.fiber_values:
            root.refine(mpq(1, 2 ** 50))
            v = float(root.interval.mid)
            if v > uf + tol:
                continue
            fiber_levels.append(v)
            f_polys.extend(_trace_fiber(V, phi1, root.interval.mid, w_polys, inside, params))
    return RoadmapRealization(w_polys, f_polys, fiber_levels)


def _trace_fiber(V: VarietySpec, phi1: Poly, v, w_polys, inside, params):
    """Trace V cap {phi1 = v} starting from where the W polylines cross the level."""
    fsys = CompiledSystem(list(V.generators) + [phi1 - v])
    phi_c = CompiledPoly(phi1)
    vf = float(v)
    seeds = []
    for pl in w_polys:
        vals = phi_c(pl) - vf
        for k in range(len(pl)):
            if abs(vals[k]) < 1e-9:
                seeds.append(pl[k])
            if k + 1 < len(pl) and vals[k] * vals[k + 1] < 0:
                lam = vals[k] / (vals[k] - vals[k + 1])
                seeds.append(pl[k] + lam * (pl[k + 1] - pl[k]))
    out = []
    for s in seeds:
        x, ok = _newton(fsys, s)
        if not ok or np.linalg.norm(x - s) > 4 * params.step:
            continue
        if _near_polylines(x, out, 2 * params.step):
            continue
        out.extend(trace_curve(fsys, x, inside, params.step))
    return out


def verify_rm(V: VarietySpec, bundle, u, params: VerifyParams | None = None, cloud: PointCloud | None = None) -> ConnectivityReport:
    """Check RM_u numerically: every component of V cap {phi1 <= u} meets the roadmap in a connected set."""
    params = params or VerifyParams()
    u = QQ(u)
    phi1 = bundle.map[0]
    diag = {"seed": params.seed, "samples_requested": params.samples}
    crit_max = max((c.interval.hi for c in bundle.critical_values), default=None)
    if crit_max is not None and u <= crit_max:
        diag["warning"] = "u is not above the largest critical value"
    if cloud is None:
        cloud = sample_real_points(V.ideal(), phi1, u, params.samples, params.seed, params.tolerance)
    diag["samples"] = len(cloud)
    if len(cloud) == 0:
        diag["reason"] = "no real sample points"
        return ConnectivityReport(u, 0, [], INCONCLUSIVE, diag)
    net_idx, graph = net_components(cloud.points, neighbours_for_dimension(cloud.dimension))
    net = cloud.points[net_idx]
    diag.update({"net_points": int(len(net)), "epsilon": graph.epsilon, "component_counts": graph.counts,
                 "epsilon_stable": bool(graph.stable)})
    real = realize_roadmap(bundle, u, params)
    W = real.w_polylines
    Fp = real.f_polylines
    diag["w_polylines"] = len(W)
    diag["f_polylines"] = len(Fp)
    diag["fiber_levels"] = real.fiber_levels
    lines = [pl for pl in W + Fp if len(pl)]
    if lines:
        verts = np.vstack(lines)
        owner = np.concatenate([np.full(len(pl), k) for k, pl in enumerate(lines)])
        # edges along polylines plus short links where polylines meet
        rows, cols = [], []
        start = 0
        for pl in lines:
            idx = np.arange(start, start + len(pl))
            rows.extend(idx[:-1])
            cols.extend(idx[1:])
            start += len(pl)
        link = params.link_factor * params.step
        pairs = cKDTree(verts).query_pairs(link, output_type="ndarray")
        if len(pairs):
            cross = owner[pairs[:, 0]] != owner[pairs[:, 1]]
            rows.extend(pairs[cross, 0])
            cols.extend(pairs[cross, 1])
        m = len(verts)
        G = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(m, m))
        _, rlabels = connected_components(G, directed=False)
        dist, near = cKDTree(net).query(verts)
        vlabels = graph.labels[near]
        assigned = dist <= graph.epsilon
        diag["roadmap_vertices"] = int(m)
        diag["unassigned_roadmap_vertices"] = int((~assigned).sum())
    else:
        rlabels = vlabels = assigned = np.zeros(0, dtype=int)
    per = []
    for c in range(graph.n_components):
        mask = assigned & (vlabels == c) if len(vlabels) else np.zeros(0, dtype=bool)
        has = bool(mask.any())
        conn = has and len(set(rlabels[mask].tolist())) == 1
        per.append((has, conn))
    all_ok = all(a and b for a, b in per)
    if not graph.stable:
        verdict = INCONCLUSIVE
        diag["reason"] = "component count changes between epsilon and 2*epsilon"
    elif cloud.shortfall:
        verdict = INCONCLUSIVE
        diag["reason"] = "insufficient samples"
    else:
        verdict = PASS if all_ok else FAIL
    return ConnectivityReport(u, graph.n_components, per, verdict, diag)


# ---------------------------------------------------------------------------
# bounded components meet the critical locus


@dataclass
class BoundedComponentReport:
    u: object
    components: int
    bounded: list  # component ids not touching the sampling boundary
    witnessed: dict  # component id -> critical point (floats) or None
    verdict: str
    diagnostics: dict

    def to_dict(self):
        return {
            "u": str(self.u),
            "components": self.components,
            "bounded": list(self.bounded),
            "witnessed": {str(k): (None if v is None else list(v)) for k, v in self.witnessed.items()},
            "verdict": self.verdict,
            "diagnostics": self.diagnostics,
        }


def critical_points(Z: VarietySpec, phi: Poly, count: int = 200, seed: int = 0, radius=None):
    """Real points of K(phi, Z): exact boxes when finite, plane-section samples on a curve."""
    K = critical_ideal(Z, PolyMap((phi,)), 1).K_ideal
    dim = krull_dimension(K)
    if dim == -1:
        return np.zeros((0, Z.n)), "empty"
    if dim == 0:
        sol = solution_set(K)
        return np.array([b.as_floats() for b in sol.real_boxes]).reshape(-1, Z.n), "exact"
    if dim == 1:
        if radius is None:
            raise UnsupportedShapeError("sampling a critical curve needs a radius")
        R = Z.ring
        ball = sum((x * x for x in R.gens()), R.zero())
        cloud = sample_real_points(K, ball, QQ(radius) ** 2, count, seed)
        return cloud.points, "sampled"
    raise UnsupportedShapeError(f"critical locus of dimension {dim}")


def check_bounded_component_critical(Z: VarietySpec, phi: Poly, u, radius, count: int = 2000,
                                     seed: int = 0, strict: bool = True) -> BoundedComponentReport:
    """Every bounded component of Z cap {phi < u} (within the sampling box) contains a critical point of phi."""
    u = QQ(u)
    R = Z.ring
    n = Z.n
    ball = sum((x * x for x in R.gens()), R.zero())
    rad = float(radius)
    cloud = sample_real_points(Z.ideal(), ball, QQ(radius) ** 2, 4 * count, seed)
    phi_c = CompiledPoly(phi)
    keep = phi_c(cloud.points) < float(u) if len(cloud) else np.zeros(0, dtype=bool)
    pts = cloud.points[keep]
    diag = {"samples": int(len(pts)), "seed": seed}
    if len(pts) < 10:
        return BoundedComponentReport(u, 0, [], {}, INCONCLUSIVE, dict(diag, reason="too few samples"))
    net_idx, graph = net_components(pts, neighbours_for_dimension(cloud.dimension))
    pts = pts[net_idx]
    diag["net_points"] = int(len(pts))
    eps = graph.epsilon
    diag.update({"epsilon": eps, "component_counts": graph.counts, "epsilon_stable": bool(graph.stable)})
    norms = np.linalg.norm(pts, axis=1)
    bounded = [c for c in range(graph.n_components) if norms[graph.labels == c].max() < rad - 2 * eps]
    kp, how = critical_points(Z, phi, seed=seed, radius=radius)
    diag["critical_points"] = how
    witnessed = {}
    if len(kp):
        kvals = phi_c(kp)
        kp = kp[kvals < float(u) + (0 if strict else 1e-9)]
    tree = cKDTree(pts)
    for c in bounded:
        witnessed[c] = None
        if len(kp):
            d, idx = tree.query(kp)
            hit = np.where((d <= eps) & (graph.labels[idx] == c))[0]
            if len(hit):
                witnessed[c] = tuple(float(a) for a in kp[hit[0]])
    if not graph.stable:
        verdict = INCONCLUSIVE
        diag["reason"] = "component count changes between epsilon and 2*epsilon"
    elif not bounded:
        verdict = INCONCLUSIVE
        diag["reason"] = "no component stays inside the sampling ball"
    else:
        verdict = PASS if all(v is not None for v in witnessed.values()) else FAIL
    return BoundedComponentReport(u, graph.n_components, bounded, witnessed, verdict, diag)
