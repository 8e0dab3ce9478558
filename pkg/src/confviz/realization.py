"""Planar realizations: unit-distance layouts and point-circle configurations.

Distances are Euclidean, circles live as (center, radius) records, and all
randomness flows through numpy Generators seeded by the caller, so every
construction replays byte-identically from its recorded parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np

from . import iso
from .errors import (
    ConcyclicityError,
    ConvergenceError,
    DegeneracyError,
    DistinctnessError,
    ParameterError,
    SamplingError,
)
from .graphs import Graph, build_family, cartesian_product
from .incidence import IncidenceStructure

TOL_INCIDENCE = 1e-9
TOL_SEPARATION = 1e-6
TOL_CLUSTER = 1e-7

_RESAMPLE_BUDGET = 64


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy) and math.isfinite(self.r)):
            raise ParameterError("circle parameters must be finite")
        if self.r <= 0:
            raise ParameterError("circle radius must be positive")

    @property
    def center(self) -> np.ndarray:
        return np.array([self.cx, self.cy])

    def residual(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.hypot(pts[:, 0] - self.cx, pts[:, 1] - self.cy) - self.r


@dataclass(eq=False)
class Layout:
    """Vertex positions for a graph; meta records how they were produced."""

    graph: Graph
    pos: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.pos = np.asarray(self.pos, dtype=float)
        if self.pos.shape != (self.graph.order, 2):
            raise ParameterError("position table must be (order, 2)")
        if not np.all(np.isfinite(self.pos)):
            raise ParameterError("positions must be finite")


@dataclass(eq=False)
class PointCircleConfig:
    points: np.ndarray
    circles: tuple[Circle, ...]
    incidence: tuple[tuple[int, int], ...]
    flags: dict = field(default_factory=dict)
    tols: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != 2:
            raise ParameterError("points must be an (n, 2) table")
        if not np.all(np.isfinite(self.points)):
            raise ParameterError("points must be finite")
        self.circles = tuple(self.circles)
        norm = []
        for p, k in self.incidence:
            if not (0 <= p < len(self.points) and 0 <= k < len(self.circles)):
                raise ParameterError(f"incidence ({p},{k}) out of range")
            norm.append((int(p), int(k)))
        self.incidence = tuple(sorted(set(norm)))

    def max_incidence_residual(self) -> float:
        worst = 0.0
        for p, k in self.incidence:
            worst = max(worst, abs(float(self.circles[k].residual(self.points[p])[0])))
        return worst


# ---------------------------------------------------------------------------
# damped least squares


def lm_least_squares(
    fun,
    jac,
    x0,
    *,
    max_iter: int = 500,
    lam0: float = 1e-3,
    grad_tol: float = 1e-12,
    step_tol: float = 1e-14,
) -> np.ndarray:
    """Levenberg-Marquardt with the fixed x10 / /10 damping schedule.

    The damping term keeps rank-deficient Jacobians (translation and rotation
    gauge freedom) solvable, so the routine never crashes on those inputs.
    """
    x = np.asarray(x0, dtype=float).copy()
    r = fun(x)
    cost = float(r @ r)
    lam = lam0
    eye = np.eye(len(x))
    for _ in range(max_iter):
        j = jac(x)
        grad = j.T @ r
        if np.max(np.abs(grad)) < grad_tol:
            break
        a = j.T @ j
        try:
            step = np.linalg.solve(a + lam * eye, -grad)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        if np.linalg.norm(step) < step_tol:
            break
        r_new = fun(x + step)
        cost_new = float(r_new @ r_new)
        if cost_new < cost:
            x = x + step
            r, cost = r_new, cost_new
            lam = max(lam / 10.0, 1e-15)
        else:
            lam *= 10.0
            if lam > 1e18:
                break
    return x


# ---------------------------------------------------------------------------
# circles through points


def circumcircle(p, q, s) -> Circle:
    """Circle through three non-collinear points (exact linear solve)."""
    p, q, s = (np.asarray(v, dtype=float) for v in (p, q, s))
    scale = max(np.linalg.norm(q - p), np.linalg.norm(s - p), np.linalg.norm(s - q))
    cross = (q[0] - p[0]) * (s[1] - p[1]) - (q[1] - p[1]) * (s[0] - p[0])
    if scale == 0.0 or abs(cross) <= 1e-12 * scale * scale:
        raise DegeneracyError("circumcircle of (nearly) collinear points")
    a = 2.0 * np.array([[q[0] - p[0], q[1] - p[1]], [s[0] - p[0], s[1] - p[1]]])
    b = np.array([q @ q - p @ p, s @ s - p @ p])
    center = np.linalg.solve(a, b)
    return Circle(float(center[0]), float(center[1]), float(np.linalg.norm(p - center)))


def fit_circle(pts) -> tuple[Circle, float]:
    """Least-squares circle: algebraic seed, then geometric refinement.

    Returns the circle and the max absolute distance residual over pts.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ParameterError("circle fit needs at least three planar points")
    centered = pts - pts.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    if svals[1] <= 1e-12 * max(svals[0], 1.0):
        raise DegeneracyError("circle fit of (nearly) collinear points")
    # algebraic (Kasa) seed: minimize |x^2+y^2 + D x + E y + F|
    a = np.column_stack([pts[:, 0], pts[:, 1], np.ones(len(pts))])
    b = -(pts[:, 0] ** 2 + pts[:, 1] ** 2)
    (d, e, f), *_ = np.linalg.lstsq(a, b, rcond=None)
    cx, cy = -d / 2.0, -e / 2.0
    r2 = cx * cx + cy * cy - f
    if r2 <= 0:
        raise DegeneracyError("algebraic circle fit collapsed")
    x0 = np.array([cx, cy, math.sqrt(r2)])

    def resid(x):
        return np.hypot(pts[:, 0] - x[0], pts[:, 1] - x[1]) - x[2]

    def jacobian(x):
        dx = pts[:, 0] - x[0]
        dy = pts[:, 1] - x[1]
        dist = np.hypot(dx, dy)
        dist = np.where(dist < 1e-300, 1.0, dist)
        return np.column_stack([-dx / dist, -dy / dist, -np.ones(len(pts))])

    x = lm_least_squares(resid, jacobian, x0)
    circle = Circle(float(x[0]), float(x[1]), float(abs(x[2])))
    return circle, float(np.max(np.abs(circle.residual(pts))))


# ---------------------------------------------------------------------------
# parametric layouts


def unit_edge_residual(layout: Layout) -> float:
    worst = 0.0
    for u, v in layout.graph.edges:
        worst = max(worst, abs(float(np.linalg.norm(layout.pos[u] - layout.pos[v])) - 1.0))
    return worst


def _min_separation(pos: np.ndarray) -> float:
    if len(pos) < 2:
        return math.inf
    diffs = pos[:, None, :] - pos[None, :, :]
    dist = np.hypot(diffs[..., 0], diffs[..., 1])
    return float(np.min(dist[np.triu_indices(len(pos), k=1)]))


def layout_polygon(n: int) -> Layout:
    """Regular n-gon with unit sides."""
    if n < 3:
        raise ParameterError("polygon layout needs n >= 3")
    g = build_family("cycle", n)
    radius = 0.5 / math.sin(math.pi / n)
    ang = 2.0 * math.pi * np.arange(n) / n
    pos = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    return Layout(g, pos, {"generator": "polygon", "n": n})


def layout_hypercube(d: int, angles=None, seed: int | None = None) -> Layout:
    """Unit-vector sum drawing of the d-cube.

    Vertex S (a bitmask) sits at sum of the unit vectors of the angles whose
    bit is set; every edge then has length exactly 1. Explicit angles that
    collapse two vertices raise; seeded draws resample up to the budget.
    """
    if d < 1:
        raise ParameterError("hypercube layout needs d >= 1")
    g = build_family("hypercube", d)
    if angles is not None:
        table = np.asarray(angles, dtype=float)
        if table.shape != (d,):
            raise ParameterError("need one angle per coordinate direction")
        pos = _hypercube_positions(d, table)
        if _min_separation(pos) <= TOL_SEPARATION:
            raise DegeneracyError("angle choice collapses two vertices")
        return Layout(g, pos, {"generator": "hypercube", "d": d, "angles": table.tolist()})
    rng = np.random.default_rng(0 if seed is None else seed)
    for attempt in range(_RESAMPLE_BUDGET):
        table = rng.uniform(0.0, 2.0 * math.pi, size=d)
        pos = _hypercube_positions(d, table)
        if _min_separation(pos) > TOL_SEPARATION:
            return Layout(
                g,
                pos,
                {
                    "generator": "hypercube",
                    "d": d,
                    "angles": table.tolist(),
                    "seed": 0 if seed is None else seed,
                    "attempt": attempt,
                },
            )
    raise SamplingError("no generic angle set found within budget", seed=seed)


def _hypercube_positions(d: int, angles: np.ndarray) -> np.ndarray:
    units = np.column_stack([np.cos(angles), np.sin(angles)])
    pos = np.zeros((1 << d, 2))
    for v in range(1 << d):
        for b in range(d):
            if v >> b & 1:
                pos[v] += units[b]
    return pos


def layout_product(la: Layout, lb: Layout, angle: float | None = None, seed: int | None = None) -> Layout:
    """Cartesian-product layout: copy of lb rotated by angle at every la vertex.

    Unit distances in both factors survive, since each product edge is a
    translate of a factor edge. Vertex (a, x) lands at index a * |H| + x.
    """
    g = cartesian_product(la.graph, lb.graph)

    def build(theta: float) -> np.ndarray:
        c, s = math.cos(theta), math.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        rotated = lb.pos @ rot.T
        return (la.pos[:, None, :] + rotated[None, :, :]).reshape(-1, 2)

    if angle is not None:
        pos = build(float(angle))
        if _min_separation(pos) <= TOL_SEPARATION:
            raise DegeneracyError("product angle collapses two vertices")
        return Layout(g, pos, {"generator": "product", "angle": float(angle)})
    rng = np.random.default_rng(0 if seed is None else seed)
    for attempt in range(_RESAMPLE_BUDGET):
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        pos = build(theta)
        if _min_separation(pos) > TOL_SEPARATION:
            return Layout(
                g,
                pos,
                {
                    "generator": "product",
                    "angle": theta,
                    "seed": 0 if seed is None else seed,
                    "attempt": attempt,
                },
            )
    raise SamplingError("no generic product angle found within budget", seed=seed)


def layout_gen_cuboctahedron(n: int, r_outer: float = 2.0, r_inner: float = 1.0) -> Layout:
    """Midpoint (medial) drawing of the n-prism: CO(n) on three rings.

    Vertices are prism edge midpoints: outer-edge midpoints at radius
    r_outer*cos(pi/n), spoke midpoints at (r_outer+r_inner)/2, inner-edge
    midpoints at r_inner*cos(pi/n). Every CO(n) neighbourhood is mirror
    symmetric about a ray, hence concyclic for any valid radius pair.
    """
    if n < 3:
        raise ParameterError("gen_cuboctahedron layout needs n >= 3")
    if not (r_outer > r_inner > 0.0):
        raise ParameterError("need r_outer > r_inner > 0")
    rings = [r_outer * math.cos(math.pi / n), (r_outer + r_inner) / 2.0, r_inner * math.cos(math.pi / n)]
    for a, b in combinations(rings, 2):
        if abs(a - b) <= TOL_SEPARATION:
            raise ParameterError("ring radii collide; circles would coincide")
    from .graphs import prism_graph  # local: only this layout needs the base graph

    base = prism_graph(n)
    g = build_family("gen_cuboctahedron", n)
    ang = 2.0 * math.pi * np.arange(n) / n
    outer = r_outer * np.column_stack([np.cos(ang), np.sin(ang)])
    inner = r_inner * np.column_stack([np.cos(ang), np.sin(ang)])
    vpos = np.vstack([outer, inner])
    pos = np.array([(vpos[u] + vpos[v]) / 2.0 for u, v in base.edges])
    return Layout(
        g,
        pos,
        {"generator": "gen_cuboctahedron", "n": n, "r_outer": r_outer, "r_inner": r_inner},
    )


# ---------------------------------------------------------------------------
# unit-distance solving


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    e = np.array(g.edges, dtype=int)
    return e[:, 0], e[:, 1]


def _solve_coordinates(g: Graph, pos0: np.ndarray, max_iter: int) -> np.ndarray:
    eu, ev = _edge_arrays(g)

    def resid(x):
        p = x.reshape(-1, 2)
        d = p[eu] - p[ev]
        return np.hypot(d[:, 0], d[:, 1]) - 1.0

    def jacobian(x):
        p = x.reshape(-1, 2)
        d = p[eu] - p[ev]
        dist = np.hypot(d[:, 0], d[:, 1])
        dist = np.where(dist < 1e-300, 1.0, dist)
        j = np.zeros((len(eu), x.size))
        rows = np.arange(len(eu))
        j[rows, 2 * eu] = d[:, 0] / dist
        j[rows, 2 * eu + 1] = d[:, 1] / dist
        j[rows, 2 * ev] = -d[:, 0] / dist
        j[rows, 2 * ev + 1] = -d[:, 1] / dist
        return j

    x = lm_least_squares(resid, jacobian, pos0.ravel(), max_iter=max_iter)
    return x.reshape(-1, 2)


def _orbit_positions(x: np.ndarray, orbits: list[list[int]], k: int, n: int) -> np.ndarray:
    pos = np.zeros((n, 2))
    for j, orbit in enumerate(orbits):
        r, phi = x[2 * j], x[2 * j + 1]
        for t, v in enumerate(orbit):
            a = phi + 2.0 * math.pi * t / k
            pos[v] = (r * math.cos(a), r * math.sin(a))
    return pos


def _solve_orbits(g: Graph, orbits: list[list[int]], k: int, x0: np.ndarray, max_iter: int) -> np.ndarray:
    eu, ev = _edge_arrays(g)
    slot = {}
    for j, orbit in enumerate(orbits):
        for t, v in enumerate(orbit):
            slot[v] = (j, t)

    def positions(x):
        return _orbit_positions(x, orbits, k, g.order)

    def resid(x):
        p = positions(x)
        d = p[eu] - p[ev]
        return np.hypot(d[:, 0], d[:, 1]) - 1.0

    def jacobian(x):
        p = positions(x)
        j = np.zeros((len(eu), x.size))
        for row, (u, v) in enumerate(zip(eu, ev)):
            d = p[u] - p[v]
            dist = math.hypot(d[0], d[1])
            if dist < 1e-300:
                dist = 1.0
            gu = d / dist
            for vertex, sign in ((u, 1.0), (v, -1.0)):
                jj, t = slot[vertex]
                r, phi = x[2 * jj], x[2 * jj + 1]
                a = phi + 2.0 * math.pi * t / k
                j[row, 2 * jj] += sign * (gu[0] * math.cos(a) + gu[1] * math.sin(a))
                j[row, 2 * jj + 1] += sign * r * (-gu[0] * math.sin(a) + gu[1] * math.cos(a))
        return j

    return lm_least_squares(resid, jacobian, x0, max_iter=max_iter)


def solve_unit_distance(
    g: Graph,
    init: Layout | None = None,
    *,
    seed: int | None = None,
    symmetry: int | list[list[int]] | None = None,
    tol: float = TOL_INCIDENCE,
    max_iter: int = 500,
    restarts: int = 40,
) -> tuple[Layout, float]:
    """Minimize edge-length deviation from 1; returns (layout, max deviation).

    With `init` the solve polishes the given positions. An integer `symmetry`
    k asks for a rotational ansatz: a free order-k automorphism is searched,
    its orbits become (radius, phase) ring variables, and seeded restarts run
    until the residual clears tol. Explicit orbit lists are also accepted.
    Raises ConvergenceError (carrying the best residual) when nothing clears
    tol within the restart budget.
    """
    from .graphs import structure_report

    if g.size == 0:
        raise ParameterError("unit-distance solve needs at least one edge")
    if not structure_report(g).connected:
        raise ParameterError("unit-distance solve expects a connected graph")
    base_seed = 0 if seed is None else int(seed)

    if init is not None:
        if init.graph.edges != g.edges or init.graph.order != g.order:
            raise ParameterError("init layout belongs to a different graph")
        pos = _solve_coordinates(g, init.pos, max_iter)
        layout = Layout(g, pos, {"method": "polish", "seed": base_seed})
        residual = unit_edge_residual(layout)
        if residual > tol:
            raise ConvergenceError("polish stalled above tolerance", residual=residual)
        layout.meta["residual"] = residual
        return layout, residual

    rng = np.random.default_rng(base_seed)
    best = math.inf

    if symmetry is not None:
        if isinstance(symmetry, int):
            actions = iso.find_free_cyclic_action(g, symmetry, limit=6)
            if not actions:
                raise ParameterError(f"no free order-{symmetry} symmetry available")
            orbit_sets = [iso.orbits_of(a) for a in actions]
            k = symmetry
        else:
            orbit_sets = [[list(o) for o in symmetry]]
            lengths = {len(o) for o in orbit_sets[0]}
            if len(lengths) != 1:
                raise ParameterError("explicit orbits must share one length")
            k = lengths.pop()
            covered = sorted(v for o in orbit_sets[0] for v in o)
            if covered != list(range(g.order)):
                raise ParameterError("orbits must partition the vertex set")
        for orbits in orbit_sets:
            m = len(orbits)
            for _ in range(restarts):
                x0 = np.empty(2 * m)
                x0[0::2] = rng.uniform(0.25, 2.2, size=m)
                x0[1::2] = rng.uniform(0.0, 2.0 * math.pi, size=m)
                x = _solve_orbits(g, orbits, k, x0, max_iter)
                pos = _orbit_positions(x, orbits, k, g.order)
                pos = _solve_coordinates(g, pos, max_iter)  # polish off the ansatz
                layout = Layout(g, pos, {})
                residual = unit_edge_residual(layout)
                best = min(best, residual)
                if residual <= tol and _min_separation(pos) > TOL_SEPARATION:
                    layout.meta.update(
                        {
                            "method": "orbit-lm",
                            "symmetry": k,
                            "seed": base_seed,
                            "residual": residual,
                        }
                    )
                    return layout, residual
        raise ConvergenceError("symmetric solve exhausted restarts", residual=best)

    span = 1.0 + 0.25 * math.sqrt(g.order)
    for _ in range(restarts):
        pos0 = rng.uniform(-span, span, size=(g.order, 2))
        pos = _solve_coordinates(g, pos0, max_iter)
        layout = Layout(g, pos, {})
        residual = unit_edge_residual(layout)
        best = min(best, residual)
        if residual <= tol and _min_separation(pos) > TOL_SEPARATION:
            layout.meta.update({"method": "lm", "seed": base_seed, "residual": residual})
            return layout, residual
    raise ConvergenceError("unit-distance solve exhausted restarts", residual=best)


# ---------------------------------------------------------------------------
# geometric V-construction


def circles_from_layout(
    layout: Layout, tol: float = TOL_INCIDENCE, allow_degree_two: bool = False
) -> PointCircleConfig:
    """One circle per vertex through its neighbours (geometric V-construction).

    Neighbourhoods must be concyclic within tol; the offending vertex is
    named otherwise. Coinciding circles are refused.
    """
    g = layout.graph
    circles: list[Circle] = []
    for v in range(g.order):
        nbrs = g.adjacency[v]
        if len(nbrs) >= 3:
            circle, res = fit_circle(layout.pos[list(nbrs)])
            if res > tol:
                raise ConcyclicityError(
                    f"neighbourhood of vertex {v} not concyclic (residual {res:.3e})",
                    vertex=v,
                    residual=res,
                )
            circles.append(circle)
        elif len(nbrs) == 2 and allow_degree_two:
            d = [float(np.linalg.norm(layout.pos[w] - layout.pos[v])) for w in nbrs]
            if abs(d[0] - d[1]) > tol:
                raise ConcyclicityError(
                    f"vertex {v} neighbours not equidistant; no canonical circle",
                    vertex=v,
                    residual=abs(d[0] - d[1]),
                )
            circles.append(Circle(float(layout.pos[v][0]), float(layout.pos[v][1]), sum(d) / 2.0))
        else:
            raise ParameterError(
                f"vertex {v} has degree {len(nbrs)}; need >= 3 (or 2 with allow_degree_two)"
            )
    for i, j in combinations(range(len(circles)), 2):
        ci, cj = circles[i], circles[j]
        if (
            math.hypot(ci.cx - cj.cx, ci.cy - cj.cy) <= TOL_SEPARATION
            and abs(ci.r - cj.r) <= TOL_SEPARATION
        ):
            raise DistinctnessError(f"circles of vertices {i} and {j} coincide")
    incidence = tuple((p, v) for v in range(g.order) for p in g.adjacency[v])
    return PointCircleConfig(
        points=layout.pos.copy(),
        circles=tuple(circles),
        incidence=incidence,
        flags={},
        tols={"incidence": tol, "separation": TOL_SEPARATION, "cluster": TOL_CLUSTER},
    )


def incidence_of(cfg: PointCircleConfig) -> IncidenceStructure:
    """Combinatorial structure read off a configuration's incidence list."""
    blocks: dict[int, list[int]] = {k: [] for k in range(len(cfg.circles))}
    for p, k in cfg.incidence:
        blocks[k].append(p)
    return IncidenceStructure(
        points=len(cfg.points),
        blocks=tuple(tuple(sorted(b)) for b in blocks.values()),
        provenance="read off point-circle configuration",
    )


def sorted_center_distances(cfg: PointCircleConfig) -> np.ndarray:
    """Sorted multiset of circle-center distances; a similarity fingerprint."""
    centers = np.array([[c.cx, c.cy] for c in cfg.circles])
    out = [
        float(np.linalg.norm(centers[i] - centers[j]))
        for i, j in combinations(range(len(centers)), 2)
    ]
    return np.array(sorted(out))


# ---------------------------------------------------------------------------
# (n_3) realization by sampling


def realize_n3(c: IncidenceStructure, seed: int = 0) -> PointCircleConfig:
    """Realize a structure with 3-point blocks via generic points + circumcircles.

    Points are drawn uniformly; a draw is rejected if any two points nearly
    coincide, any three are nearly collinear, or any four nearly concyclic,
    so each block's circumcircle meets exactly its own points.
    """
    if any(len(b) != 3 for b in c.blocks):
        raise ParameterError("realize_n3 needs every block to have exactly 3 points")
    if c.points < 3:
        raise ParameterError("realize_n3 needs at least 3 points")
    rng = np.random.default_rng(seed)
    for _ in range(_RESAMPLE_BUDGET):
        pts = rng.uniform(0.0, 1.0, size=(c.points, 2))
        if not _generic_position(pts):
            continue
        circles = tuple(circumcircle(pts[b[0]], pts[b[1]], pts[b[2]]) for b in c.blocks)
        incidence = tuple((p, k) for k, blk in enumerate(c.blocks) for p in blk)
        return PointCircleConfig(
            points=pts,
            circles=circles,
            incidence=incidence,
            flags={},
            tols={"incidence": TOL_INCIDENCE, "separation": TOL_SEPARATION, "cluster": TOL_CLUSTER},
        )
    raise SamplingError("no generic point set found within budget", seed=seed)


def _generic_position(pts: np.ndarray, margin: float = 1e-4) -> bool:
    n = len(pts)
    for i, j in combinations(range(n), 2):
        if np.linalg.norm(pts[i] - pts[j]) <= margin:
            return False
    for i, j, k in combinations(range(n), 3):
        area2 = abs(
            (pts[j][0] - pts[i][0]) * (pts[k][1] - pts[i][1])
            - (pts[j][1] - pts[i][1]) * (pts[k][0] - pts[i][0])
        )
        if area2 <= margin:
            return False
    # four concyclic iff the lifted 4x4 determinant vanishes
    for quad in combinations(range(n), 4):
        m = np.array(
            [
                [pts[q][0] ** 2 + pts[q][1] ** 2, pts[q][0], pts[q][1], 1.0]
                for q in quad
            ]
        )
        if abs(np.linalg.det(m)) <= margin:
            return False
    return True


# ---------------------------------------------------------------------------
# flags


def circle_pair_intersections(a: Circle, b: Circle, cluster_tol: float = TOL_CLUSTER) -> list[np.ndarray]:
    """0, 1 (tangent within tolerance), or 2 intersection points."""
    dx, dy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(dx, dy)
    if d <= 1e-15:
        return []
    alpha = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d)
    h2 = a.r * a.r - alpha * alpha
    eps = cluster_tol * cluster_tol
    if h2 < -eps:
        return []
    ux, uy = dx / d, dy / d
    base = np.array([a.cx + alpha * ux, a.cy + alpha * uy])
    if h2 <= eps:
        return [base]
    h = math.sqrt(h2)
    off = np.array([-uy * h, ux * h])
    return [base + off, base - off]


def _cluster(points: list[np.ndarray], tol: float) -> list[np.ndarray]:
    """Greedy union of points within tol; returns cluster centroids."""
    reps: list[list] = []  # [sum_x, sum_y, count]
    order = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1]))
    for idx in order:
        p = points[idx]
        merged = False
        for rep in reps:
            cx, cy = rep[0] / rep[2], rep[1] / rep[2]
            if math.hypot(p[0] - cx, p[1] - cy) <= tol:
                rep[0] += p[0]
                rep[1] += p[1]
                rep[2] += 1
                merged = True
                break
        if not merged:
            reps.append([p[0], p[1], 1])
    return [np.array([r[0] / r[2], r[1] / r[2]]) for r in reps]


def check_flags(cfg: PointCircleConfig, tols: dict | None = None) -> PointCircleConfig:
    """Evaluate proper / isometric / lineal / determining / perfect.

    determining follows the meet-point definition: cluster all pairwise
    circle intersections, keep the clusters where more than two circles
    pass, and demand that set to coincide with the configuration points.
    """
    if len(cfg.circles) == 0 or len(cfg.points) == 0:
        raise ParameterError("flag check needs a non-empty configuration")
    t = dict(cfg.tols)
    if tols:
        t.update(tols)
    tol_inc = float(t.get("incidence", TOL_INCIDENCE))
    tol_sep = float(t.get("separation", TOL_SEPARATION))
    tol_clu = float(t.get("cluster", TOL_CLUSTER))
    tol_rad = float(t.get("radius_spread", tol_inc))

    degenerate = _min_separation(cfg.points) <= tol_sep

    radii = [c.r for c in cfg.circles]
    isometric = (max(radii) - min(radii)) <= tol_rad

    # proper: some point on every circle exists iff it lies on the first two
    if len(cfg.circles) == 1:
        proper = False
    else:
        proper = True
        for cand in circle_pair_intersections(cfg.circles[0], cfg.circles[1], tol_clu):
            if all(abs(float(c.residual(cand)[0])) <= max(tol_inc, tol_clu) for c in cfg.circles):
                proper = False
                break

    # geometric incidence of config points on circles
    on_circle = np.abs(np.array([c.residual(cfg.points) for c in cfg.circles])) <= tol_inc

    lineal = True
    for i, j in combinations(range(len(cfg.circles)), 2):
        if int(np.sum(on_circle[i] & on_circle[j])) > 1:
            lineal = False
            break

    meets = []
    for i, j in combinations(range(len(cfg.circles)), 2):
        meets.extend(circle_pair_intersections(cfg.circles[i], cfg.circles[j], tol_clu))
    determining = False
    if not degenerate:
        triple_points = []
        for rep in _cluster(meets, tol_clu):
            through = sum(
                1 for c in cfg.circles if abs(float(c.residual(rep)[0])) <= max(tol_inc, tol_clu)
            )
            if through > 2:
                triple_points.append(rep)
        matched_cfg = [False] * len(cfg.points)
        determining = True
        for rep in triple_points:
            dist = np.hypot(cfg.points[:, 0] - rep[0], cfg.points[:, 1] - rep[1])
            hit = int(np.argmin(dist)) if len(dist) else -1
            if hit < 0 or dist[hit] > max(tol_clu, tol_sep):
                determining = False
                break
            matched_cfg[hit] = True
        if determining and not all(matched_cfg):
            determining = False

    flags = {
        "proper": proper,
        "isometric": isometric,
        "lineal": lineal,
        "determining": determining,
        "perfect": bool(lineal and isometric and determining and not degenerate),
        "degenerate": degenerate,
    }
    return PointCircleConfig(
        points=cfg.points.copy(),
        circles=cfg.circles,
        incidence=cfg.incidence,
        flags=flags,
        tols=t,
    )


# ---------------------------------------------------------------------------
# inversion


def invert_pointline(points, lines, center, radius: float = 1.0) -> PointCircleConfig:
    """Circle inversion of a point-line configuration.

    Every line misses the center, so its image is a circle through the
    center; the output is therefore never proper, which is the point of the
    construction. Incidences carry over verbatim.
    """
    pts = np.asarray(points, dtype=float)
    ctr = np.asarray(center, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ParameterError("points must be an (n, 2) table")
    if ctr.shape != (2,):
        raise ParameterError("center must be a planar point")
    if radius <= 0:
        raise ParameterError("inversion radius must be positive")
    scale = max(1.0, float(np.max(np.abs(pts))))
    lines_norm: list[tuple[int, ...]] = []
    for line in lines:
        idx = tuple(int(p) for p in line)
        if len(idx) < 2 or len(set(idx)) != len(idx):
            raise ParameterError(f"line {idx} needs at least two distinct points")
        if any(p < 0 or p >= len(pts) for p in idx):
            raise ParameterError(f"line {idx} outside point range")
        a, b = pts[idx[0]], pts[idx[1]]
        direction = b - a
        norm = np.linalg.norm(direction)
        if norm <= TOL_SEPARATION:
            raise DegeneracyError(f"line {idx} anchors coincide")
        for p in idx[2:]:
            off = pts[p] - a
            area2 = abs(direction[0] * off[1] - direction[1] * off[0])
            if area2 > 1e-9 * scale * scale:
                raise DegeneracyError(f"points of line {idx} are not collinear")
        # distance from the inversion center to the carrier line
        off = ctr - a
        dist_line = abs(direction[0] * off[1] - direction[1] * off[0]) / norm
        if dist_line <= TOL_SEPARATION:
            raise ParameterError("inversion center lies on a configuration line")
        lines_norm.append(idx)
    for i, p in enumerate(pts):
        if np.linalg.norm(p - ctr) <= TOL_SEPARATION:
            raise ParameterError(f"inversion center coincides with point {i}")

    def invert(p: np.ndarray) -> np.ndarray:
        d = p - ctr
        return ctr + (radius * radius / float(d @ d)) * d

    images = np.array([invert(p) for p in pts])
    circles = []
    for idx in lines_norm:
        circles.append(circumcircle(images[idx[0]], images[idx[1]], ctr))
    incidence = tuple((p, k) for k, idx in enumerate(lines_norm) for p in idx)
    cfg = PointCircleConfig(
        points=images,
        circles=tuple(circles),
        incidence=incidence,
        flags={},
        tols={"incidence": TOL_INCIDENCE, "separation": TOL_SEPARATION, "cluster": TOL_CLUSTER},
    )
    worst = cfg.max_incidence_residual()
    if worst > 1e-9 * scale:
        raise DegeneracyError(f"inverted incidences drift ({worst:.3e}); input too degenerate")
    return cfg
