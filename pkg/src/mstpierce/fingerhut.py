"""Fingerhut-type ratios: how far a single point is from lying on every edge.

For a point ``c`` and an edge ``(a, b)`` the ratio ``(|ca| + |cb|) / |ab|``
is the smallest ``alpha`` whose confocal ellipse around ``(a, b)`` holds
``c``. ``rho(c)`` is the worst ratio over a family of edges; it is convex in
``c``, and its minimum ``rho*`` is the best constant any single point achieves.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .enclosing import DEFAULT_SEED, smallest_enclosing_circle
from .errors import DegenerateEdge, NonConvergence, OddCount, TooLarge
from .geom import DEFAULT_TOL, Edge, Point, Tolerance, dist, midpoint
from .spanning import Instance, max_spanning_tree

SQRT2 = math.sqrt(2.0)
CONJECTURED_ALPHA = 2 / math.sqrt(3.0)
TREE_LOWER_BOUND = (1 + math.sqrt(3.0)) / 2
MAX_MATCHING_POINTS = 12


class EllipseSpec(NamedTuple):
    focus_a: Point
    focus_b: Point
    alpha: float


def edge_ratio(c, a, b) -> float:
    w = dist(a, b)
    if w == 0:
        raise DegenerateEdge("ratio of a zero-length edge")
    return (dist(c, a) + dist(c, b)) / w


def in_ellipse(e: EllipseSpec, x, tol: Tolerance = DEFAULT_TOL) -> bool:
    w = dist(e.focus_a, e.focus_b)
    return dist(e.focus_a, x) + dist(x, e.focus_b) <= e.alpha * w + tol.eps_rel * w + tol.eps_abs


def _segments(points, edges) -> list:
    out = []
    for e in edges:
        a, b = points[e[0]], points[e[1]]
        w = dist(a, b)
        if w == 0:
            raise DegenerateEdge(f"edge {e} has zero length")
        out.append((a[0], a[1], b[0], b[1], w))
    return out


def _rho(segs, x, y) -> float:
    best = 0.0
    for ax, ay, bx, by, w in segs:
        r = (math.hypot(x - ax, y - ay) + math.hypot(x - bx, y - by)) / w
        if r > best:
            best = r
    return best


def _rho_grad(segs, x, y):
    """Value of rho and a subgradient taken from one active edge."""
    best, arg = -1.0, None
    for s in segs:
        ax, ay, bx, by, w = s
        r = (math.hypot(x - ax, y - ay) + math.hypot(x - bx, y - by)) / w
        if r > best:
            best, arg = r, s
    ax, ay, bx, by, w = arg
    gx = gy = 0.0
    for fx, fy in ((ax, ay), (bx, by)):
        d = math.hypot(x - fx, y - fy)
        if d > 0:
            gx += (x - fx) / d
            gy += (y - fy) / d
    return best, gx / w, gy / w


def max_ratio(c, edges, points) -> float:
    """``rho(c)``: the worst edge ratio at ``c`` over ``edges`` (index pairs into ``points``)."""
    return _rho(_segments(points, edges), c[0], c[1])


@dataclass
class PiercingOptimum:
    point: Point
    ratio: float
    iterations: int
    step: float
    gap: float
    certified: bool

    def __iter__(self):
        return iter((self.point, self.ratio))


def _grid_probe(segs, x, y, value, tol, half_width=3):
    """Smallest value on a square grid of spacing ``tol`` around ``(x, y)``."""
    best = (value, x, y)
    for i in range(-half_width, half_width + 1):
        for j in range(-half_width, half_width + 1):
            v = _rho(segs, x + i * tol, y + j * tol)
            if v < best[0]:
                best = (v, x + i * tol, y + j * tol)
    return best


def _ellipsoid(segs, starts, tol, budget):
    """Ellipsoid method for the convex minimax ``rho``.

    Returns ``(value, x, y, iterations, step, gap)`` where ``gap`` bounds the
    distance of ``value`` above the true minimum.
    """
    val, bx, by = min((_rho(segs, sx, sy), sx, sy) for sx, sy in starts)
    # every point at least as good as the incumbent lies inside the ellipse of
    # the shortest edge at that level, so this disk holds the minimizer
    ax, ay, qx, qy, w = min(segs, key=lambda s: s[4])
    x, y = (ax + qx) / 2, (ay + qy) / 2
    R = val * w / 2 * (1 + 1e-9)
    a11, a12, a22 = R * R, 0.0, R * R
    lower = -math.inf
    it = 0
    while it < budget:
        it += 1
        f, gx, gy = _rho_grad(segs, x, y)
        if f < val:
            val, bx, by = f, x, y
        agx, agy = a11 * gx + a12 * gy, a12 * gx + a22 * gy
        gag = gx * agx + gy * agy
        if gag <= 0:
            # zero subgradient: x is a global minimizer
            lower = f
            break
        s = math.sqrt(gag)
        lower = max(lower, f - s)
        if val - lower <= tol:
            break
        ux, uy = agx / s, agy / s
        x -= ux / 3
        y -= uy / 3
        k = 4.0 / 3.0
        a11 = k * (a11 - 2.0 / 3.0 * ux * ux)
        a12 = k * (a12 - 2.0 / 3.0 * ux * uy)
        a22 = k * (a22 - 2.0 / 3.0 * uy * uy)
    step = math.sqrt(max(a11, a22, 0.0))
    return val, bx, by, it, step, max(val - lower, 0.0)


def minimize_ratio(segs, starts, tol: float = 1e-6, budget: int = 2000) -> PiercingOptimum:
    val, x, y, it, step, gap = _ellipsoid(segs, starts, tol, budget)
    certified = gap <= tol
    probe = _grid_probe(segs, x, y, val, tol)
    if probe[0] < val - tol:
        certified = False
    if probe[0] < val:
        val, x, y = probe
    return PiercingOptimum(Point(x, y), val, it, step, gap, certified)


def _starts(points, edges, extra=()):
    pts = [points[k] for e in edges for k in e[:2]]
    cx = math.fsum(p[0] for p in pts) / len(pts)
    cy = math.fsum(p[1] for p in pts) / len(pts)
    out = [tuple(s) for s in extra]
    out += [tuple(midpoint(points[e[0]], points[e[1]])) for e in edges]
    out.append((cx, cy))
    return out


def optimal_piercing_ratio(
    points,
    edges,
    tol: float = 1e-6,
    budget: int = 2000,
    seed: int = DEFAULT_SEED,
    center=None,
    strict: bool = True,
) -> PiercingOptimum:
    """Minimize ``rho`` over the plane for the given edges.

    Starts from ``center`` (normally the enclosing-circle center), every
    edge midpoint and the centroid of the endpoints, then runs the ellipsoid
    method until its optimality gap drops below ``tol`` and a local grid of
    spacing ``tol`` finds nothing better by more than ``tol``.

    Raises NonConvergence (carrying the best point) when the iteration
    budget runs out first, unless ``strict`` is false.
    """
    if not edges:
        raise ValueError("need at least one edge")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if center is None:
        center = smallest_enclosing_circle(Instance(points), seed=seed)[0].center
    segs = _segments(points, edges)
    result = minimize_ratio(segs, _starts(points, edges, [center]), tol, budget)
    if strict and not result.certified:
        raise NonConvergence(f"optimality gap {result.gap:.3g} above {tol:g} after {result.iterations} steps", result)
    return result


def center_ratio_check(inst: Instance, seed: int = DEFAULT_SEED) -> float:
    """``rho`` at the enclosing-circle center over the maximum tree's edges."""
    tree = max_spanning_tree(inst)
    if not tree.edges:
        return 1.0
    c = smallest_enclosing_circle(inst, seed=seed)[0].center
    return max_ratio(c, tree.edges, inst.points)


@dataclass
class RatioReport:
    edges: list
    ratio_at_center: float
    center: Point
    center_ratios: list
    optimal_point: Optional[Point] = None
    optimal_ratio: Optional[float] = None
    optimal_ratios: list = field(default_factory=list)
    iterations: int = 0
    step: float = 0.0
    certified: bool = True

    def to_dict(self) -> dict:
        return {
            "edges": [[e.i, e.j, e.weight] for e in self.edges],
            "center": list(self.center),
            "ratio_at_center": self.ratio_at_center,
            "center_ratios": self.center_ratios,
            "optimal_point": None if self.optimal_point is None else list(self.optimal_point),
            "optimal_ratio": self.optimal_ratio,
            "optimal_ratios": self.optimal_ratios,
            "iterations": self.iterations,
            "step": self.step,
            "certified": self.certified,
        }


def ratio_report(
    inst: Instance,
    edges: Optional[Sequence[Edge]] = None,
    optimal: bool = True,
    tol: float = 1e-6,
    seed: int = DEFAULT_SEED,
) -> RatioReport:
    """Ratios at the enclosing-circle center and, optionally, at the best point.

    ``edges`` defaults to the maximum spanning tree.
    """
    if edges is None:
        edges = max_spanning_tree(inst).edges
    edges = list(edges)
    pts = inst.points
    c = smallest_enclosing_circle(inst, seed=seed)[0].center
    at_c = [edge_ratio(c, pts[e.i], pts[e.j]) for e in edges]
    report = RatioReport(edges, max(at_c, default=1.0), c, at_c)
    if optimal and edges:
        opt = optimal_piercing_ratio(pts, [(e.i, e.j) for e in edges], tol=tol, center=c, strict=False)
        report.optimal_point = opt.point
        report.optimal_ratio = opt.ratio
        report.optimal_ratios = [edge_ratio(opt.point, pts[e.i], pts[e.j]) for e in edges]
        report.iterations = opt.iterations
        report.step = opt.step
        report.certified = opt.certified
    return report


@dataclass(frozen=True)
class Matching:
    pairs: tuple
    total_weight: float

    @property
    def edges(self):
        return self.pairs


def _perfect_matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:k] + rest[k + 1 :]):
            yield ((first, other),) + tail


def max_weight_matching_bruteforce(inst: Instance) -> Matching:
    """Heaviest perfect matching by trying all (n-1)!! of them.

    Matchings are generated in lexicographic order of their pair lists and
    only a strictly heavier one replaces the incumbent, so ties resolve to
    the lexicographically smallest.
    """
    n = len(inst)
    if n % 2:
        raise OddCount(f"perfect matching needs an even number of points, got {n}")
    if n > MAX_MATCHING_POINTS:
        raise TooLarge(f"brute force limited to {MAX_MATCHING_POINTS} points, got {n}")
    W = inst.distances
    best, best_w = None, -1.0
    for m in _perfect_matchings(tuple(range(n))):
        w = math.fsum(W[i, j] for i, j in m)
        if w > best_w:
            best, best_w = m, w
    edges = tuple(Edge(i, j, float(W[i, j])) for i, j in best)
    return Matching(edges, best_w)


def max_weight_matching_dp(inst: Instance) -> float:
    """Best perfect-matching weight by memoized recursion over subsets."""
    n = len(inst)
    if n % 2:
        raise OddCount(f"perfect matching needs an even number of points, got {n}")
    W = inst.distances.tolist()

    @lru_cache(maxsize=None)
    def best(mask):
        if mask == 0:
            return 0.0
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        out = -math.inf
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            out = max(out, W[i][j] + best(rest & ~(1 << j)))
        return out

    return best((1 << n) - 1)


# ---------------------------------------------------------------------------
# lower-bound search over four-point configurations


def normalize_to_unit_circle(points) -> list:
    """Translate and scale so the enclosing circle is the unit circle at the origin."""
    (c, r), _ = smallest_enclosing_circle(Instance(points))
    return [((p[0] - c[0]) / r, (p[1] - c[1]) / r) for p in points]


def tree_optimum(points, tol: float = 1e-9, budget: int = 4000) -> PiercingOptimum:
    """``rho*`` over the edges of the maximum spanning tree of ``points``."""
    inst = Instance(points)
    edges = [(e.i, e.j) for e in max_spanning_tree(inst).edges]
    return optimal_piercing_ratio(inst.points, edges, tol=tol, budget=budget, strict=False)


def _tree_objective(points, tol):
    try:
        inst = Instance(points)
    except ValueError:
        return -math.inf
    edges = [(e.i, e.j) for e in max_spanning_tree(inst).edges]
    segs = _segments(inst.points, edges)
    starts = _starts(inst.points, edges, [(0.0, 0.0)])
    return _ellipsoid(segs, starts, tol, 4000)[0]


@dataclass
class SearchResult:
    points: list
    ratio: float
    evaluations: int
    restart: int
    history: list = field(default_factory=list)


def lower_bound_search(
    seed: int = 0,
    restarts: int = 32,
    budget: int = 100_000,
    n_points: int = 4,
    cooling: float = 0.95,
    epochs: int = 150,
    t0: float = 0.02,
    step0: float = 0.25,
    tol: float = 1e-9,
) -> SearchResult:
    """Simulated annealing for point sets whose maximum tree forces a large ``rho*``.

    ``budget`` counts objective evaluations across all restarts. Each restart
    runs ``epochs`` epochs of equal length with the temperature and the move
    size multiplied by ``cooling`` after every epoch. Configurations are kept
    normalized to the unit enclosing circle. Restart ``k`` draws from its own
    stream seeded by ``(seed, k)``, and the best restart wins with ties going
    to the lower restart index.
    """
    per_restart = max(budget // restarts, 1)
    per_epoch = max(per_restart // epochs, 1)
    best: Optional[SearchResult] = None
    history = []
    used = 0
    for k in range(restarts):
        rng = random.Random(f"{seed}:{k}")
        cur = normalize_to_unit_circle([(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n_points)])
        f = _tree_objective(cur, tol)
        used += 1
        top_pts, top_f = cur, f
        temp, step = t0, step0
        evals = 1
        while evals < per_restart:
            for _ in range(per_epoch):
                if evals >= per_restart:
                    break
                cand = list(cur)
                j = rng.randrange(n_points)
                cand[j] = (cand[j][0] + rng.gauss(0, step), cand[j][1] + rng.gauss(0, step))
                try:
                    cand = normalize_to_unit_circle(cand)
                except ValueError:
                    continue
                g = _tree_objective(cand, tol)
                evals += 1
                if g >= f or rng.random() < math.exp((g - f) / temp):
                    cur, f = cand, g
                    if f > top_f:
                        top_pts, top_f = cur, f
            temp *= cooling
            step *= cooling
        used += evals - 1
        history.append(top_f)
        if best is None or top_f > best.ratio:
            best = SearchResult(top_pts, top_f, 0, k)
    best.evaluations = used
    best.history = history
    return best


def binding_edges(points, edges, point, rel: float = 1e-6) -> list:
    """Edges whose ratio at ``point`` is within ``rel`` of the worst one."""
    ratios = [edge_ratio(point, points[i], points[j]) for i, j in edges]
    top = max(ratios)
    return [e for e, r in zip(edges, ratios) if r >= top - rel]


def pair_minimax(points, e1, e2, tol: float = 1e-12) -> float:
    """Smallest ``alpha`` at which the ellipses of two edges meet."""
    segs = _segments(points, [e1, e2])
    return _ellipsoid(segs, _starts(points, [e1, e2]), tol, 4000)[0]
