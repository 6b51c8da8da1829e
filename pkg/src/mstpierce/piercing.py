"""Checks that the smallest-enclosing-circle center lies in every diametral disk of a maximum tree."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .enclosing import DEFAULT_SEED, points_on_circle, smallest_enclosing_circle
from .errors import PreconditionViolated, ZeroRadius
from .geom import (
    DEFAULT_TOL,
    Circle,
    Edge,
    Point,
    Tolerance,
    angle_at,
    diametral_disk,
    dist,
)
from .spanning import Instance, Tree, max_spanning_tree

HALF_PI = math.pi / 2
ANGLE_TOL = 1e-7


class EdgeRecord(NamedTuple):
    edge: Edge
    angle: float
    dot_slack: float
    contains_center: bool


@dataclass
class PiercingReport:
    instance_id: Optional[str]
    tree: Tree
    circle: Circle
    records: list
    min_angle: float
    verdict: bool
    support: tuple = ()

    def to_dict(self) -> dict:
        return {
            "id": self.instance_id,
            "verdict": self.verdict,
            "min_angle": self.min_angle,
            "circle": {"center": list(self.circle.center), "radius": self.circle.radius},
            "support": list(self.support),
            "tree": {
                "total_weight": self.tree.total_weight,
                "edges": [[e.i, e.j, e.weight] for e in self.tree.edges],
            },
            "edges": [
                {
                    "i": r.edge.i,
                    "j": r.edge.j,
                    "angle": r.angle,
                    "dot_slack": r.dot_slack,
                    "contains_center": r.contains_center,
                }
                for r in self.records
            ],
        }


def diametral_disks(inst: Instance, tree: Tree) -> list:
    pts = inst.points
    return [diametral_disk(pts[e.i], pts[e.j], e) for e in tree.edges]


def edge_records(inst: Instance, tree: Tree, center, tol: Tolerance = DEFAULT_TOL) -> list:
    """Per-edge membership of ``center`` in the closed diametral disk.

    ``dot_slack`` is ``(p - c).(q - c)`` divided by ``|pq|^2 / 4``; it lies in
    ``[-1, 0]`` exactly when the center is inside. An endpoint sitting on the
    center gets angle pi, since the disk then trivially contains it.
    """
    if not tree.edges:
        return []
    P = inst.coords
    ij = np.array([(e.i, e.j) for e in tree.edges])
    w = np.array([e.weight for e in tree.edges])
    u = P[ij[:, 0]] - center
    v = P[ij[:, 1]] - center
    dots = u[:, 0] * v[:, 0] + u[:, 1] * v[:, 1]
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    angles = np.arctan2(np.abs(cross), dots)
    at_center = (np.hypot(*u.T) <= tol.eps_abs) | (np.hypot(*v.T) <= tol.eps_abs)
    angles[at_center] = math.pi
    inside = dots <= tol.eps_rel * w * w
    slack = dots / (w * w / 4)
    return [
        EdgeRecord(e, float(a), float(s), bool(ok))
        for e, a, s, ok in zip(tree.edges, angles, slack, inside)
    ]


def verify_piercing(
    inst: Instance,
    seed: int = DEFAULT_SEED,
    tol: Tolerance = DEFAULT_TOL,
    tree: Optional[Tree] = None,
) -> PiercingReport:
    """Build the maximum tree and the enclosing circle, then test every edge's disk.

    ``tree`` overrides the computed maximum tree, which is how a deliberately
    wrong tree can be pushed through the same checks.
    """
    if tree is None:
        tree = max_spanning_tree(inst)
    circle, support = smallest_enclosing_circle(inst, seed=seed, tol=tol)
    records = edge_records(inst, tree, np.asarray(circle.center), tol)
    min_angle = min((r.angle for r in records), default=math.pi)
    return PiercingReport(
        inst.id,
        tree,
        circle,
        records,
        min_angle,
        all(r.contains_center for r in records),
        support.indices,
    )


def min_angle_at_center(inst: Instance, seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL) -> float:
    return verify_piercing(inst, seed=seed, tol=tol).min_angle


@dataclass(frozen=True)
class NormalizedFrame:
    """Similarity ``x -> F(scale * R(rotation) * (x + translation))``.

    ``F`` flips the sign of y when ``reflected`` is set.
    """

    translation: tuple
    rotation: float
    scale: float
    reflected: bool = False

    def apply(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2) + np.asarray(self.translation)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        out = self.scale * np.stack([c * pts[:, 0] - s * pts[:, 1], s * pts[:, 0] + c * pts[:, 1]], axis=1)
        if self.reflected:
            out[:, 1] = -out[:, 1]
        return out


def normalize_frame(inst: Instance, edge: Edge, seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL):
    """Frame with the enclosing circle as the unit circle and ``edge`` in standard position.

    The endpoint farther from the center lands on the negative x-axis (ties go
    to the lower index); the other endpoint lands in the closed lower half-plane,
    which is the third quarter whenever the edge subtends at most a right angle.
    """
    (center, radius), _ = smallest_enclosing_circle(inst, seed=seed, tol=tol)
    if radius <= tol.eps_abs:
        raise ZeroRadius("enclosing circle has zero radius")
    p, q = inst.points[edge.i], inst.points[edge.j]
    far, near = (p, q) if dist(p, center) >= dist(q, center) else (q, p)
    phi = math.atan2(far.y - center.y, far.x - center.x) if dist(far, center) > tol.eps_abs else math.pi
    rotation = math.remainder(math.pi - phi, 2 * math.pi)
    frame = NormalizedFrame((-center.x, -center.y), rotation, 1.0 / radius)
    if frame.apply([near])[0, 1] > tol.eps_abs:
        frame = NormalizedFrame(frame.translation, rotation, frame.scale, True)
    return frame, frame.apply(inst.coords)


@dataclass
class ArcOccupancy:
    a1: list = field(default_factory=list)
    a2: list = field(default_factory=list)
    a3: list = field(default_factory=list)
    a4: list = field(default_factory=list)

    def arcs(self):
        return self.a1, self.a2, self.a3, self.a4


def arc_index(angle: float) -> int:
    """Quadrant arc (1..4) holding a direction; a direction on an axis goes to the lower arc."""
    psi = angle % (2 * math.pi)
    k = math.ceil(psi / HALF_PI)
    return min(max(k, 1), 4)


def arc_occupancy(inst: Instance, theta: float = 0.0, seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL):
    circle, _ = smallest_enclosing_circle(inst, seed=seed, tol=tol)
    occ = ArcOccupancy()
    cx, cy = circle.center
    for k in points_on_circle(inst, circle, tol):
        p = inst.points[k]
        occ.arcs()[arc_index(math.atan2(p.y - cy, p.x - cx) - theta) - 1].append(k)
    return occ


def lemma1_check(inst: Instance, theta: float = 0.0, seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Points on the enclosing circle occupy both arcs of some opposite pair."""
    occ = arc_occupancy(inst, theta, seed, tol)
    return bool((occ.a1 and occ.a3) or (occ.a2 and occ.a4))


def _check_lemma2_frame(p, q, tol):
    origin = (0.0, 0.0)
    if not (p[0] < 0 and abs(p[1]) <= tol.eps_abs):
        raise PreconditionViolated(f"p={tuple(p)} is not on the negative x-axis")
    if math.hypot(*p) > 1 + tol.eps_rel:
        raise PreconditionViolated(f"p={tuple(p)} lies outside the unit circle")
    if not (q[0] <= tol.eps_abs and q[1] <= tol.eps_abs):
        raise PreconditionViolated(f"q={tuple(q)} is not in the third quarter")
    if math.hypot(*q) <= tol.eps_abs:
        raise PreconditionViolated("q coincides with the center")
    if math.hypot(*q) > math.hypot(*p):
        raise PreconditionViolated("q is farther from the center than p")
    if angle_at(origin, p, q, tol) >= HALF_PI:
        raise PreconditionViolated("p and q subtend a right angle or more at the center")


def _arc_samples(rng: np.random.Generator, lo: float, hi: float, k: int) -> np.ndarray:
    a = rng.uniform(lo, hi, k)
    return np.stack([np.cos(a), np.sin(a)], axis=1)


def lemma2_margins(p, q, samples: int = 1000, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Smallest sampled margin of each of the three strict inequalities.

    Parts: (i) |qt| - |pq| for t on A1 u A2, (ii) |pt| - |pq| for t on A1 u A4,
    (iii) |tt'| - |pq| for t on A2 and t' on A4 (all pairs of samples).
    """
    _check_lemma2_frame(p, q, tol)
    rng = np.random.default_rng(seed)
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    pq = float(np.hypot(*(p - q)))
    upper = _arc_samples(rng, 0.0, math.pi, samples)
    right = _arc_samples(rng, -HALF_PI, HALF_PI, samples)
    t2 = _arc_samples(rng, HALF_PI, math.pi, samples)
    t4 = _arc_samples(rng, 1.5 * math.pi, 2 * math.pi, samples)
    cross = np.hypot(t2[:, None, 0] - t4[None, :, 0], t2[:, None, 1] - t4[None, :, 1])
    return {
        "i": float(np.hypot(*(upper - q).T).min() - pq),
        "ii": float(np.hypot(*(right - p).T).min() - pq),
        "iii": float(cross.min() - pq),
    }


def lemma2_check(p, q, samples: int = 1000, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> bool:
    return min(lemma2_margins(p, q, samples, seed, tol).values()) > 0


def _lens_vertices(d1, d2, tol):
    (c1, r1), (c2, r2) = d1[:2], d2[:2]
    d = dist(c1, c2)
    band = tol.eps_rel * max(r1, r2) + tol.eps_abs
    if d <= tol.eps_abs or d > r1 + r2 + band or d < abs(r1 - r2) - band:
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    ux, uy = (c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d
    mx, my = c1[0] + a * ux, c1[1] + a * uy
    return [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]


def helly_triples(disks, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every three closed disks share a point.

    A nonempty intersection of disks either equals one whole disk (so holds
    its center) or has a corner where two boundaries cross, so centers and
    pairwise boundary crossings are enough candidates.
    """
    m = len(disks)
    if m < 3:
        return True
    cand = [tuple(d.center) for d in disks]
    owner = {k: [k] for k in range(m)}
    pair_rows = {}
    for a, b in itertools.combinations(range(m), 2):
        verts = _lens_vertices(disks[a], disks[b], tol)
        pair_rows[a, b] = list(range(len(cand), len(cand) + len(verts)))
        cand.extend(tuple(v) for v in verts)
    C = np.array(cand)
    centers = np.array([d.center for d in disks])
    radii = np.array([d.radius for d in disks])
    gap = np.hypot(C[:, None, 0] - centers[None, :, 0], C[:, None, 1] - centers[None, :, 1])
    inside = gap <= radii * (1 + tol.eps_rel) + tol.eps_abs
    for a, b, c in itertools.combinations(range(m), 3):
        rows = owner[a] + owner[b] + owner[c] + pair_rows[a, b] + pair_rows[a, c] + pair_rows[b, c]
        if not inside[np.ix_(rows, (a, b, c))].all(axis=1).any():
            return False
    return True


def random_lemma2_frame(rng: random.Random):
    """A (p, q) pair satisfying the standard-position preconditions."""
    a = rng.uniform(0.05, 1.0)
    phi = rng.uniform(math.pi + 1e-3, 1.5 * math.pi - 1e-3)
    r = rng.uniform(0.02, 1.0) * a
    return (-a, 0.0), (r * math.cos(phi), r * math.sin(phi))
