"""Planar primitives and tolerance-aware predicates.

Everything here works on plain 64-bit floats. Predicates that compare
against zero use a tolerance band scaled by the squared size of the
operands, so a point sitting exactly on a disk boundary counts as inside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import CollinearPoints, DegenerateAngle, DegenerateEdge


class Point(NamedTuple):
    x: float
    y: float


class Edge(NamedTuple):
    """Tree or matching edge over instance indices, stored with ``i < j``."""

    i: int
    j: int
    weight: float


class Circle(NamedTuple):
    center: Point
    radius: float


class Disk(NamedTuple):
    center: Point
    radius: float
    edge: Optional[Edge] = None


@dataclass(frozen=True)
class Tolerance:
    eps_rel: float = 1e-9
    eps_abs: float = 1e-12

    def __post_init__(self):
        if not (self.eps_rel > 0 and self.eps_abs > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()


def make_edge(i: int, j: int, points) -> Edge:
    if i == j:
        raise DegenerateEdge(f"edge endpoints coincide: {i}")
    if i > j:
        i, j = j, i
    return Edge(i, j, dist(points[i], points[j]))


def dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def midpoint(p, q) -> Point:
    return Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def dot_at(c, p, q) -> float:
    """Dot product of ``p - c`` and ``q - c``."""
    return (p[0] - c[0]) * (q[0] - c[0]) + (p[1] - c[1]) * (q[1] - c[1])


def cross_at(c, p, q) -> float:
    return (p[0] - c[0]) * (q[1] - c[1]) - (p[1] - c[1]) * (q[0] - c[0])


def angle_at(c, p, q, tol: Tolerance = DEFAULT_TOL) -> float:
    """Unsigned angle between ``p - c`` and ``q - c``, in ``[0, pi]``."""
    if dist(p, c) <= tol.eps_abs or dist(q, c) <= tol.eps_abs:
        raise DegenerateAngle(f"angle at {tuple(c)} undefined for endpoint at the apex")
    return math.atan2(abs(cross_at(c, p, q)), dot_at(c, p, q))


def in_diametral_disk(p, q, x, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Closed membership of ``x`` in the disk with diameter ``pq``.

    By Thales, ``x`` is inside iff the angle pxq is at least a right angle,
    i.e. iff ``(p - x) . (q - x) <= 0``.
    """
    d2 = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
    if math.sqrt(d2) <= tol.eps_abs:
        raise DegenerateEdge("diametral disk of a zero-length segment")
    return dot_at(x, p, q) <= tol.eps_rel * d2


def diametral_disk(p, q, edge: Optional[Edge] = None) -> Disk:
    return Disk(midpoint(p, q), dist(p, q) / 2, edge)


def in_disk(disk, x, tol: Tolerance = DEFAULT_TOL) -> bool:
    r = disk[1]
    return dist(disk[0], x) <= r + tol.eps_rel * max(r, 1.0) + tol.eps_abs


def circumcircle(p, q, r, tol: Tolerance = DEFAULT_TOL) -> Circle:
    scale = max(dist(p, q), dist(q, r), dist(p, r))
    bx, by = q[0] - p[0], q[1] - p[1]
    cx, cy = r[0] - p[0], r[1] - p[1]
    d = 2.0 * (bx * cy - by * cx)
    if abs(d) <= 2.0 * tol.eps_abs * scale * scale:
        raise CollinearPoints(f"{tuple(p)}, {tuple(q)}, {tuple(r)} are collinear")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point(p[0] + ux, p[1] + uy)
    radius = max(dist(center, p), dist(center, q), dist(center, r))
    return Circle(center, radius)
