"""Smallest enclosing circle: randomized incremental construction plus a brute-force oracle."""
from __future__ import annotations

import itertools
import random
from typing import NamedTuple

import numpy as np

from .errors import CollinearPoints, EmptyInstance, TooLarge
from .geom import DEFAULT_TOL, Circle, Point, Tolerance, circumcircle, dist, midpoint
from .spanning import Instance

MAX_BRUTEFORCE_POINTS = 64
DEFAULT_SEED = 0x5EC


class SupportSet(NamedTuple):
    indices: tuple


def _contains(circle, p, tol) -> bool:
    return dist(circle[0], p) <= circle[1] * (1.0 + tol.eps_rel) + tol.eps_abs


def _two(pts, a, b):
    return Circle(midpoint(pts[a], pts[b]), dist(pts[a], pts[b]) / 2), (a, b)


def _three(pts, a, b, c, tol):
    try:
        return circumcircle(pts[a], pts[b], pts[c], tol), (a, b, c)
    except CollinearPoints:
        # only reachable through rounding; the widest pair spans the other point
        pairs = [(a, b), (a, c), (b, c)]
        u, v = max(pairs, key=lambda e: dist(pts[e[0]], pts[e[1]]))
        return _two(pts, u, v)


def smallest_enclosing_circle(inst: Instance, seed: int = DEFAULT_SEED, tol: Tolerance = DEFAULT_TOL):
    """Return ``(circle, support)`` for the points of ``inst``.

    Expected linear time over a shuffled insertion order; ``seed`` fixes the
    shuffle so repeated calls give identical floating-point output.
    """
    pts = inst.points
    n = len(pts)
    if n == 0:
        raise EmptyInstance("no points")
    order = list(range(n))
    random.Random(seed).shuffle(order)

    circle, support = Circle(pts[order[0]], 0.0), (order[0],)
    for ii in range(1, n):
        i = order[ii]
        if _contains(circle, pts[i], tol):
            continue
        circle, support = Circle(pts[i], 0.0), (i,)
        for jj in range(ii):
            j = order[jj]
            if _contains(circle, pts[j], tol):
                continue
            circle, support = _two(pts, i, j)
            for kk in range(jj):
                k = order[kk]
                if not _contains(circle, pts[k], tol):
                    circle, support = _three(pts, i, j, k, tol)
    return circle, SupportSet(tuple(sorted(support)))


def sec_bruteforce(inst: Instance, tol: Tolerance = DEFAULT_TOL) -> Circle:
    """Minimum over every pair-diameter and triple-circumcircle that covers all points."""
    n = len(inst)
    if n > MAX_BRUTEFORCE_POINTS:
        raise TooLarge(f"brute force limited to {MAX_BRUTEFORCE_POINTS} points, got {n}")
    if n == 0:
        raise EmptyInstance("no points")
    if n == 1:
        return Circle(inst.points[0], 0.0)
    P = inst.coords

    pairs = np.array(list(itertools.combinations(range(n), 2)))
    centers = [(P[pairs[:, 0]] + P[pairs[:, 1]]) / 2]
    radii = [np.hypot(*(P[pairs[:, 0]] - P[pairs[:, 1]]).T) / 2]

    if n >= 3:
        tri = np.array(list(itertools.combinations(range(n), 3)))
        a, b, c = P[tri[:, 0]], P[tri[:, 1]], P[tri[:, 2]]
        bx, by = (b - a).T
        cx, cy = (c - a).T
        d = 2.0 * (bx * cy - by * cx)
        scale = np.maximum.reduce([np.hypot(bx, by), np.hypot(cx, cy), np.hypot(*(c - b).T)])
        ok = np.abs(d) > 2.0 * tol.eps_abs * scale**2
        b2, c2 = bx**2 + by**2, cx**2 + cy**2
        with np.errstate(divide="ignore", invalid="ignore"):
            ux = (cy * b2 - by * c2) / d
            uy = (bx * c2 - cx * b2) / d
        cc = a + np.stack([ux, uy], axis=1)
        centers.append(cc[ok])
        radii.append(np.hypot(*(cc[ok] - a[ok]).T))

    centers = np.concatenate(centers)
    radii = np.concatenate(radii)
    far = np.hypot(centers[:, None, 0] - P[None, :, 0], centers[:, None, 1] - P[None, :, 1]).max(axis=1)
    valid = far <= radii * (1.0 + tol.eps_rel) + tol.eps_abs
    k = int(np.argmin(np.where(valid, radii, np.inf)))
    return Circle(Point(float(centers[k, 0]), float(centers[k, 1])), float(radii[k]))


def points_on_circle(inst: Instance, circle: Circle, tol: Tolerance = DEFAULT_TOL) -> list:
    """Indices of instance points lying on the boundary of ``circle`` within tolerance."""
    c, r = circle
    band = tol.eps_rel * r + tol.eps_abs
    return [k for k, p in enumerate(inst.points) if abs(dist(c, p) - r) <= band]
