"""Euclidean maximum-weight spanning trees of the complete graph over a point set."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numba
import numpy as np

from .errors import DuplicatePoints, EmptyInstance, NotASpanningTree, NonFiniteCoordinate, TooLarge
from .geom import DEFAULT_TOL, Edge, Point, Tolerance

MAX_ENUMERATION_POINTS = 8


@dataclass(frozen=True)
class Instance:
    """An ordered planar point set. Indices into ``points`` identify vertices."""

    points: tuple
    id: Optional[str] = None
    tol: Tolerance = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(Point(float(p[0]), float(p[1])) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise EmptyInstance("instance has no points")
        for k, p in enumerate(pts):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise NonFiniteCoordinate(f"point {k} has a non-finite coordinate: {p}")
        if len(pts) > 1:
            a, b = _closest_pair(self.distances)
            if self.distances[a, b] <= self.tol.eps_abs:
                raise DuplicatePoints(f"points {a} and {b} coincide: {pts[a]}")

    def __len__(self):
        return len(self.points)

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)

    @cached_property
    def distances(self) -> np.ndarray:
        return _pairwise(self.coords)

    def edge(self, i: int, j: int) -> Edge:
        if i > j:
            i, j = j, i
        return Edge(i, j, float(self.distances[i, j]))


@dataclass(frozen=True)
class Tree:
    edges: tuple
    total_weight: float

    @classmethod
    def from_edges(cls, edges: Sequence[Edge]) -> "Tree":
        edges = tuple(Edge(min(e.i, e.j), max(e.i, e.j), e.weight) for e in edges)
        return cls(edges, math.fsum(e.weight for e in edges))


@numba.njit(cache=True)
def _pairwise(c):
    n = c.shape[0]
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = math.hypot(c[i, 0] - c[j, 0], c[i, 1] - c[j, 1])
    return d


@numba.njit(cache=True)
def _closest_pair(d):
    n = d.shape[0]
    best, a, b = np.inf, 0, 1
    for i in range(n):
        for j in range(i + 1, n):
            if d[i, j] < best:
                best, a, b = d[i, j], i, j
    return a, b


@numba.njit(cache=True)
def _prim(d):
    # Kruskal's order as a strict total order: heavier first, then smaller (i, j).
    # Under a strict order the maximum tree is unique, so Prim reproduces Kruskal.
    n = d.shape[0]
    in_tree = np.zeros(n, dtype=np.bool_)
    key = np.full(n, -1.0)
    lo = np.zeros(n, dtype=np.int64)
    hi = np.zeros(n, dtype=np.int64)
    out = np.empty((n - 1, 2), dtype=np.int64)
    in_tree[0] = True
    for v in range(1, n):
        key[v], lo[v], hi[v] = d[0, v], 0, v
    for step in range(n - 1):
        u = -1
        for v in range(n):
            if in_tree[v]:
                continue
            if u < 0 or key[v] > key[u] or (
                key[v] == key[u] and (lo[v] < lo[u] or (lo[v] == lo[u] and hi[v] < hi[u]))
            ):
                u = v
        in_tree[u] = True
        out[step, 0], out[step, 1] = lo[u], hi[u]
        for v in range(n):
            if in_tree[v]:
                continue
            a, b = min(u, v), max(u, v)
            w = d[u, v]
            if w > key[v] or (w == key[v] and (a < lo[v] or (a == lo[v] and b < hi[v]))):
                key[v], lo[v], hi[v] = w, a, b
    return out


@numba.njit(cache=True)
def _kruskal(order, iu, ju, n):
    parent = np.arange(n)
    taken = np.empty(n - 1, dtype=np.int64)
    count = 0
    for k in order:
        a = iu[k]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ju[k]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
            taken[count] = k
            count += 1
            if count == n - 1:
                break
    return taken


def max_spanning_tree(inst: Instance, method: str = "prim") -> Tree:
    """Maximum-weight spanning tree under Kruskal's rule.

    Edges are taken heaviest first, equal weights in lexicographic (i, j)
    order, skipping any edge that closes a cycle. ``method="kruskal"`` runs
    that rule literally (O(n^2 log n)); the default ``"prim"`` grows the same
    tree in O(n^2) and returns identical edges in Kruskal's acceptance order.
    """
    n = len(inst)
    if n == 1:
        return Tree((), 0.0)
    d = inst.distances
    if method == "kruskal":
        iu, ju = np.triu_indices(n, 1)
        w = d[iu, ju]
        # stable sort keeps the lexicographic (i, j) order of triu_indices among ties
        order = np.argsort(-w, kind="stable")
        taken = _kruskal(order, iu, ju, n)
        pairs = np.stack([iu[taken], ju[taken]], axis=1)
    elif method == "prim":
        pairs = _prim(d)
        w = d[pairs[:, 0], pairs[:, 1]]
        # present edges as Kruskal would have accepted them
        order = np.lexsort((pairs[:, 1], pairs[:, 0], -w))
        pairs = pairs[order]
    else:
        raise ValueError(f"unknown method {method!r}")
    edges = tuple(Edge(int(i), int(j), float(d[i, j])) for i, j in pairs)
    return Tree(edges, math.fsum(e.weight for e in edges))


def _adjacency(n: int, tree: Tree):
    if len(tree.edges) != n - 1:
        raise NotASpanningTree(f"expected {n - 1} edges, got {len(tree.edges)}")
    adj = [[] for _ in range(n)]
    for e in tree.edges:
        if not (0 <= e.i < n and 0 <= e.j < n) or e.i == e.j:
            raise NotASpanningTree(f"bad edge {e}")
        adj[e.i].append((e.j, e.weight))
        adj[e.j].append((e.i, e.weight))
    return adj


def path_bottlenecks(n: int, tree: Tree) -> np.ndarray:
    """Minimum edge weight on the tree path between every pair of vertices."""
    adj = _adjacency(n, tree)
    out = np.full((n, n), np.inf)
    for s in range(n):
        seen = [False] * n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, w in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    out[s, v] = min(out[s, u], w)
                    queue.append(v)
        if not all(seen):
            raise NotASpanningTree("tree does not connect all points")
    return out


def verify_max_tree(inst: Instance, tree: Tree, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Cycle-optimality certificate for a maximum spanning tree.

    A spanning tree is maximum iff no non-tree edge is strictly heavier than
    some edge on the tree path joining its endpoints.
    """
    n = len(inst)
    bottleneck = path_bottlenecks(n, tree)
    if n < 2:
        return True
    iu = np.triu_indices(n, 1)
    w = inst.distances[iu]
    return bool(np.all(bottleneck[iu] >= w - tol.eps_rel * w - tol.eps_abs))


def prufer_sequences(n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(n), repeat=n - 2)), dtype=np.int64).reshape(n ** (n - 2), n - 2)


def enumerate_best_tree_weight(inst: Instance) -> float:
    """Brute-force oracle: best total weight over all n^(n-2) labeled trees."""
    n = len(inst)
    if n > MAX_ENUMERATION_POINTS:
        raise TooLarge(f"enumeration limited to {MAX_ENUMERATION_POINTS} points, got {n}")
    if n < 2:
        return 0.0
    W = inst.distances
    seqs = prufer_sequences(n)
    rows = np.arange(len(seqs))
    degree = np.ones((len(seqs), n), dtype=np.int64)
    for k in range(n - 2):
        np.add.at(degree, (rows, seqs[:, k]), 1)
    total = np.zeros(len(seqs))
    for k in range(n - 2):
        leaf = np.argmax(degree == 1, axis=1)
        total += W[leaf, seqs[:, k]]
        degree[rows, leaf] = 0
        degree[rows, seqs[:, k]] -= 1
    last = np.argsort(degree != 1, axis=1, kind="stable")[:, :2]
    total += W[last[:, 0], last[:, 1]]
    return float(total.max())
