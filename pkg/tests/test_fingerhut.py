import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from mstpierce import Instance, max_spanning_tree, smallest_enclosing_circle
from mstpierce.errors import DegenerateEdge, NonConvergence, OddCount, TooLarge
from mstpierce.fingerhut import (
    CONJECTURED_ALPHA,
    SQRT2,
    TREE_LOWER_BOUND,
    EllipseSpec,
    binding_edges,
    center_ratio_check,
    edge_ratio,
    in_ellipse,
    max_ratio,
    max_weight_matching_bruteforce,
    max_weight_matching_dp,
    optimal_piercing_ratio,
    pair_minimax,
    ratio_report,
    tree_optimum,
)

from conftest import EQUILATERAL, UNIT_SQUARE, instances, point

FIXTURES = Path(__file__).parent / "fixtures"


def tree_pairs(inst):
    return [(e.i, e.j) for e in max_spanning_tree(inst).edges]


def grid_minimum(points, edges, lo, hi, steps=1001, rounds=4):
    """Grid search for min rho, re-centred and shrunk a few times."""
    P = np.asarray(points, dtype=float)
    (x0, y0), (x1, y1) = lo, hi
    for _ in range(rounds):
        X, Y = np.meshgrid(np.linspace(x0, x1, steps), np.linspace(y0, y1, steps))
        R = np.max(
            [(np.hypot(X - P[i, 0], Y - P[i, 1]) + np.hypot(X - P[j, 0], Y - P[j, 1])) / np.hypot(*(P[i] - P[j])) for i, j in edges],
            axis=0,
        )
        k = np.argmin(R)
        bx, by = X.flat[k], Y.flat[k]
        hx, hy = 4 * (x1 - x0) / steps, 4 * (y1 - y0) / steps
        x0, x1, y0, y1 = bx - hx, bx + hx, by - hy, by + hy
    return R.flat[k], (bx, by)


def test_edge_ratio_examples():
    assert edge_ratio((1, 0), (0, 0), (2, 0)) == 1.0
    assert edge_ratio((0.5, 0.5), (0, 0), (1, 0)) == pytest.approx(SQRT2, rel=1e-15)
    with pytest.raises(DegenerateEdge):
        edge_ratio((0, 0), (1, 1), (1, 1))


@given(st.floats(0, 2 * math.pi))
def test_ratio_on_diametral_circle(t):
    a, b = (-1.0, 0.0), (1.0, 0.0)
    c = (math.cos(t), math.sin(t))
    r = edge_ratio(c, a, b)
    assert r <= SQRT2 + 1e-12
    if abs(math.dist(c, a) - math.dist(c, b)) < 1e-9:
        assert r == pytest.approx(SQRT2)


def test_in_ellipse_examples():
    assert in_ellipse(EllipseSpec((0, 0), (4, 0), 1.0), (1.7, 0))
    assert in_ellipse(EllipseSpec((-1, 0), (1, 0), SQRT2), (0, 1))
    assert not in_ellipse(EllipseSpec((-1, 0), (1, 0), CONJECTURED_ALPHA), (0, 1))


def test_max_ratio_examples(square, triangle):
    assert max_ratio((0.5, 0.5), tree_pairs(square), square.points) == pytest.approx(SQRT2, rel=1e-15)
    assert max_ratio((1, 0), [(0, 1)], ((0, 0), (2, 0))) == 1.0
    c = smallest_enclosing_circle(triangle)[0].center
    assert max_ratio(c, tree_pairs(triangle), triangle.points) == pytest.approx(2 / math.sqrt(3), rel=1e-12)


def test_optimal_two_points():
    opt = optimal_piercing_ratio(((0, 0), (2, 0)), [(0, 1)], tol=1e-9)
    assert opt.ratio == pytest.approx(1.0, abs=1e-9)
    assert opt.point.y == pytest.approx(0, abs=1e-6) and 0 <= opt.point.x <= 2
    point, ratio = opt
    assert ratio == opt.ratio


def test_optimal_unit_square_against_grid(square):
    edges = tree_pairs(square)
    expected, (gx, gy) = grid_minimum(square.points, edges, (0, 0), (1, 1))
    assert expected == pytest.approx(1.0577, abs=5e-4)
    assert (gx, gy) == pytest.approx((0.5, 0.17), abs=5e-3)
    opt = optimal_piercing_ratio(square.points, edges, tol=1e-9)
    assert opt.certified
    assert opt.ratio == pytest.approx(expected, abs=1e-6)
    assert opt.ratio <= expected + 1e-12
    assert opt.point == pytest.approx((gx, gy), abs=1e-3)
    # at the optimum the side and the diagonals bind together
    assert len(binding_edges(square.points, edges, opt.point, rel=1e-6)) == 3


def test_optimal_equilateral_two_side_tree(triangle):
    edges = tree_pairs(triangle)
    expected, _ = grid_minimum(triangle.points, edges, (-0.5, -0.5), (2.5, 2.5))
    opt = optimal_piercing_ratio(triangle.points, edges, tol=1e-9)
    assert opt.ratio == pytest.approx(expected, abs=1e-6)
    assert opt.ratio < 2 / math.sqrt(3)
    # both sides meet at the shared vertex, which lies on both segments
    shared = set(edges[0]) & set(edges[1])
    assert opt.point == pytest.approx(triangle.points[shared.pop()], abs=1e-6)


def test_nonconvergence_carries_best_point(square):
    with pytest.raises(NonConvergence) as info:
        optimal_piercing_ratio(square.points, tree_pairs(square), tol=1e-12, budget=5)
    assert info.value.result.ratio <= SQRT2
    loose = optimal_piercing_ratio(square.points, tree_pairs(square), tol=1e-12, budget=5, strict=False)
    assert not loose.certified


def test_center_ratio_examples(square):
    assert center_ratio_check(square) == pytest.approx(SQRT2, abs=1e-12)
    assert center_ratio_check(Instance(((0, 0), (2, 0)))) == 1.0


def test_ratio_report(square):
    rep = ratio_report(square)
    assert rep.ratio_at_center == pytest.approx(SQRT2)
    assert rep.optimal_ratio <= rep.ratio_at_center + 1e-9
    assert max(rep.optimal_ratios) == pytest.approx(rep.optimal_ratio, abs=1e-12)
    doc = rep.to_dict()
    assert json.loads(json.dumps(doc)) == doc


@given(point, point, st.floats(0, 2 * math.pi), st.floats(0, 1))
def test_pointwise_bound_inside_diametral_disk(a, b, t, s):
    assume(math.dist(a, b) > 1e-3)
    m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    r = math.dist(a, b) / 2 * math.sqrt(s)
    c = (m[0] + r * math.cos(t), m[1] + r * math.sin(t))
    assert edge_ratio(c, a, b) <= SQRT2 + 1e-9


@given(instances(2, 40))
def test_center_ratio_within_sqrt2(inst):
    assert center_ratio_check(inst) <= SQRT2 + 1e-9


@given(instances(3, 12), point, point, st.floats(0, 1))
def test_rho_is_convex(inst, c1, c2, lam):
    edges = tree_pairs(inst)
    mid = (lam * c1[0] + (1 - lam) * c2[0], lam * c1[1] + (1 - lam) * c2[1])
    lhs = max_ratio(mid, edges, inst.points)
    rhs = lam * max_ratio(c1, edges, inst.points) + (1 - lam) * max_ratio(c2, edges, inst.points)
    assert lhs <= rhs + 1e-9 * max(1.0, rhs)


@given(instances(2, 10))
def test_optimum_is_no_worse_than_center_and_consistent(inst):
    edges = tree_pairs(inst)
    c = smallest_enclosing_circle(inst)[0].center
    opt = optimal_piercing_ratio(inst.points, edges, tol=1e-7, budget=5000)
    assert opt.ratio <= max_ratio(c, edges, inst.points) + 1e-7
    for i, j in edges:
        assert in_ellipse(EllipseSpec(inst.points[i], inst.points[j], opt.ratio), opt.point)


def test_matching_examples(square):
    m = max_weight_matching_bruteforce(Instance(((0, 0), (2, 0))))
    assert [(e.i, e.j) for e in m.pairs] == [(0, 1)]
    m = max_weight_matching_bruteforce(square)
    assert [(e.i, e.j) for e in m.pairs] == [(0, 2), (1, 3)]
    assert m.total_weight == pytest.approx(2 * SQRT2)
    with pytest.raises(OddCount):
        max_weight_matching_bruteforce(Instance(EQUILATERAL))
    with pytest.raises(TooLarge):
        max_weight_matching_bruteforce(Instance(tuple((k, k * k) for k in range(14))))


def test_matching_tie_break_is_lexicographic():
    # a regular hexagon: the three long diagonals are the unique best matching,
    # a rectangle 1x1 square has two equal side matchings but diagonals win
    hexagon = Instance(tuple((math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)))
    m = max_weight_matching_bruteforce(hexagon)
    assert [(e.i, e.j) for e in m.pairs] == [(0, 3), (1, 4), (2, 5)]
    # four collinear equally spaced points: (0,2),(1,3) and (0,3),(1,2) tie at 4
    line = Instance(((0, 0), (1, 0), (2, 0), (3, 0)))
    m = max_weight_matching_bruteforce(line)
    assert m.total_weight == 4.0
    assert [(e.i, e.j) for e in m.pairs] == [(0, 2), (1, 3)]


@given(instances(2, 8).filter(lambda i: len(i) % 2 == 0))
def test_matching_bruteforce_matches_dp(inst):
    m = max_weight_matching_bruteforce(inst)
    assert sorted(k for e in m.pairs for k in (e.i, e.j)) == list(range(len(inst)))
    assert m.total_weight == pytest.approx(max_weight_matching_dp(inst), rel=1e-12)


def test_matching_six_random_points():
    rng = np.random.default_rng(6)
    inst = Instance(tuple(map(tuple, rng.random((6, 2)))))
    assert max_weight_matching_bruteforce(inst).total_weight == pytest.approx(max_weight_matching_dp(inst), rel=1e-12)


def test_unit_square_is_a_poor_lower_bound_seed():
    assert tree_optimum(UNIT_SQUARE).ratio == pytest.approx(1.0577, abs=5e-4)


def test_symmetric_family_approaches_the_bound():
    # points +-u on the circle and +-v inside with v perpendicular to u;
    # rho* = (1 + r) / sqrt(1 + r^2) while |v| = r stays below 1/sqrt(3)
    for r in (0.3, 0.5, 0.57):
        pts = ((0.0, 1.0), (0.0, -1.0), (r, 0.01), (-r, -0.01))
        got = tree_optimum(pts).ratio
        u, v = np.array([0.0, 1.0]), np.array([r, 0.01])
        expected = (1 + np.hypot(*v)) / np.hypot(*(v + u))
        assert got == pytest.approx(expected, abs=1e-8)
    assert (1 + 1 / math.sqrt(3)) / math.sqrt(4 / 3) == pytest.approx(TREE_LOWER_BOUND, rel=1e-15)


def test_lower_bound_fixture():
    doc = json.loads((FIXTURES / "lower_bound_seed0.json").read_text())
    pts = [tuple(p) for p in doc["points"]]
    opt = tree_optimum(pts)
    assert opt.ratio == pytest.approx(doc["ratio"], abs=1e-9)
    assert opt.ratio >= 1.365
    assert opt.ratio <= TREE_LOWER_BOUND + 1e-9
    # the two binding tree edges have ellipses that only just meet at alpha
    edges = tree_pairs(Instance(pts))
    bind = binding_edges(pts, edges, opt.point, rel=1e-6)
    assert len(bind) >= 2
    touch = pair_minimax(pts, bind[0], bind[1])
    assert touch == pytest.approx(TREE_LOWER_BOUND, abs=1.1e-3)
    a = [EllipseSpec(pts[i], pts[j], TREE_LOWER_BOUND) for i, j in bind[:2]]
    assert all(in_ellipse(e, opt.point, ) for e in a)
