import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fenceforge.geometry import (
    Arc, CurveChain, Line, Vec2, intersect, signed_angle, wrap_angle,
)

TAU = 2.0 * math.pi


def dense_project(seg, r, n=20000):
    """Brute-force nearest point by dense parameter sampling."""
    ts = np.linspace(0.0, seg.length, n)
    best_d, best_t = math.inf, 0.0
    for t in ts:
        p = seg.point_at(t)
        d = r.dist(p)
        if d < best_d:
            best_d, best_t = d, t
    return best_d, best_t


def test_vec2_basics():
    a = Vec2(3.0, 4.0)
    assert a.norm() == 5.0
    assert a.dot(Vec2(1.0, 0.0)) == 3.0
    assert a.cross(Vec2(1.0, 0.0)) == -4.0
    assert a.perp().dot(a) == 0.0
    # perp is a +90 degree rotation
    assert Vec2(1.0, 0.0).perp() == Vec2(0.0, 1.0)


def test_wrap_angle_range():
    for a in np.linspace(-20, 20, 401):
        w = wrap_angle(a)
        assert -math.pi <= w <= math.pi
        assert math.isclose(math.sin(w), math.sin(a), abs_tol=1e-12)
        assert math.isclose(math.cos(w), math.cos(a), abs_tol=1e-12)


def test_line_projection_matches_dense_sampling():
    seg = Line(Vec2(-1.0, 2.0), Vec2(3.0, -1.0))
    rng = np.random.default_rng(0)
    for _ in range(50):
        r = Vec2(rng.uniform(-4, 6), rng.uniform(-4, 6))
        hits, degen = seg.project(r)
        assert not degen
        d_ref, _ = dense_project(seg, r, 4000)
        assert min(h[0] for h in hits) == pytest.approx(d_ref, abs=2e-3)


def test_arc_projection_matches_dense_sampling():
    seg = Arc(Vec2(0.5, -0.25), 1.7, 0.3, 4.1)
    rng = np.random.default_rng(1)
    for _ in range(50):
        r = Vec2(rng.uniform(-3, 4), rng.uniform(-3, 4))
        hits, degen = seg.project(r)
        if degen:
            continue
        d_ref, _ = dense_project(seg, r, 4000)
        assert min(h[0] for h in hits) == pytest.approx(d_ref, abs=2e-3)


def test_arc_center_query_is_degenerate():
    seg = Arc(Vec2(1.0, 1.0), 0.5, 0.0, math.pi)
    hits, degen = seg.project(Vec2(1.0, 1.0))
    assert degen
    assert all(h[0] == pytest.approx(0.5) for h in hits) or not hits


def test_arc_curvature_sign():
    ccw = Arc(Vec2(0, 0), 2.0, 0.0, math.pi)
    cw = Arc(Vec2(0, 0), 2.0, 0.0, -math.pi)
    assert ccw.curvature == pytest.approx(0.5)
    assert cw.curvature == pytest.approx(-0.5)


def test_tangent_by_finite_difference():
    eps = 1e-7
    for seg in [Line(Vec2(0, 0), Vec2(2, 1)),
                Arc(Vec2(0, 0), 1.3, 0.4, 2.2),
                Arc(Vec2(-1, 2), 0.8, 2.0, -1.1)]:
        for frac in [0.2, 0.5, 0.9]:
            t = frac * seg.length
            tan = seg.tangent_at(t)
            p0 = seg.point_at(t - eps)
            p1 = seg.point_at(t + eps)
            num = (p1 - p0) * (1.0 / (2 * eps))
            assert tan.x == pytest.approx(num.x, abs=1e-6)
            assert tan.y == pytest.approx(num.y, abs=1e-6)
            # arc-length parameterization: tangent is unit
            assert tan.norm() == pytest.approx(1.0, abs=1e-12)


def test_line_line_crossing():
    a = Line(Vec2(0, 0), Vec2(2, 2))
    b = Line(Vec2(0, 2), Vec2(2, 0))
    res = intersect(a, b)
    assert len(res.points) == 1
    h = res.points[0]
    assert h.point.x == pytest.approx(1.0)
    assert h.point.y == pytest.approx(1.0)


def test_line_line_parallel_no_hit():
    a = Line(Vec2(0, 0), Vec2(2, 0))
    b = Line(Vec2(0, 1), Vec2(2, 1))
    res = intersect(a, b)
    assert not res.points and not res.overlaps


def test_collinear_overlap_reported():
    a = Line(Vec2(0, 0), Vec2(3, 0))
    b = Line(Vec2(1, 0), Vec2(5, 0))
    res = intersect(a, b)
    assert res.overlaps


def test_line_arc_tangency_single_hit():
    # horizontal line tangent to unit circle at the top
    a = Line(Vec2(-2, 1), Vec2(2, 1))
    b = Arc(Vec2(0, 0), 1.0, 0.0, TAU)
    res = intersect(a, b)
    assert len(res.points) == 1
    assert res.points[0].point.y == pytest.approx(1.0, abs=1e-9)


def test_arc_arc_two_crossings():
    a = Arc(Vec2(0, 0), 1.0, 0.0, TAU)
    b = Arc(Vec2(1.2, 0), 1.0, 0.0, TAU)
    res = intersect(a, b)
    assert len(res.points) == 2
    for h in res.points:
        assert h.point.norm() == pytest.approx(1.0, abs=1e-9)
        assert (h.point - Vec2(1.2, 0)).norm() == pytest.approx(1.0, abs=1e-9)


def test_cocircular_overlap():
    a = Arc(Vec2(0, 0), 1.0, 0.0, math.pi)
    b = Arc(Vec2(0, 0), 1.0, math.pi / 2, math.pi)
    res = intersect(a, b)
    assert res.overlaps


@settings(max_examples=60, deadline=None)
@given(
    ax=st.floats(-3, 3), ay=st.floats(-3, 3),
    bx=st.floats(-3, 3), by=st.floats(-3, 3),
    cx=st.floats(-3, 3), cy=st.floats(-3, 3),
    r=st.floats(0.2, 2.5),
)
def test_line_arc_hits_lie_on_both(ax, ay, bx, by, cx, cy, r):
    if math.hypot(bx - ax, by - ay) < 1e-6:
        return
    seg = Line(Vec2(ax, ay), Vec2(bx, by))
    circ = Arc(Vec2(cx, cy), r, 0.0, TAU)
    res = intersect(seg, circ)
    for h in res.points:
        assert (h.point - Vec2(cx, cy)).norm() == pytest.approx(r, abs=1e-7)
        d_line, _ = min(seg.project(h.point)[0], key=lambda x: x[0])[:2]
        assert d_line < 1e-7


def unit_circle_chain(radius=1.0, center=Vec2(0, 0)):
    return CurveChain((Arc(center, radius, 0.0, TAU),), True)


def test_winding_full_circle_interior():
    # regression: a closed single-arc loop must wind about interior points
    ch = unit_circle_chain(1.85)
    assert ch.winding_number(Vec2(0, 0)) == 1
    assert ch.winding_number(Vec2(1.6, 0)) == 1
    assert ch.winding_number(Vec2(-1.84, 0.0)) == 1
    assert ch.winding_number(Vec2(1.86, 0)) == 0
    assert ch.winding_number(Vec2(5, 5)) == 0


def test_winding_reversed_loop():
    ch = unit_circle_chain().reversed()
    assert ch.winding_number(Vec2(0, 0)) == -1


def test_side_of_square():
    sq = CurveChain((
        Line(Vec2(0, 0), Vec2(1, 0)), Line(Vec2(1, 0), Vec2(1, 1)),
        Line(Vec2(1, 1), Vec2(0, 1)), Line(Vec2(0, 1), Vec2(0, 0)),
    ), True)
    assert sq.side_of(Vec2(0.5, 0.5)) == "inside"
    assert sq.side_of(Vec2(1.5, 0.5)) == "outside"
    assert sq.side_of(Vec2(1.0, 0.5), tol=1e-9) == "on-boundary"
    assert sq.orientation() == "ccw"
    assert sq.reversed().orientation() == "cw"


def test_chain_param_roundtrip():
    ch = CurveChain((
        Line(Vec2(0, 0), Vec2(1, 0)),
        Arc(Vec2(1, 1), 1.0, -math.pi / 2, math.pi / 2),
        Line(Vec2(2, 1), Vec2(2, 3)),
    ), False)
    for s in [0.1, 0.9, 1.2, 2.9]:
        i, t = ch.locate(s)
        assert ch.chain_param(i, t) == pytest.approx(s, abs=1e-12)
        p = ch.point_at(s)
        q = ch.segments[i].point_at(t)
        assert p.dist(q) < 1e-12


def test_subchain_wraps_around_closure():
    ch = unit_circle_chain()
    sub = ch.subchain(5.0, 1.0)
    want = (TAU - 5.0) + 1.0
    assert sub.length == pytest.approx(want, abs=1e-9)
    assert sub.point_at(0.0).dist(ch.point_at(5.0)) < 1e-9


def test_frame_at_joint_has_two_sides():
    ch = CurveChain((
        Line(Vec2(0, 0), Vec2(1, 0)),
        Line(Vec2(1, 0), Vec2(1, 1)),
        Line(Vec2(1, 1), Vec2(0, 1)),
        Line(Vec2(0, 1), Vec2(0, 0)),
    ), True)
    fp = ch.frame_at(1.0)
    assert fp.minus.tangent.dist(Vec2(1, 0)) < 1e-9
    assert fp.plus.tangent.dist(Vec2(0, 1)) < 1e-9
    assert fp.turn == pytest.approx(math.pi / 2)


def test_signed_angle_orientation():
    assert signed_angle(Vec2(1, 0), Vec2(0, 1)) == pytest.approx(math.pi / 2)
    assert signed_angle(Vec2(0, 1), Vec2(1, 0)) == pytest.approx(-math.pi / 2)
