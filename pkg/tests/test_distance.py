import math

import numpy as np
import pytest

from fenceforge import (
    build_grid_oracle, dist_to_obstacles, dist_to_perimeter, distance_rate,
    project_correspondence,
)
from fenceforge.errors import ConsistencyError
from fenceforge.geometry import Vec2


def test_disc_distance_is_radial(disc):
    for x, y in [(2.0, 0.0), (0.0, -3.0), (1.5, 1.5), (-2.2, 0.7)]:
        r = Vec2(x, y)
        got = dist_to_obstacles(disc, r, disc.tol)
        assert got.distance == pytest.approx(r.norm() - 1.0, abs=1e-12)
        assert not got.in_material


def test_disc_interior_is_material(disc):
    got = dist_to_obstacles(disc, Vec2(0.3, 0.1), disc.tol)
    assert got.in_material
    # distance stays the boundary distance; the flag carries the sign
    assert got.distance == pytest.approx(1.0 - math.hypot(0.3, 0.1), abs=1e-12)


def test_point_obstacle_distance(scenes):
    sc = scenes["twopoints"]
    got = dist_to_obstacles(sc, Vec2(0.48, 1.0), sc.tol)
    want = math.hypot(0.48, 1.0)
    assert got.distance == pytest.approx(want, abs=1e-12)
    # equidistant from both points: two projections
    assert len(got.projections) == 2


def test_distance_against_grid_oracle(scenes):
    # the analytic field must agree with the sampled one at grid nodes
    rng = np.random.default_rng(11)
    for name in ["peanut", "u_cave"]:
        sc = scenes[name]
        oracle = build_grid_oracle(sc)
        h = oracle.pitch
        ny, nx = oracle.shape
        for _ in range(300):
            iy = int(rng.integers(0, ny))
            ix = int(rng.integers(0, nx))
            wx, wy = oracle.world_of(np.array(iy), np.array(ix))
            p = Vec2(float(wx), float(wy))
            got = dist_to_obstacles(sc, p, sc.tol)
            sampled = abs(float(oracle.values[iy, ix]))
            # oracle samples the boundary at pitch/2, so allow that slack
            assert abs(got.distance - sampled) <= h


def test_material_sign_against_oracle(scenes):
    sc = scenes["peanut"]
    oracle = build_grid_oracle(sc)
    assert oracle.value_at(Vec2(0.3, 0.0)) < 0
    assert oracle.value_at(Vec2(0.3, 1.0)) > 0
    got = dist_to_obstacles(sc, Vec2(0.3, 0.0), sc.tol)
    assert got.in_material


def test_perimeter_distance_identity(scenes, perimeters):
    rng = np.random.default_rng(3)
    for name, sc in scenes.items():
        per = perimeters[name]
        x0, y0, x1, y1 = sc.bbox()
        n = 0
        while n < 100:
            p = Vec2(rng.uniform(x0 - 2, x1 + 2), rng.uniform(y0 - 2, y1 + 2))
            zd = dist_to_obstacles(sc, p, sc.tol)
            if zd.in_material or zd.distance <= sc.d0 + 10 * sc.tol:
                continue
            if not per.free_side_contains(p, strict=True):
                continue
            zp = dist_to_perimeter(sc, per, p)
            assert abs(zp.distance - (zd.distance - sc.d0)) <= 1e-9 * sc.diameter
            n += 1


def test_correspondence_is_pointwise_bijection(scenes, perimeters):
    rng = np.random.default_rng(4)
    sc = scenes["u_cave"]
    per = perimeters["u_cave"]
    x0, y0, x1, y1 = sc.bbox()
    n = 0
    while n < 150:
        p = Vec2(rng.uniform(x0 - 1.5, x1 + 1.5), rng.uniform(y0 - 1.5, y1 + 1.5))
        zd = dist_to_obstacles(sc, p, sc.tol)
        if zd.in_material or zd.distance <= sc.d0 + 10 * sc.tol:
            continue
        if not per.free_side_contains(p, strict=True):
            continue
        pairs = project_correspondence(sc, per, p)
        assert len(pairs) == len(zd.projections)
        for pair in pairs:
            leg = pair.perimeter_point.dist(pair.material_point.point)
            assert leg == pytest.approx(sc.d0, abs=1e-7)
        n += 1


def test_correspondence_rejects_band_queries(disc, perimeters):
    per = perimeters["disc"]
    with pytest.raises(ValueError):
        project_correspondence(disc, per, Vec2(1.3, 0.0))


def test_rate_on_disc_matches_closed_form(disc):
    # outside a disc the rate is the radial component of the velocity
    r = Vec2(2.0, 1.0)
    u = Vec2(-0.4, 0.9)
    res = distance_rate(disc, r, u)
    want = u.dot(r * (1.0 / r.norm()))
    assert res.value == pytest.approx(want, abs=1e-12)
    assert res.lo == pytest.approx(res.hi, abs=1e-12)


def test_rate_interval_at_equidistant_point(scenes):
    sc = scenes["twopoints"]
    # on the bisector both projections are active and disagree
    r = Vec2(0.48, 1.1)
    u = Vec2(1.0, 0.0)
    res = distance_rate(sc, r, u)
    assert res.lo < 0 < res.hi
    # no single derivative exists here, only the interval
    assert res.value is None


def test_rate_matches_central_difference(scenes):
    rng = np.random.default_rng(5)
    eps = 1e-6
    for name in ["disc", "peanut", "rounded_square"]:
        sc = scenes[name]
        x0, y0, x1, y1 = sc.bbox()
        done = 0
        while done < 10:
            p = Vec2(rng.uniform(x0 - 2, x1 + 2), rng.uniform(y0 - 2, y1 + 2))
            zd = dist_to_obstacles(sc, p, sc.tol)
            if zd.in_material or zd.distance < 0.05 or len(zd.projections) > 1:
                continue
            u = Vec2(rng.normal(), rng.normal())
            res = distance_rate(sc, p, u)
            num = (dist_to_obstacles(sc, p + u * eps, sc.tol).distance
                   - dist_to_obstacles(sc, p - u * eps, sc.tol).distance) / (2 * eps)
            assert res.value == pytest.approx(num, abs=1e-4)
            done += 1
