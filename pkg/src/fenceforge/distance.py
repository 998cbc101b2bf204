"""Distance queries against scene material and the outer perimeter.

The load-bearing identity: for a query point in the exterior free region,
distance to the outer perimeter equals distance to material minus the
clearance. dist_to_perimeter asserts it on every exterior query, so the
two independently computed fields police each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import ConsistencyError
from .geometry import DegenerateArc, DistanceResult, Projection, Vec2

if TYPE_CHECKING:
    from .scene import Scene


@dataclass(frozen=True)
class SceneProjection:
    """A nearest material point, tagged with its owner."""

    point: Vec2
    obstacle_index: int
    seg_index: int  # -1 for a point obstacle
    t: float


@dataclass(frozen=True)
class SceneDistance:
    distance: float
    projections: tuple[SceneProjection, ...]
    degenerate: tuple[tuple[int, DegenerateArc], ...] = ()
    in_material: bool = False

    @property
    def multiple(self) -> bool:
        return len(self.projections) + 2 * len(self.degenerate) > 1


def dist_to_obstacles(scene: "Scene", r: Vec2,
                      tol: float | None = None) -> SceneDistance:
    """Unsigned distance from r to the material boundary, with projections.

    All nearest points within tol of the minimum are reported. in_material
    marks queries buried inside an obstacle.
    """
    from .scene import LoopObstacle, PointObstacle
    tol = scene.tol if tol is None else tol
    best = math.inf
    cands: list[SceneProjection] = []
    degen: list[tuple[float, int, DegenerateArc]] = []
    for i, ob in enumerate(scene.obstacles):
        if isinstance(ob, PointObstacle):
            d = r.dist(ob.point)
            best = min(best, d)
            cands.append(SceneProjection(ob.point, i, -1, 0.0))
            continue
        res = ob.boundary.project(r, tol)
        best = min(best, res.distance)
        for p in res.projections:
            cands.append(SceneProjection(p.point, i, p.seg_index, p.t))
        for da in res.degenerate:
            degen.append((da.radius, i, da))
    keep: list[SceneProjection] = []
    for sp in cands:
        if r.dist(sp.point) <= best + tol:
            if any(sp.point.dist(q.point) <= tol for q in keep):
                continue
            keep.append(sp)
    degs = tuple((i, da) for rad, i, da in degen if rad <= best + tol)
    return SceneDistance(best, tuple(keep), degs,
                         in_material=scene.point_in_material(r, tol))


def dist_to_perimeter(scene: "Scene", perimeter, r: Vec2,
                      tol: float | None = None) -> DistanceResult:
    """Distance from r to the outer perimeter chain.

    On exterior queries the result is cross-checked against the material
    distance; disagreement beyond tolerance is an internal error, not a
    property of the scene.
    """
    tol = scene.tol if tol is None else tol
    res = perimeter.chain.project(r, tol)
    if perimeter.free_side_contains(r, strict=True):
        zd = dist_to_obstacles(scene, r, tol).distance
        gap = abs(res.distance - (zd - scene.d0))
        if gap > 10.0 * tol + 1e-12 * max(1.0, zd):
            raise ConsistencyError(
                f"perimeter distance {res.distance:.12g} disagrees with "
                f"material distance minus clearance {zd - scene.d0:.12g} "
                f"at ({r.x:.6g}, {r.y:.6g})")
    return res


@dataclass(frozen=True)
class CorrespondencePair:
    material_point: SceneProjection
    perimeter_point: Vec2
    perimeter_param: float


def project_correspondence(scene: "Scene", perimeter, r: Vec2,
                           tol: float | None = None) -> list[CorrespondencePair]:
    """Pair each nearest material point with its perimeter counterpart.

    The counterpart sits on the segment from the material point toward r at
    clearance distance. Each one is verified to be an actual nearest point
    of the perimeter, and the two projection sets must have equal size, so
    the pairing is a checked bijection.
    """
    tol = scene.tol if tol is None else tol
    zd = dist_to_obstacles(scene, r, tol)
    if zd.distance <= scene.d0 + tol:
        raise ValueError("correspondence needs an exterior query point")
    if zd.degenerate:
        raise ValueError("correspondence undefined on a degenerate "
                         "(infinitely many projections) query")
    zp = perimeter.chain.project(r, tol)
    pairs = []
    for sp in zd.projections:
        direction = (r - sp.point).unit()
        q = sp.point + direction * scene.d0
        dq = perimeter.chain.project(q, tol)
        if dq.distance > 10.0 * tol:
            raise ConsistencyError(
                "mapped point misses the perimeter by "
                f"{dq.distance:.3g} at ({q.x:.6g}, {q.y:.6g})")
        if not dq.projections:
            raise ConsistencyError("mapped point has no perimeter parameter")
        pr = dq.projections[0]
        s = perimeter.chain.chain_param(pr.seg_index, pr.t)
        if abs(r.dist(q) - zp.distance) > 10.0 * tol:
            raise ConsistencyError(
                "mapped point is not a nearest perimeter point: "
                f"{r.dist(q):.12g} vs {zp.distance:.12g}")
        pairs.append(CorrespondencePair(sp, q, s))
    if len(pairs) != len(zp.projections):
        raise ConsistencyError(
            f"projection counts differ: {len(pairs)} material vs "
            f"{len(zp.projections)} perimeter")
    return pairs


@dataclass(frozen=True)
class RateResult:
    """Directional rate of the material distance along a velocity.

    rates holds one entry per nearest point. The distance field is a min
    over boundary points, so the forward derivative is the smallest rate
    and the backward derivative the largest; [lo, hi] brackets both. value
    is the common rate when all entries agree within tolerance, else None.
    """

    rates: tuple[float, ...]
    lo: float
    hi: float
    value: float | None


def distance_rate(scene: "Scene", r: Vec2, velocity: Vec2,
                  tol: float | None = None) -> RateResult:
    tol = scene.tol if tol is None else tol
    zd = dist_to_obstacles(scene, r, tol)
    if zd.distance <= tol:
        raise ValueError("rate undefined on the material boundary")
    rates = []
    for sp in zd.projections:
        away = (r - sp.point) * (1.0 / r.dist(sp.point))
        rates.append(velocity.dot(away))
    for _, da in zd.degenerate:
        # Every point of the arc is nearest; its center is r itself only
        # when r coincides with it, otherwise rates span an interval.
        for frac in (0.0, 0.5, 1.0):
            ang = da.start_angle + da.sweep * frac
            p = da.center + Vec2.polar(da.radius, ang)
            away = (r - p) * (1.0 / r.dist(p))
            rates.append(velocity.dot(away))
    lo, hi = min(rates), max(rates)
    rate_tol = 1e-9 * max(1.0, velocity.norm())
    value = lo if hi - lo <= rate_tol else None
    return RateResult(tuple(rates), lo, hi, value)
