"""Scene description, JSON round-trip, and assumption checking.

A scene is a finite set of disjoint obstacles (isolated points and loops
bounded by line/arc segments, each loop carrying its material on the inside
or the outside), the clearance and fence radii, and the robot's initial
pose. Loaded loop chains are canonicalized so material sits on the left of
the traversal, which the rest of the package assumes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Union

from .config import Config, fmt_float, load_config
from .errors import SceneError
from .geometry import (CurveChain, Vec2, _require_keys, segment_from_json)

if TYPE_CHECKING:
    from .fences import ErosionSet


@dataclass(frozen=True)
class PointObstacle:
    point: Vec2

    def to_json(self) -> dict:
        return {"type": "point", "x": self.point.x, "y": self.point.y}


@dataclass(frozen=True)
class LoopObstacle:
    boundary: CurveChain
    material: str  # "interior" or "exterior"

    def to_json(self) -> dict:
        return {"type": "loop", "material": self.material,
                "segments": [s.to_json() for s in self.boundary.segments]}


Obstacle = Union[PointObstacle, LoopObstacle]


def _round_tree(obj, digits: int):
    """Apply the significant-digit policy to every float in a JSON tree."""
    if isinstance(obj, float):
        return fmt_float(obj, digits)
    if isinstance(obj, dict):
        return {k: _round_tree(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v, digits) for v in obj]
    return obj


@dataclass(frozen=True)
class Scene:
    obstacles: tuple[Obstacle, ...]
    d0: float
    r_min: float
    r_op: float
    r_fence: float
    v: float
    r_in: Vec2
    theta_in: float
    config: Config = field(default_factory=load_config)

    @cached_property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox()
        x0, y0 = min(x0, self.r_in.x), min(y0, self.r_in.y)
        x1, y1 = max(x1, self.r_in.x), max(y1, self.r_in.y)
        return math.hypot(x1 - x0, y1 - y0)

    @property
    def tol(self) -> float:
        return self.config.tol_rel * self.diameter

    @property
    def join_tol(self) -> float:
        return self.config.join_rel * self.diameter

    def bbox(self) -> tuple[float, float, float, float]:
        xs0, ys0, xs1, ys1 = [], [], [], []
        for ob in self.obstacles:
            if isinstance(ob, PointObstacle):
                b = (ob.point.x, ob.point.y, ob.point.x, ob.point.y)
            else:
                b = ob.boundary.bbox()
            xs0.append(b[0]); ys0.append(b[1]); xs1.append(b[2]); ys1.append(b[3])
        return (min(xs0), min(ys0), max(xs1), max(ys1))

    def exterior_obstacle(self) -> int | None:
        """Index of the room wall (exterior-material loop), if any."""
        for i, ob in enumerate(self.obstacles):
            if isinstance(ob, LoopObstacle) and ob.material == "exterior":
                return i
        return None

    def point_in_material(self, p: Vec2, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        for ob in self.obstacles:
            if isinstance(ob, PointObstacle):
                if p.dist(ob.point) <= tol:
                    return True
                continue
            side = ob.boundary.side_of(p, tol)
            if side == "on-boundary":
                return True
            if ob.material == "interior" and side == "inside":
                return True
            if ob.material == "exterior" and side == "outside":
                return True
        return False

    def to_json(self) -> dict:
        digits = self.config.json_digits
        f = lambda x: fmt_float(x, digits)
        doc = {
            "params": {"d0": f(self.d0), "r_min": f(self.r_min),
                       "r_op": f(self.r_op), "r_fence": f(self.r_fence),
                       "v": f(self.v)},
            "robot": {"x": f(self.r_in.x), "y": f(self.r_in.y),
                      "theta": f(self.theta_in)},
            "obstacles": [ob.to_json() for ob in self.obstacles],
        }
        return _round_tree(doc, digits)

    @staticmethod
    def from_json(obj: dict, config: Config | None = None) -> "Scene":
        config = config or load_config()
        try:
            return _scene_from_json(obj, config)
        except (KeyError, TypeError, ValueError) as exc:
            raise SceneError("malformed-scene", str(exc)) from exc

    @staticmethod
    def from_file(path: str, config: Config | None = None) -> "Scene":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SceneError("malformed-scene", f"not valid JSON: {exc}") from exc
        return Scene.from_json(obj, config)


def _scene_from_json(obj: dict, config: Config) -> Scene:
    _require_keys(obj, {"params", "robot", "obstacles"}, "scene")
    params = obj["params"]
    _require_keys(params, {"d0", "r_min", "r_op", "r_fence", "v"}, "params")
    robot = obj["robot"]
    _require_keys(robot, {"x", "y", "theta"}, "robot")
    obstacles = []
    for k, item in enumerate(obj["obstacles"]):
        typ = item.get("type")
        if typ == "point":
            _require_keys(item, {"type", "x", "y"}, f"obstacle {k}")
            obstacles.append(PointObstacle(Vec2(float(item["x"]), float(item["y"]))))
        elif typ == "loop":
            _require_keys(item, {"type", "material", "segments"}, f"obstacle {k}")
            material = item["material"]
            if material not in ("interior", "exterior"):
                raise ValueError(f"obstacle {k}: bad material {material!r}")
            segs = [segment_from_json(s) for s in item["segments"]]
            chain = CurveChain(tuple(segs), closed=True)
            obstacles.append(LoopObstacle(_canonical(chain, material), material))
        else:
            raise ValueError(f"obstacle {k}: unknown type {typ!r}")
    return Scene(
        obstacles=tuple(obstacles),
        d0=float(params["d0"]),
        r_min=float(params["r_min"]),
        r_op=float(params["r_op"]),
        r_fence=float(params["r_fence"]),
        v=float(params.get("v", 1.0)),
        r_in=Vec2(float(robot["x"]), float(robot["y"])),
        theta_in=float(robot["theta"]),
        config=config,
    )


def _canonical(chain: CurveChain, material: str) -> CurveChain:
    """Reorient a loop so its material lies on the left of traversal.

    Interior material wants a counterclockwise loop, exterior a clockwise
    one. Input orientation is accepted either way.
    """
    want = "ccw" if material == "interior" else "cw"
    return chain if chain.orientation() == want else chain.reversed()


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class CheckItem:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "detail": self.detail}
        if isinstance(self.witness, Vec2):
            out["witness"] = [self.witness.x, self.witness.y]
        elif self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def validate(scene: Scene) -> ValidationReport:
    """Structural and assumption checks; collects every failure, raises none."""
    checks: list[CheckItem] = []

    def add(name, ok, detail="", witness=None):
        checks.append(CheckItem(name, bool(ok), detail, witness))

    p_ok = all(x > 0 for x in (scene.d0, scene.r_min, scene.r_op,
                               scene.r_fence, scene.v))
    add("params-positive", p_ok, "" if p_ok else "all radii and speed must be > 0")

    order_ok = scene.r_min < scene.r_op < scene.d0
    add("radius-order", order_ok,
        "" if order_ok else
        f"need r_min < r_op < d0, got {scene.r_min} / {scene.r_op} / {scene.d0}")
    add("fence-radius", scene.r_fence >= scene.r_op,
        "" if scene.r_fence >= scene.r_op else
        f"fence radius {scene.r_fence} below operational radius {scene.r_op}")

    add("obstacles-nonempty", len(scene.obstacles) > 0,
        "" if scene.obstacles else "scene has no obstacles")
    if not scene.obstacles:
        return ValidationReport(tuple(checks))

    tol = scene.tol
    for i, ob in enumerate(scene.obstacles):
        if isinstance(ob, PointObstacle):
            continue
        issues = ob.boundary.check_connected(tol)
        add(f"loop-{i}-closed", not issues, "; ".join(issues))
        self_x = _self_intersections(ob.boundary, tol)
        add(f"loop-{i}-simple", not self_x,
            "" if not self_x else f"boundary self-intersects near {self_x[0]}",
            self_x[0] if self_x else None)

    ext = scene.exterior_obstacle()
    n_ext = sum(1 for ob in scene.obstacles
                if isinstance(ob, LoopObstacle) and ob.material == "exterior")
    add("single-room-wall", n_ext <= 1,
        "" if n_ext <= 1 else f"{n_ext} exterior-material loops")

    bad_pair = _overlapping_obstacles(scene, tol)
    add("obstacles-disjoint", bad_pair is None,
        "" if bad_pair is None else
        f"obstacles {bad_pair[0]} and {bad_pair[1]} touch or overlap near {bad_pair[2]}",
        bad_pair[2] if bad_pair else None)

    if ext is not None:
        wall = scene.obstacles[ext].boundary
        outside = [i for i, ob in enumerate(scene.obstacles) if i != ext
                   and wall.side_of(_rep_point(ob), tol) != "inside"]
        add("room-contains-all", not outside,
            "" if not outside else f"obstacles {outside} outside the room wall")

    try:
        from .bizarre import is_bizarre
        for label, d in (("clearance", scene.d0),
                         ("clearance+operational", scene.d0 + scene.r_op),
                         ("clearance+fence", scene.d0 + scene.r_fence)):
            verdict = is_bizarre(scene, d)
            add(f"{label}-distance-regular", not verdict.bizarre,
                "" if not verdict.bizarre else
                f"d = {d:.12g} matches candidate {verdict.matches[0][1]:.12g} "
                f"({verdict.matches[0][0]})")
    except SceneError as exc:
        add("distance-regularity", False, f"could not screen distances: {exc}")

    from .distance import dist_to_obstacles
    if scene.point_in_material(scene.r_in, tol):
        add("robot-in-free-space", False, "initial location inside material",
            scene.r_in)
    else:
        z = dist_to_obstacles(scene, scene.r_in).distance
        add("robot-in-free-space", z > scene.d0 + tol,
            "" if z > scene.d0 + tol else
            f"initial clearance {z:.6g} not above d0 = {scene.d0}", scene.r_in)

    return ValidationReport(tuple(checks))


def _rep_point(ob: Obstacle) -> Vec2:
    if isinstance(ob, PointObstacle):
        return ob.point
    return ob.boundary.start()


def _self_intersections(chain: CurveChain, tol: float) -> list[Vec2]:
    """Crossings of a closed chain with itself, joints excluded."""
    from .geometry import intersect
    segs = chain.segments
    n = len(segs)
    found = []
    for i in range(n):
        for j in range(i + 1, n):
            adjacent_fwd = (j == i + 1)
            adjacent_wrap = (i == 0 and j == n - 1)
            xs = intersect(segs[i], segs[j], tol)
            for hit in xs.points:
                if adjacent_fwd and hit.t1 >= segs[i].length - tol and hit.t2 <= tol:
                    continue
                if adjacent_wrap and hit.t2 >= segs[j].length - tol and hit.t1 <= tol:
                    continue
                found.append(hit.point)
            for ov in xs.overlaps:
                found.append(segs[i].point_at(0.5 * (ov.t1_lo + ov.t1_hi)))
    return found


def _overlapping_obstacles(scene: Scene, tol: float):
    """First pair of obstacles that touch, cross, or contain one another."""
    from .geometry import intersect
    obs = scene.obstacles
    for i in range(len(obs)):
        for j in range(i + 1, len(obs)):
            a, b = obs[i], obs[j]
            pa, pb = isinstance(a, PointObstacle), isinstance(b, PointObstacle)
            if pa and pb:
                if a.point.dist(b.point) <= tol:
                    return (i, j, a.point)
                continue
            if pa or pb:
                pt = a.point if pa else b.point
                loop = (b if pa else a)
                side = loop.boundary.side_of(pt, tol)
                in_material = (side == "on-boundary"
                               or (loop.material == "interior" and side == "inside")
                               or (loop.material == "exterior" and side == "outside"))
                if in_material:
                    return (i, j, pt)
                continue
            for sa in a.boundary.segments:
                for sb in b.boundary.segments:
                    xs = intersect(sa, sb, tol)
                    if not xs.empty:
                        w = (xs.points[0].point if xs.points
                             else sa.point_at(xs.overlaps[0].t1_lo))
                        return (i, j, w)
            # No boundary crossing: material containment still possible.
            if _materials_nested(a, b, tol) or _materials_nested(b, a, tol):
                return (i, j, _rep_point(a))
    return None


def _materials_nested(a: LoopObstacle, b: LoopObstacle, tol: float) -> bool:
    """True if a's boundary lies in b's material (disjoint boundaries assumed)."""
    p = a.boundary.start()
    side = b.boundary.side_of(p, tol)
    if b.material == "interior":
        return side == "inside"
    return side == "outside"


# ---------------------------------------------------------------------------
# Initial clearance (launch feasibility next to the fence radius)


@dataclass(frozen=True)
class ClearanceReport:
    ok: bool
    reason: str
    component_id: int | None = None
    witness: Vec2 | None = None

    def to_json(self) -> dict:
        out = {"ok": self.ok, "reason": self.reason}
        if self.component_id is not None:
            out["component_id"] = self.component_id
        if self.witness is not None:
            out["witness"] = [self.witness.x, self.witness.y]
        return out


def check_initial_clearance(scene: Scene, perimeter) -> ClearanceReport:
    """Certify the launch condition for the fence radius.

    The fence radius must exceed the robot's starting distance to the outer
    perimeter by three turning radii, and both minimum-turn side circles of
    the initial pose must sit strictly within distance R of a single eroded
    component. Sampling plus the 1-Lipschitz property of the distance makes
    the positive verdict a certificate rather than a spot check.
    """
    from .distance import dist_to_perimeter
    from .fences import compute_erosion

    R = scene.r_fence
    z = dist_to_perimeter(scene, perimeter, scene.r_in).distance
    margin = R - z - 3.0 * scene.r_min
    if margin <= scene.tol:
        return ClearanceReport(
            False,
            f"fence radius {R:.6g} must exceed start-to-perimeter distance "
            f"{z:.6g} plus three turning radii {3 * scene.r_min:.6g}",
            witness=scene.r_in)

    erosion = compute_erosion(scene, perimeter, R)
    if not erosion.components:
        return ClearanceReport(False,
                               f"no free region survives erosion by {R:.6g}")

    heading = Vec2.polar(1.0, scene.theta_in)
    side = heading.perp()
    n_samples = 2048
    lipschitz_pad = (2.0 * math.pi * scene.r_min) / n_samples / 2.0
    circles = []
    for sign in (1.0, -1.0):
        c = scene.r_in + side * (sign * scene.r_min)
        circles.append([c + Vec2.polar(scene.r_min,
                                       2.0 * math.pi * k / n_samples)
                        for k in range(n_samples)])

    def worst_sample(comp, pts):
        """Max certified distance from the eroded component over pts."""
        worst, at = -math.inf, pts[0]
        for q in pts:
            if comp.region_contains(q):
                d = 0.0
            else:
                d = comp.chain.project(q, scene.tol).distance
            d += lipschitz_pad
            if d > worst:
                worst, at = d, q
        return worst, at

    best_fail = (math.inf, None)
    for idx, comp in enumerate(erosion.components):
        w = -math.inf
        at = None
        for pts in circles:
            wi, qi = worst_sample(comp, pts)
            if wi > w:
                w, at = wi, qi
        if w < R:
            return ClearanceReport(True,
                                   "initial pose clears the launch condition",
                                   component_id=idx)
        if w < best_fail[0]:
            best_fail = (w, at)
    return ClearanceReport(
        False,
        "no single eroded component keeps both initial turning circles "
        f"within distance {R:.6g} (closest miss {best_fail[0]:.6g})",
        witness=best_fail[1])
