"""Enumeration of degenerate offset distances.

A clearance value is degenerate when the equidistant set at that value
fails to be a finite union of clean loops: an offset arc collapses to a
point (a concave boundary arc reaches its own radius), a whole continuum
of points shares multiple nearest boundary points (facing parallel walls,
concentric facing arcs, material at an arc's focus), or a free bridge of
exactly twice the value connects two boundary features along a mutual
normal. The enumeration is conservative: everything listed is a candidate,
and a candidate may be harmless, but a value matching no candidate is
guaranteed clean. Validation refuses candidate values outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .geometry import Arc, CurveChain, Line, Vec2, intersect

if TYPE_CHECKING:
    from .scene import Scene

CASE_COLLAPSE = "degenerate-concave-offset"
CASE_LOCUS = "multi-projection-locus"
CASE_BRIDGE = "free-bridge"


@dataclass(frozen=True)
class BizarreCandidate:
    value: float
    cases: tuple[str, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class BizarreVerdict:
    bizarre: bool
    matches: tuple[tuple[str, float], ...]

    def to_json(self) -> dict:
        return {"bizarre": self.bizarre,
                "matches": [{"case": c, "value": v} for c, v in self.matches]}


def enumerate_bizarre(scene: "Scene") -> tuple[BizarreCandidate, ...]:
    """All candidate degenerate clearances of the scene, ascending."""
    raw: list[tuple[float, str, str]] = []
    raw.extend(_collapse_candidates(scene))
    raw.extend(_locus_candidates(scene))
    raw.extend(_bridge_candidates(scene))
    merge_tol = 10.0 * scene.tol
    raw.sort(key=lambda c: c[0])
    out: list[BizarreCandidate] = []
    for value, case, note in raw:
        if value <= merge_tol:
            continue
        if out and value - out[-1].value <= merge_tol:
            prev = out[-1]
            cases = prev.cases if case in prev.cases else prev.cases + (case,)
            notes = prev.notes if note in prev.notes else prev.notes + (note,)
            out[-1] = BizarreCandidate(prev.value, cases, notes)
        else:
            out.append(BizarreCandidate(value, (case,), (note,)))
    return tuple(out)


def is_bizarre(scene: "Scene", d_star: float) -> BizarreVerdict:
    """Does d_star coincide with any candidate degenerate clearance?"""
    match_tol = max(50.0 * scene.tol, 1e-12 * max(1.0, abs(d_star)))
    matches = []
    for cand in enumerate_bizarre(scene):
        if abs(cand.value - d_star) <= match_tol:
            for case in cand.cases:
                matches.append((case, cand.value))
    return BizarreVerdict(bool(matches), tuple(matches))


# ---------------------------------------------------------------------------
# Feature gathering


def _features(scene: "Scene"):
    """Split the scene into endpoint features and smooth pieces.

    Endpoint features are isolated points and tangent-discontinuous loop
    vertices, where a bridge needs no perpendicularity.
    """
    from .scene import LoopObstacle, PointObstacle
    points: list[Vec2] = []
    lines: list[Line] = []
    arcs: list[Arc] = []
    for i, ob in enumerate(scene.obstacles):
        if isinstance(ob, PointObstacle):
            points.append(ob.point)
            continue
        chain = ob.boundary
        for seg in chain.segments:
            if isinstance(seg, Line):
                lines.append(seg)
            else:
                arcs.append(seg)
        for s, turn in chain.joints():
            if abs(turn) > scene.config.angle_tol:
                idx, _ = chain.locate(s)
                points.append(chain.segments[idx].point_at(0.0))
    return points, lines, arcs


def _collapse_candidates(scene: "Scene"):
    _, _, arcs = _features(scene)
    for arc in arcs:
        if arc.sweep < 0:
            yield (arc.radius, CASE_COLLAPSE,
                   f"concave arc of radius {arc.radius:.9g} collapses")


def _locus_candidates(scene: "Scene"):
    points, lines, arcs = _features(scene)
    ang_tol = scene.config.angle_tol
    for arc in arcs:
        if arc.sweep < 0:
            yield (arc.radius / 2.0, CASE_LOCUS,
                   "focal midway circle of a concave arc")
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            g = _facing_gap(lines[i], lines[j], ang_tol, scene.tol)
            if g is not None:
                yield (g / 2.0, CASE_LOCUS,
                       f"facing parallel walls at gap {g:.9g}")
    for i in range(len(arcs)):
        for j in range(len(arcs)):
            if i == j:
                continue
            a, b = arcs[i], arcs[j]
            if (a.center.dist(b.center) <= scene.tol and a.sweep > 0
                    and b.sweep < 0 and b.radius > a.radius
                    and _angular_overlap(a, b)):
                yield ((b.radius - a.radius) / 2.0, CASE_LOCUS,
                       f"concentric facing arcs at gap {b.radius - a.radius:.9g}")


def _facing_gap(l1: Line, l2: Line, ang_tol: float, tol: float):
    """Perpendicular gap of two antiparallel, mutually facing, overlapping
    wall pieces; None when the configuration does not occur."""
    d1, d2 = l1.direction, l2.direction
    if abs(d1.cross(d2)) > ang_tol or d1.dot(d2) > 0:
        return None
    # Free sides (minus left normal) must point at each other.
    n1 = d1.perp()
    g = (l2.a - l1.a).dot(n1 * (-1.0))
    if g <= tol:
        return None
    # Shadow overlap along l1.
    lo = min((l2.a - l1.a).dot(d1), (l2.b - l1.a).dot(d1))
    hi = max((l2.a - l1.a).dot(d1), (l2.b - l1.a).dot(d1))
    if min(l1.length, hi) - max(0.0, lo) <= tol:
        return None
    return g


def _angular_overlap(a: Arc, b: Arc) -> bool:
    k = 16
    for i in range(k + 1):
        phi = a.start_angle + a.sweep * i / k
        if b.param_of_angle(phi, 1e-9) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# Bridges


def _bridge_candidates(scene: "Scene"):
    points, lines, arcs = _features(scene)
    tol = scene.tol

    def emit(p: Vec2, q: Vec2, note: str):
        length = p.dist(q)
        if length <= 20.0 * tol:
            return None
        if not _segment_free(scene, p, q):
            return None
        return (length / 2.0, CASE_BRIDGE, note)

    found = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            c = emit(points[i], points[j], "between two boundary vertices")
            if c:
                found.append(c)
    for p in points:
        for line in lines:
            t = (p - line.a).dot(line.direction)
            if 10.0 * tol < t < line.length - 10.0 * tol:
                c = emit(p, line.point_at(t), "vertex to wall foot")
                if c:
                    found.append(c)
        for arc in arcs:
            if p.dist(arc.center) <= 10.0 * tol:
                continue
            u = (p - arc.center).unit()
            for sgn, tag in ((1.0, "near"), (-1.0, "far")):
                foot = arc.center + u * (sgn * arc.radius)
                if arc.param_of_angle((foot - arc.center).angle(),
                                      tol / arc.radius) is None:
                    continue
                c = emit(p, foot, f"vertex to {tag} arc foot")
                if c:
                    found.append(c)
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            g = _facing_gap(lines[i], lines[j], scene.config.angle_tol, tol)
            if g is None:
                continue
            mid = _mid_connector(lines[i], lines[j])
            if mid is not None:
                c = emit(mid[0], mid[1], "common normal of facing walls")
                if c:
                    found.append(c)
    for line in lines:
        for arc in arcs:
            t = (arc.center - line.a).dot(line.direction)
            if not (10.0 * tol < t < line.length - 10.0 * tol):
                continue
            f = line.point_at(t)
            if f.dist(arc.center) <= 10.0 * tol:
                continue
            w = (f - arc.center).unit()
            for sgn, tag in ((1.0, "near"), (-1.0, "far")):
                foot = arc.center + w * (sgn * arc.radius)
                if arc.param_of_angle((foot - arc.center).angle(),
                                      tol / arc.radius) is None:
                    continue
                c = emit(f, foot, f"wall foot to {tag} arc foot")
                if c:
                    found.append(c)
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            found.extend(_arc_arc_bridges(scene, arcs[i], arcs[j], emit))
    for arc in arcs:
        if arc.sweep <= -math.pi:
            # A concave arc spanning a half turn carries free diameters.
            phi = arc.start_angle + arc.sweep / 2.0
            p = arc.center + Vec2.polar(arc.radius, phi)
            q = arc.center - Vec2.polar(arc.radius, phi)
            c = emit(p, q, "diameter of a wide concave arc")
            if c:
                found.append(c)
    return found


def _mid_connector(l1: Line, l2: Line):
    d1 = l1.direction
    lo = max(0.0, min((l2.a - l1.a).dot(d1), (l2.b - l1.a).dot(d1)))
    hi = min(l1.length, max((l2.a - l1.a).dot(d1), (l2.b - l1.a).dot(d1)))
    if hi <= lo:
        return None
    p = l1.point_at(0.5 * (lo + hi))
    t2 = (p - l2.a).dot(l2.direction)
    t2 = min(max(t2, 0.0), l2.length)
    return p, l2.point_at(t2)


def _arc_arc_bridges(scene: "Scene", a: Arc, b: Arc, emit):
    tol = scene.tol
    found = []
    dc = b.center.dist(a.center)
    if dc <= tol:
        # Concentric: radial connectors, one representative per overlap.
        if abs(a.radius - b.radius) <= tol:
            return found
        inner, outer = (a, b) if a.radius < b.radius else (b, a)
        k = 32
        for i in range(k + 1):
            phi = inner.start_angle + inner.sweep * i / k
            if outer.param_of_angle(phi, tol / outer.radius) is None:
                continue
            p = inner.center + Vec2.polar(inner.radius, phi)
            q = outer.center + Vec2.polar(outer.radius, phi)
            c = emit(p, q, "radial connector of concentric arcs")
            if c:
                found.append(c)
                break
        return found
    u = (b.center - a.center) * (1.0 / dc)
    for sa in (1.0, -1.0):
        p = a.center + u * (sa * a.radius)
        if a.param_of_angle((p - a.center).angle(), tol / a.radius) is None:
            continue
        for sb in (1.0, -1.0):
            q = b.center + u * (sb * b.radius)
            if b.param_of_angle((q - b.center).angle(), tol / b.radius) is None:
                continue
            c = emit(p, q, "center-line connector of two arcs")
            if c:
                found.append(c)
    return found


def _segment_free(scene: "Scene", p: Vec2, q: Vec2) -> bool:
    """Open segment strictly inside free space (boundary endpoints allowed)."""
    from .scene import LoopObstacle, PointObstacle
    tol = scene.tol
    u = (q - p).unit()
    length = p.dist(q)
    p2 = p + u * (10.0 * tol)
    q2 = q - u * (10.0 * tol)
    probe = Line(p2, q2)
    for ob in scene.obstacles:
        if isinstance(ob, PointObstacle):
            hits, _ = probe.project(ob.point)
            if hits[0][0] <= tol:
                return False
            continue
        for seg in ob.boundary.segments:
            xs = intersect(probe, seg, tol)
            if not xs.empty:
                return False
    for frac in (0.25, 0.5, 0.75):
        if scene.point_in_material(p + u * (frac * length), tol):
            return False
    return True
