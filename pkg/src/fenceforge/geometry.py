"""Planar geometry kernel: vectors, line/arc segments, chains, queries.

Conventions used throughout the package:

* Angles are radians, measured counterclockwise from +x.
* Arc sweep is signed, positive counterclockwise, with 0 < |sweep| <= 2*pi.
* Arc-length parameters run from 0 at a segment's start to its length.
* The Frenet normal is the tangent rotated +90 degrees. Chains that bound
  material keep the material on the LEFT of the traversal direction, so the
  normal points into the material and "away from material" is -normal.
* Signed curvature of an arc is sign(sweep)/radius; lines have curvature 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

TAU = 2.0 * math.pi


def wrap_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(a, TAU)
    if a > math.pi:
        a -= TAU
    elif a <= -math.pi:
        a += TAU
    return a


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def dot(self, o: "Vec2") -> float:
        return self.x * o.x + self.y * o.y

    def cross(self, o: "Vec2") -> float:
        return self.x * o.y - self.y * o.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y

    def unit(self) -> "Vec2":
        n = self.norm()
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return Vec2(self.x / n, self.y / n)

    def perp(self) -> "Vec2":
        """Rotate +90 degrees."""
        return Vec2(-self.y, self.x)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def rotated(self, a: float) -> "Vec2":
        c, s = math.cos(a), math.sin(a)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)

    def dist(self, o: "Vec2") -> float:
        return math.hypot(self.x - o.x, self.y - o.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    @staticmethod
    def polar(r: float, a: float) -> "Vec2":
        return Vec2(r * math.cos(a), r * math.sin(a))


def unit_dir(a: float) -> Vec2:
    return Vec2(math.cos(a), math.sin(a))


def signed_angle(u: Vec2, v: Vec2) -> float:
    """Rotation taking direction u to direction v, in (-pi, pi]."""
    return math.atan2(u.cross(v), u.dot(v))


@dataclass(frozen=True)
class FrenetFrame:
    point: Vec2
    tangent: Vec2
    normal: Vec2
    curvature: float


@dataclass(frozen=True)
class FramePair:
    """One-sided frames at a chain parameter.

    At smooth points minus and plus agree. At a joint between segments the
    turn is the signed angle from the incoming to the outgoing tangent
    (positive = left turn).
    """

    minus: FrenetFrame
    plus: FrenetFrame
    turn: float

    @property
    def smooth(self) -> bool:
        return abs(self.turn) < 1e-12 and self.minus.curvature == self.plus.curvature


@dataclass(frozen=True)
class Projection:
    """One nearest point: where it is and which piece of geometry owns it."""

    point: Vec2
    seg_index: int
    t: float


@dataclass(frozen=True)
class DegenerateArc:
    """A continuum of equidistant nearest points (query at an arc's center)."""

    center: Vec2
    radius: float
    start_angle: float
    sweep: float
    seg_index: int


@dataclass(frozen=True)
class DistanceResult:
    distance: float
    projections: tuple[Projection, ...]
    degenerate: tuple[DegenerateArc, ...] = ()

    @property
    def multiple(self) -> bool:
        return len(self.projections) + 2 * len(self.degenerate) > 1

    def closest(self) -> Vec2:
        if self.projections:
            return self.projections[0].point
        da = self.degenerate[0]
        return da.center + Vec2.polar(da.radius, da.start_angle)


# ---------------------------------------------------------------------------
# Segments


@dataclass(frozen=True)
class Line:
    a: Vec2
    b: Vec2

    kind = "line"
    curvature = 0.0

    @cached_property
    def length(self) -> float:
        return self.a.dist(self.b)

    @cached_property
    def direction(self) -> Vec2:
        return (self.b - self.a).unit()

    def point_at(self, t: float) -> Vec2:
        return self.a + self.direction * t

    def tangent_at(self, t: float) -> Vec2:
        return self.direction

    def sub(self, t0: float, t1: float) -> "Line":
        return Line(self.point_at(t0), self.point_at(t1))

    def reversed(self) -> "Line":
        return Line(self.b, self.a)

    def translated(self, dv: Vec2) -> "Line":
        return Line(self.a + dv, self.b + dv)

    def bbox(self) -> tuple[float, float, float, float]:
        return (min(self.a.x, self.b.x), min(self.a.y, self.b.y),
                max(self.a.x, self.b.x), max(self.a.y, self.b.y))

    def project(self, r: Vec2):
        t = (r - self.a).dot(self.direction)
        t = min(max(t, 0.0), self.length)
        p = self.point_at(t)
        return [(r.dist(p), t, p)], []

    def sample(self, spacing: float) -> np.ndarray:
        n = max(2, int(math.ceil(self.length / spacing)) + 1)
        ts = np.linspace(0.0, 1.0, n)
        ax, ay = self.a.x, self.a.y
        return np.column_stack((ax + ts * (self.b.x - ax), ay + ts * (self.b.y - ay)))

    def to_json(self) -> dict:
        return {"kind": "line", "a": [self.a.x, self.a.y], "b": [self.b.x, self.b.y]}


@dataclass(frozen=True)
class Arc:
    center: Vec2
    radius: float
    start_angle: float
    sweep: float

    kind = "arc"

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("arc radius must be positive")
        if not (0.0 < abs(self.sweep) <= TAU + 1e-12):
            raise ValueError("arc sweep must be nonzero with |sweep| <= 2*pi")

    @cached_property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    @property
    def curvature(self) -> float:
        return math.copysign(1.0, self.sweep) / self.radius

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.sweep

    def angle_at(self, t: float) -> float:
        return self.start_angle + self.sweep * (t / self.length)

    def point_at(self, t: float) -> Vec2:
        return self.center + Vec2.polar(self.radius, self.angle_at(t))

    def tangent_at(self, t: float) -> Vec2:
        return unit_dir(self.angle_at(t) + math.copysign(math.pi / 2.0, self.sweep))

    def param_of_angle(self, phi: float, atol: float = 1e-12):
        """Arc-length parameter whose position angle is phi, or None.

        The tolerance is angular and lets hits exactly at the ends register.
        """
        if self.sweep > 0:
            u = (phi - self.start_angle) % TAU
            if u <= self.sweep + atol:
                return min(u, abs(self.sweep)) * self.radius
            if u - TAU >= -atol:
                return 0.0
        else:
            u = -((self.start_angle - phi) % TAU)
            if u >= self.sweep - atol:
                return min(-u, abs(self.sweep)) * self.radius
            if u + TAU <= atol:
                return 0.0
        return None

    def sub(self, t0: float, t1: float) -> "Arc":
        f0, f1 = t0 / self.length, t1 / self.length
        return Arc(self.center, self.radius, self.angle_at(t0), self.sweep * (f1 - f0))

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.end_angle, -self.sweep)

    def bbox(self) -> tuple[float, float, float, float]:
        pts = [self.point_at(0.0), self.point_at(self.length)]
        for k in range(-4, 5):
            phi = k * math.pi / 2.0
            t = self.param_of_angle(phi)
            if t is not None:
                pts.append(self.point_at(t))
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return (min(xs) , min(ys), max(xs), max(ys))

    def project(self, r: Vec2):
        d = r - self.center
        n = d.norm()
        if n < 1e-13 * self.radius:
            # Query at the center: the whole arc is equidistant.
            return [], [(self.radius, self)]
        hits = []
        t = self.param_of_angle(d.angle())
        if t is not None:
            p = self.point_at(t)
            hits.append((r.dist(p), t, p))
        for t_end in (0.0, self.length):
            p = self.point_at(t_end)
            hits.append((r.dist(p), t_end, p))
        return hits, []

    def sample(self, spacing: float) -> np.ndarray:
        n = max(2, int(math.ceil(self.length / spacing)) + 1)
        ang = self.start_angle + self.sweep * np.linspace(0.0, 1.0, n)
        return np.column_stack((self.center.x + self.radius * np.cos(ang),
                                self.center.y + self.radius * np.sin(ang)))

    def to_json(self) -> dict:
        return {"kind": "arc", "center": [self.center.x, self.center.y],
                "radius": self.radius, "start_angle": self.start_angle,
                "sweep": self.sweep}


Segment = Union[Line, Arc]


def segment_from_json(obj: dict) -> Segment:
    kind = obj.get("kind")
    if kind == "line":
        _require_keys(obj, {"kind", "a", "b"}, "line segment")
        return Line(Vec2(*map(float, obj["a"])), Vec2(*map(float, obj["b"])))
    if kind == "arc":
        _require_keys(obj, {"kind", "center", "radius", "start_angle", "sweep"},
                      "arc segment")
        return Arc(Vec2(*map(float, obj["center"])), float(obj["radius"]),
                   float(obj["start_angle"]), float(obj["sweep"]))
    raise ValueError(f"unknown segment kind {kind!r}")


def _require_keys(obj: dict, allowed: set, what: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ValueError(f"unknown keys in {what}: {', '.join(extra)}")


# ---------------------------------------------------------------------------
# Segment intersection


@dataclass(frozen=True)
class Hit:
    point: Vec2
    t1: float
    t2: float


@dataclass(frozen=True)
class Overlap:
    """A shared stretch of two segments, as parameter ranges on each."""

    t1_lo: float
    t1_hi: float
    t2_lo: float
    t2_hi: float


@dataclass(frozen=True)
class IntersectionSet:
    points: tuple[Hit, ...]
    overlaps: tuple[Overlap, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.points and not self.overlaps


def intersect(seg1: Segment, seg2: Segment, tol: float = 1e-9) -> IntersectionSet:
    """All intersections of two segments, with parameters on both.

    Transverse crossings and touch points come back as Hits; collinear or
    cocircular shared stretches come back as Overlaps. tol is a length.
    """
    if isinstance(seg1, Line) and isinstance(seg2, Line):
        return _line_line(seg1, seg2, tol)
    if isinstance(seg1, Line) and isinstance(seg2, Arc):
        return _line_arc(seg1, seg2, tol, swap=False)
    if isinstance(seg1, Arc) and isinstance(seg2, Line):
        return _line_arc(seg2, seg1, tol, swap=True)
    return _arc_arc(seg1, seg2, tol)


def _in_range(t: float, length: float, tol: float):
    if -tol <= t <= length + tol:
        return min(max(t, 0.0), length)
    return None


def _line_line(s1: Line, s2: Line, tol: float) -> IntersectionSet:
    d1, d2 = s1.b - s1.a, s2.b - s2.a
    denom = d1.cross(d2)
    rhs = s2.a - s1.a
    if abs(denom) <= tol * max(s1.length, s2.length):
        # Parallel. Collinear iff s2.a sits on the carrier of s1.
        if abs(d1.unit().cross(rhs)) > tol:
            return IntersectionSet(())
        u = d1.unit()
        lo2 = rhs.dot(u)
        hi2 = (s2.b - s1.a).dot(u)
        a, b = min(lo2, hi2), max(lo2, hi2)
        lo, hi = max(0.0, a), min(s1.length, b)
        if hi < lo - tol:
            return IntersectionSet(())
        if hi - lo <= tol:
            t1 = 0.5 * (lo + hi)
            p = s1.point_at(t1)
            t2 = (p - s2.a).dot(s2.direction)
            return IntersectionSet((Hit(p, t1, min(max(t2, 0.0), s2.length)),))
        def back(t1):
            return (s1.point_at(t1) - s2.a).dot(s2.direction)
        return IntersectionSet((), (Overlap(lo, hi, back(lo), back(hi)),))
    t1 = rhs.cross(d2) / denom * s1.length
    t2 = rhs.cross(d1) / denom * s2.length
    t1c = _in_range(t1, s1.length, tol)
    t2c = _in_range(t2, s2.length, tol)
    if t1c is None or t2c is None:
        return IntersectionSet(())
    return IntersectionSet((Hit(s1.point_at(t1c), t1c, t2c),))


def _line_arc(line: Line, arc: Arc, tol: float, swap: bool) -> IntersectionSet:
    u = line.direction
    w = arc.center - line.a
    # |line.a + t*u - center|^2 = R^2, unit direction so quadratic in t directly.
    tm = w.dot(u)
    h2 = arc.radius ** 2 - (w.norm2() - tm * tm)
    hits = []
    if h2 < -tol * arc.radius:
        return IntersectionSet(())
    h = math.sqrt(max(h2, 0.0))
    ts = [tm] if h <= tol else [tm - h, tm + h]
    atol = tol / arc.radius
    for t in ts:
        tc = _in_range(t, line.length, tol)
        if tc is None:
            continue
        p = line.point_at(tc)
        ta = arc.param_of_angle((p - arc.center).angle(), atol)
        if ta is None:
            continue
        if swap:
            hits.append(Hit(p, ta, tc))
        else:
            hits.append(Hit(p, tc, ta))
    return IntersectionSet(tuple(hits))


def _arc_arc(a1: Arc, a2: Arc, tol: float) -> IntersectionSet:
    dc = a2.center - a1.center
    d = dc.norm()
    if d <= tol:
        if abs(a1.radius - a2.radius) > tol:
            return IntersectionSet(())
        return _cocircular_overlaps(a1, a2, tol)
    r1, r2 = a1.radius, a2.radius
    if d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return IntersectionSet(())
    # Radical line offset from center 1.
    x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - x * x
    h = math.sqrt(max(h2, 0.0))
    u = dc * (1.0 / d)
    base = a1.center + u * x
    offs = [Vec2(0, 0)] if h <= tol else [u.perp() * h, u.perp() * (-h)]
    hits = []
    atol1, atol2 = tol / r1, tol / r2
    seen = []
    for off in offs:
        p = base + off
        t1 = a1.param_of_angle((p - a1.center).angle(), atol1)
        t2 = a2.param_of_angle((p - a2.center).angle(), atol2)
        if t1 is None or t2 is None:
            continue
        if any(p.dist(q) <= tol for q in seen):
            continue
        seen.append(p)
        hits.append(Hit(p, t1, t2))
    return IntersectionSet(tuple(hits))


def _cocircular_overlaps(a1: Arc, a2: Arc, tol: float) -> IntersectionSet:
    """Shared angular stretches of two arcs of the same circle."""
    atol = tol / a1.radius
    # Work in a1's sweep direction. Sample angular interval of a1 as
    # [0, |sweep1|] in units of a1's direction.
    s1 = abs(a1.sweep)
    dir1 = math.copysign(1.0, a1.sweep)
    # Map a2's endpoints into that coordinate.
    phi_lo = dir1 * (a2.start_angle - a1.start_angle)
    phi_hi = dir1 * (a2.end_angle - a1.start_angle)
    lo, hi = min(phi_lo, phi_hi), max(phi_lo, phi_hi)
    base = lo % TAU
    length2 = hi - lo
    out = []
    overlaps = []
    for k in (0.0, -TAU):
        u0 = base + k
        u1 = u0 + length2
        lo_c, hi_c = max(0.0, u0), min(s1, u1)
        if hi_c < lo_c - atol:
            continue
        hi_c = max(hi_c, lo_c)
        def t2_of(u):
            phi = a1.start_angle + dir1 * u
            t = a2.param_of_angle(phi, atol)
            return 0.0 if t is None else t
        if hi_c - lo_c <= atol:
            tm = 0.5 * (lo_c + hi_c)
            out.append(Hit(a1.point_at(tm * a1.radius), tm * a1.radius, t2_of(tm)))
        else:
            overlaps.append(Overlap(lo_c * a1.radius, hi_c * a1.radius,
                                    t2_of(lo_c), t2_of(hi_c)))
    return IntersectionSet(tuple(out), tuple(overlaps))


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class CurveChain:
    """A connected sequence of segments, optionally closed.

    For chains bounding material the traversal keeps material on the left.
    """

    segments: tuple[Segment, ...]
    closed: bool = True

    def __post_init__(self):
        if not self.segments:
            raise ValueError("chain needs at least one segment")
        object.__setattr__(self, "segments", tuple(self.segments))

    @cached_property
    def cum_lengths(self) -> np.ndarray:
        return np.concatenate(([0.0], np.cumsum([s.length for s in self.segments])))

    @property
    def length(self) -> float:
        return float(self.cum_lengths[-1])

    def start(self) -> Vec2:
        return self.segments[0].point_at(0.0)

    def end(self) -> Vec2:
        last = self.segments[-1]
        return last.point_at(last.length)

    def _wrap(self, s: float) -> float:
        if self.closed:
            s = s % self.length
        return min(max(s, 0.0), self.length)

    def locate(self, s: float) -> tuple[int, float]:
        """Segment index and local parameter for a chain parameter."""
        s = self._wrap(s)
        idx = int(np.searchsorted(self.cum_lengths, s, side="right")) - 1
        idx = min(max(idx, 0), len(self.segments) - 1)
        return idx, s - float(self.cum_lengths[idx])

    def point_at(self, s: float) -> Vec2:
        i, t = self.locate(s)
        return self.segments[i].point_at(t)

    def tangent_at(self, s: float) -> Vec2:
        i, t = self.locate(s)
        return self.segments[i].tangent_at(t)

    def frame_at(self, s: float, joint_tol: float = 1e-9) -> FramePair:
        """One-sided Frenet frames at s; they differ only at kinks.

        joint_tol is the arc-length window within which s counts as sitting
        on a segment joint.
        """
        s = self._wrap(s)
        i, t = self.locate(s)
        seg = self.segments[i]

        def frame(seg, t):
            p = seg.point_at(t)
            tau = seg.tangent_at(t)
            return FrenetFrame(p, tau, tau.perp(), seg.curvature)

        at_start = t <= joint_tol and (i > 0 or self.closed)
        at_end = t >= seg.length - joint_tol and (i < len(self.segments) - 1 or self.closed)
        if at_start:
            j = (i - 1) % len(self.segments)
            minus = frame(self.segments[j], self.segments[j].length)
            plus = frame(seg, 0.0)
        elif at_end:
            j = (i + 1) % len(self.segments)
            minus = frame(seg, seg.length)
            plus = frame(self.segments[j], 0.0)
        else:
            minus = plus = frame(seg, t)
        return FramePair(minus, plus, signed_angle(minus.tangent, plus.tangent))

    def joints(self) -> list[tuple[float, float]]:
        """Chain parameters of segment joints with their turn angles."""
        out = []
        n = len(self.segments)
        stops = range(n) if self.closed else range(1, n)
        for i in stops:
            s = float(self.cum_lengths[i])
            prev = self.segments[(i - 1) % n]
            turn = signed_angle(prev.tangent_at(prev.length),
                                self.segments[i].tangent_at(0.0))
            out.append((s, turn))
        return out

    def project(self, r: Vec2, tol: float = 1e-9) -> DistanceResult:
        best = math.inf
        cands = []
        degen = []
        for i, seg in enumerate(self.segments):
            hits, degs = seg.project(r)
            for dist, t, p in hits:
                cands.append((dist, i, t, p))
                best = min(best, dist)
            for dist, arc in degs:
                degen.append((dist, i, arc))
                best = min(best, dist)
        projs = []
        for dist, i, t, p in cands:
            if dist <= best + tol:
                if any(p.dist(q.point) <= tol for q in projs):
                    continue
                projs.append(Projection(p, i, t))
        degs_out = tuple(
            DegenerateArc(arc.center, arc.radius, arc.start_angle, arc.sweep, i)
            for dist, i, arc in degen if dist <= best + tol)
        if degs_out:
            # Points already covered by a degenerate arc are redundant.
            projs = [q for q in projs
                     if not any(abs(q.point.dist(Vec2(d.center.x, d.center.y)) - d.radius) <= tol
                                and _on_degenerate(d, q.point, tol) for d in degs_out)]
        return DistanceResult(best, tuple(projs), degs_out)

    def chain_param(self, seg_index: int, t: float) -> float:
        return float(self.cum_lengths[seg_index]) + t

    def winding_number(self, r: Vec2) -> int:
        total = 0.0
        for seg in self.segments:
            total += _sweep_seen_from(seg, r, 0.0, seg.length, 0)
        return int(round(total / TAU))

    def side_of(self, r: Vec2, tol: float = 1e-9) -> str:
        """'inside', 'outside', or 'on-boundary' (within tol)."""
        if self.project(r, tol).distance <= tol:
            return "on-boundary"
        return "inside" if self.winding_number(r) != 0 else "outside"

    def orientation(self) -> str:
        """'ccw' or 'cw' for a closed chain, by total tangent turning."""
        total = sum(turn for _, turn in self.joints())
        total += sum(seg.curvature * seg.length for seg in self.segments)
        return "ccw" if total > 0 else "cw"

    def bbox(self) -> tuple[float, float, float, float]:
        boxes = [seg.bbox() for seg in self.segments]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def sample(self, spacing: float) -> np.ndarray:
        return np.vstack([seg.sample(spacing) for seg in self.segments])

    def reversed(self) -> "CurveChain":
        return CurveChain(tuple(seg.reversed() for seg in reversed(self.segments)),
                          self.closed)

    def subchain(self, s0: float, s1: float, tol: float = 1e-12) -> "CurveChain":
        """Open chain following self forward from s0 to s1 (wrapping if closed)."""
        if self.closed:
            s0 = s0 % self.length
            s1 = s1 % self.length
            if s1 <= s0 + tol:
                s1 += self.length
        if s1 <= s0:
            raise ValueError("empty subchain")
        parts = []
        s = s0
        guard = 0
        while s < s1 - tol:
            i, t = self.locate(s)
            seg = self.segments[i]
            remain = seg.length - t
            take = min(remain, s1 - s)
            if take > tol:
                parts.append(seg.sub(t, t + take))
            s += max(take, tol)
            guard += 1
            if guard > 4 * len(self.segments) + 8:
                raise RuntimeError("subchain failed to terminate")
        return CurveChain(tuple(parts), closed=False)

    def check_connected(self, tol: float) -> list[str]:
        issues = []
        n = len(self.segments)
        for i in range(n if self.closed else n - 1):
            j = (i + 1) % n
            a = self.segments[i]
            gap = a.point_at(a.length).dist(self.segments[j].point_at(0.0))
            if gap > tol:
                issues.append(f"gap {gap:.3g} between segments {i} and {j}")
        for i, seg in enumerate(self.segments):
            if seg.length <= tol:
                issues.append(f"segment {i} has near-zero length {seg.length:.3g}")
        return issues

    def to_json(self) -> dict:
        return {"segments": [seg.to_json() for seg in self.segments]}

    @staticmethod
    def from_segments(segs: Iterable[Segment], closed: bool = True) -> "CurveChain":
        return CurveChain(tuple(segs), closed)


def _on_degenerate(d: DegenerateArc, p: Vec2, tol: float) -> bool:
    arc = Arc(d.center, d.radius, d.start_angle, d.sweep)
    return arc.param_of_angle((p - d.center).angle(), tol / d.radius) is not None


def _sweep_seen_from(seg: Segment, r: Vec2, t0: float, t1: float, depth: int) -> float:
    """Signed angle swept by (point - r) as the segment runs t0..t1.

    The chord angle alone cannot be trusted: a full circle seen from an
    interior point sweeps 2*pi yet its endpoints coincide. A piece of
    arc length L starting at distance m from r stays at least m - L away,
    so for L <= m/2 the sweep is bounded by L / (m - L) <= 1 radian and
    the chord angle is exact. Otherwise split and recurse.
    """
    p0 = seg.point_at(t0) - r
    p1 = seg.point_at(t1) - r
    if (t1 - t0) <= 0.5 * p0.norm() or depth > 48:
        return signed_angle(p0, p1)
    tm = 0.5 * (t0 + t1)
    return (_sweep_seen_from(seg, r, t0, tm, depth + 1)
            + _sweep_seen_from(seg, r, tm, t1, depth + 1))


# Module-level op aliases matching the documented interface names.

def frame_at(chain: CurveChain, s: float, joint_tol: float = 1e-9) -> FramePair:
    return chain.frame_at(s, joint_tol)


def project_point(chain: CurveChain, r: Vec2, tol: float = 1e-9) -> DistanceResult:
    return chain.project(r, tol)


def winding_side(chain: CurveChain, r: Vec2, tol: float = 1e-9) -> str:
    return chain.side_of(r, tol)
