"""Offset ensembles, trimming, and outer-perimeter extraction.

The equidistant set at clearance d is assembled from elementary offset
pieces: every boundary line shifts sideways, every arc changes radius,
every convex corner and isolated point sprouts a circular arc spanning its
normal cone. Pieces are mutually intersected, split, and only the
sub-pieces whose points actually realize distance d to material survive.
Surviving pieces snap together into closed loops, one of which bounds the
free component holding the robot start: that loop is the outer perimeter.

All chains keep material on the left, so the free side is to the right of
travel and offsetting further means moving along minus-normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Callable

import numpy as np

from .errors import ConsistencyError, SceneError
from .geometry import (Arc, CurveChain, Line, Segment, Vec2, intersect,
                       signed_angle)

if TYPE_CHECKING:
    from .scene import Scene


@dataclass(frozen=True)
class SourceRef:
    """What a piece of offset geometry descends from.

    kind is 'segment' for a shifted boundary piece, 'kink' for the arc
    around a convex corner (index = joint index on that boundary), or
    'point' for the circle around an isolated point obstacle.
    """

    kind: str
    obstacle: int
    index: int = -1


@dataclass(frozen=True)
class EnsemblePiece:
    geom: Segment
    source: SourceRef
    dist: float


def offset_segment(seg: Segment, d: float) -> Segment | None:
    """Shift a material-left segment a further distance d into free space.

    Lines translate, arcs change radius while keeping center and angles.
    A clockwise (concave toward free space) arc shrinks and returns None
    once its radius would vanish.
    """
    if isinstance(seg, Line):
        n = seg.direction.perp()
        return seg.translated(n * (-d))
    if seg.sweep > 0:
        return Arc(seg.center, seg.radius + d, seg.start_angle, seg.sweep)
    new_r = seg.radius - d
    if new_r <= 1e-12:
        return None
    return Arc(seg.center, new_r, seg.start_angle, seg.sweep)


def reoffset(seg: Segment, delta: float) -> Segment:
    """Move an already-offset piece by delta more (negative = back toward
    material). Exact: parameters and provenance ranges are preserved."""
    out = offset_segment(seg, delta)
    if out is None:
        raise ConsistencyError("re-offset collapsed a concave arc")
    return out


@dataclass(frozen=True)
class Ensemble:
    dist: float
    pieces: tuple[EnsemblePiece, ...]
    swallowed: tuple[SourceRef, ...]  # concave arcs with radius <= dist


def build_ensemble(scene: "Scene", d_star: float) -> Ensemble:
    """All elementary offset pieces of the scene at clearance d_star."""
    from .scene import LoopObstacle, PointObstacle
    if d_star <= 0:
        raise ValueError("offset distance must be positive")
    pieces: list[EnsemblePiece] = []
    swallowed: list[SourceRef] = []
    kink_turn_min = 2.0 * scene.join_tol / d_star
    for i, ob in enumerate(scene.obstacles):
        if isinstance(ob, PointObstacle):
            geom = Arc(ob.point, d_star, 0.0, 2.0 * math.pi)
            pieces.append(EnsemblePiece(geom, SourceRef("point", i), d_star))
            continue
        chain = ob.boundary
        for j, seg in enumerate(chain.segments):
            off = offset_segment(seg, d_star)
            src = SourceRef("segment", i, j)
            if off is None:
                swallowed.append(src)
            else:
                pieces.append(EnsemblePiece(off, src, d_star))
        for j, (s, turn) in enumerate(chain.joints()):
            if turn <= kink_turn_min:
                continue  # smooth or reflex; reflex excess gets trimmed
            idx, _ = chain.locate(s)
            vertex = chain.segments[idx].point_at(0.0)
            tau_in = chain.frame_at(s).minus.tangent
            a0 = (tau_in.perp() * (-1.0)).angle()
            geom = Arc(vertex, d_star, a0, turn)
            pieces.append(EnsemblePiece(geom, SourceRef("kink", i, j), d_star))
    return Ensemble(d_star, tuple(pieces), tuple(swallowed))


def offset_chain_pieces(chain: CurveChain, d: float,
                        obstacle_tag: int = -1) -> list[EnsemblePiece]:
    """One-sided offset pieces of an arbitrary material-left chain.

    Used for the independent route that erodes the free region by
    offsetting the perimeter itself. Right-turn corners need no arcs (the
    neighbors cross and trimming flushes them); left-turn corners get one.
    """
    pieces: list[EnsemblePiece] = []
    for j, seg in enumerate(chain.segments):
        off = offset_segment(seg, d)
        if off is not None:
            pieces.append(EnsemblePiece(off, SourceRef("segment", obstacle_tag, j), d))
    for j, (s, turn) in enumerate(chain.joints()):
        if turn <= 1e-12:
            continue
        idx, _ = chain.locate(s)
        vertex = chain.segments[idx].point_at(0.0)
        tau_in = chain.frame_at(s).minus.tangent
        a0 = (tau_in.perp() * (-1.0)).angle()
        pieces.append(EnsemblePiece(Arc(vertex, d, a0, turn),
                                    SourceRef("kink", obstacle_tag, j), d))
    return pieces


# ---------------------------------------------------------------------------
# Trimming


def trim_pieces(pieces: list[EnsemblePiece], keep: Callable[[Vec2], bool],
                tol: float, join_tol: float) -> list[list[EnsemblePiece]]:
    """Split pieces at mutual crossings, filter by keep, assemble loops.

    keep receives a sub-piece midpoint and decides whether that stretch
    realizes the wanted distance. Assembly demands exactly one successor
    per surviving piece; anything else means the ensemble does not form
    clean loops and is reported as an internal inconsistency.
    """
    cuts: list[list[float]] = [[] for _ in pieces]
    for a in range(len(pieces)):
        ga = pieces[a].geom
        for b in range(a + 1, len(pieces)):
            gb = pieces[b].geom
            if not _boxes_touch(ga, gb, tol):
                continue
            xs = intersect(ga, gb, tol)
            for hit in xs.points:
                cuts[a].append(hit.t1)
                cuts[b].append(hit.t2)
            for ov in xs.overlaps:
                cuts[a].extend((ov.t1_lo, ov.t1_hi))
                cuts[b].extend((ov.t2_lo, ov.t2_hi))
    shards: list[EnsemblePiece] = []
    for piece, ts in zip(pieces, cuts):
        length = piece.geom.length
        params = sorted(t for t in ts if 10.0 * tol < t < length - 10.0 * tol)
        merged: list[float] = []
        for t in params:
            if not merged or t - merged[-1] > 10.0 * tol:
                merged.append(t)
        stops = [0.0] + merged + [length]
        for t0, t1 in zip(stops[:-1], stops[1:]):
            if t1 - t0 <= tol:
                continue
            shards.append(EnsemblePiece(piece.geom.sub(t0, t1),
                                        piece.source, piece.dist))
    kept = [sh for sh in shards
            if keep(sh.geom.point_at(0.5 * sh.geom.length))]
    if not kept:
        return []
    return _assemble_loops(kept, join_tol)


def _boxes_touch(a: Segment, b: Segment, tol: float) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    return not (ax1 + tol < bx0 or bx1 + tol < ax0
                or ay1 + tol < by0 or by1 + tol < ay0)


def _assemble_loops(kept: list[EnsemblePiece],
                    join_tol: float) -> list[list[EnsemblePiece]]:
    from scipy.spatial import cKDTree
    starts = np.array([[p.geom.point_at(0.0).x, p.geom.point_at(0.0).y]
                       for p in kept])
    tree = cKDTree(starts)
    succ: list[int] = []
    used: set[int] = set()
    for i, piece in enumerate(kept):
        e = piece.geom.point_at(piece.geom.length)
        dists, idxs = tree.query([e.x, e.y], k=min(4, len(kept)))
        dists = np.atleast_1d(dists)
        idxs = np.atleast_1d(idxs)
        chosen = None
        for d, j in zip(dists, idxs):
            if d <= 10.0 * join_tol and j not in used:
                chosen = int(j)
                break
        if chosen is None:
            raise ConsistencyError(
                f"no successor for trimmed piece ending at ({e.x:.9g}, {e.y:.9g})")
        succ.append(chosen)
        used.add(chosen)
    loops: list[list[EnsemblePiece]] = []
    visited = [False] * len(kept)
    for i in range(len(kept)):
        if visited[i]:
            continue
        cyc = []
        j = i
        while not visited[j]:
            visited[j] = True
            cyc.append(kept[j])
            j = succ[j]
        if j != i:
            raise ConsistencyError("trimmed pieces formed a rho-shaped walk, "
                                   "not a clean loop")
        loops.append(cyc)
    return loops


def material_keep_test(scene: "Scene", d_star: float) -> Callable[[Vec2], bool]:
    from .distance import dist_to_obstacles
    slack = 10.0 * scene.tol

    def keep(p: Vec2) -> bool:
        res = dist_to_obstacles(scene, p, scene.tol)
        # the reported distance is to the nearest boundary, so a point
        # buried inside thick material could pass the threshold alone
        return not res.in_material and res.distance >= d_star - slack

    return keep


def trimmed_loops(scene: "Scene", d_star: float) -> list[CurveChain]:
    """Closed equidistant loops at clearance d_star (chains only)."""
    ens = build_ensemble(scene, d_star)
    loops = trim_pieces(list(ens.pieces), material_keep_test(scene, d_star),
                        scene.tol, scene.join_tol)
    return [CurveChain(tuple(p.geom for p in loop)) for loop in loops]


def far_side_contains(chain: CurveChain, r: Vec2, tol: float,
                      boundary_counts: bool = False) -> bool:
    """Is r on the free side (right of travel) of a closed material-left loop?

    A counterclockwise loop encloses material, so its free side is the
    outside; a clockwise loop encloses free space.
    """
    side = chain.side_of(r, tol)
    if side == "on-boundary":
        return boundary_counts
    ccw = chain.orientation() == "ccw"
    return (side == "outside") == ccw


# ---------------------------------------------------------------------------
# Outer perimeter


@dataclass(frozen=True)
class Perimeter:
    """The d0-equidistant loop bounding the robot's free component.

    chain runs with material on the left; provenance names the boundary
    feature behind every segment, which makes exact re-offsetting and
    normal legs available downstream.
    """

    chain: CurveChain
    provenance: tuple[SourceRef, ...]
    clearance: float

    def free_side_contains(self, r: Vec2, strict: bool = False,
                           tol: float = 1e-9) -> bool:
        return far_side_contains(self.chain, r, tol, boundary_counts=not strict)

    def frame(self, s: float):
        return self.chain.frame_at(s)

    def normal_leg(self, s: float) -> Line:
        """Segment from the perimeter point to its material foot."""
        i, t = self.chain.locate(s)
        p = self.chain.segments[i].point_at(t)
        n = self.chain.segments[i].tangent_at(t).perp()
        return Line(p, p + n * self.clearance)

    def foot_at(self, s: float) -> Vec2:
        return self.normal_leg(s).b

    def source_at(self, s: float) -> SourceRef:
        i, _ = self.chain.locate(s)
        return self.provenance[i]

    def to_json(self) -> dict:
        return {
            "clearance": self.clearance,
            "segments": [seg.to_json() for seg in self.chain.segments],
            "provenance": [
                {"kind": s.kind, "obstacle": s.obstacle, "index": s.index}
                for s in self.provenance],
        }


def extract_perimeter(scene: "Scene") -> Perimeter:
    """Build the outer perimeter at clearance d0 around the robot start.

    Exactly one trimmed loop may claim the start point on its free side.
    None means the start is not in any d0-clear region; several mean the
    free region is not bounded by a single loop and the scene is refused.
    """
    from .bizarre import is_bizarre
    verdict = is_bizarre(scene, scene.d0)
    if verdict.bizarre:
        raise SceneError(
            "bizarre-clearance",
            f"clearance {scene.d0:.12g} coincides with a degenerate distance "
            f"({verdict.matches[0][0]})")
    ens = build_ensemble(scene, scene.d0)
    loops = trim_pieces(list(ens.pieces), material_keep_test(scene, scene.d0),
                        scene.tol, scene.join_tol)
    claimants = []
    for loop in loops:
        chain = CurveChain(tuple(p.geom for p in loop))
        if far_side_contains(chain, scene.r_in, scene.tol):
            claimants.append((chain, loop))
    if not claimants:
        raise SceneError(
            "start-not-clear",
            f"initial location ({scene.r_in.x:.6g}, {scene.r_in.y:.6g}) "
            f"is not inside any region with clearance {scene.d0:.6g}")
    if len(claimants) > 1:
        raise SceneError(
            "free-region-not-simple",
            f"{len(claimants)} equidistant loops all face the start point; "
            "the free region is multiply connected, so no single outer "
            "perimeter exists")
    chain, loop = claimants[0]
    peri = Perimeter(chain, tuple(p.source for p in loop), scene.d0)
    _assert_perimeter_shape(scene, peri)
    return peri


def _assert_perimeter_shape(scene: "Scene", peri: Perimeter) -> None:
    """Internal guarantees: curvature cap 1/d0 and no left kinks."""
    cap = (1.0 + 1e-9) / scene.d0
    for k, seg in enumerate(peri.chain.segments):
        if seg.curvature > cap:
            raise ConsistencyError(
                f"perimeter segment {k} curves tighter than the clearance "
                f"allows: {seg.curvature:.6g} > {1.0 / scene.d0:.6g}")
    for s, turn in peri.chain.joints():
        if turn > scene.config.angle_tol:
            raise ConsistencyError(
                f"perimeter has a left kink of {turn:.3g} rad at s={s:.6g}")
