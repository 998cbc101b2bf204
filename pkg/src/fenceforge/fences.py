"""Erosion of the free region and construction of trackable fences.

The region reachable by the center of a disc of radius R gliding through
free space without crossing the outer perimeter is the erosion of the
exterior by R. Its boundary components (central paths) are equidistant
loops at clearance d0+R, so the same ensemble machinery builds them, and
an independent second route (offsetting the perimeter chain itself by R)
cross-checks the result.

A fence is the boundary swept by such a disc: where the central path is
smooth the disc rim touches the perimeter and the fence piece is an exact
re-offset of the central piece; at central-path corners the rim pivots,
leaving a circular gate of radius R that bridges across inlets too narrow
for the disc. The perimeter stretch skipped behind a gate is its cave, the
pivot corner its door stone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from .errors import ConsistencyError, SceneError
from .geometry import (Arc, CurveChain, Line, Segment, Vec2, signed_angle)
from .offsets import (EnsemblePiece, Perimeter, SourceRef, build_ensemble,
                      far_side_contains, material_keep_test,
                      offset_chain_pieces, reoffset, trim_pieces)

if TYPE_CHECKING:
    from .scene import Scene


@dataclass(frozen=True)
class CentralPath:
    """One boundary loop of the eroded free region, with provenance."""

    chain: CurveChain
    pieces: tuple[EnsemblePiece, ...]

    def region_contains(self, r: Vec2, tol: float = 1e-9) -> bool:
        """Closed membership in the eroded region this loop bounds."""
        return far_side_contains(self.chain, r, tol, boundary_counts=True)


@dataclass(frozen=True)
class ErosionSet:
    radius: float
    components: tuple[CentralPath, ...]

    def component_near(self, r: Vec2, tol: float = 1e-9) -> tuple[int, float]:
        best, best_d = -1, math.inf
        for i, comp in enumerate(self.components):
            if comp.region_contains(r, tol):
                return i, 0.0
            d = comp.chain.project(r, tol).distance
            if d < best_d:
                best, best_d = i, d
        return best, best_d


def compute_erosion(scene: "Scene", perimeter: Perimeter, radius: float) -> ErosionSet:
    """Central paths at distance radius behind the outer perimeter.

    Primary route: trimmed equidistant loops at clearance d0+radius,
    restricted to the perimeter's free side. Checking route: one-sided
    offset of the perimeter chain by radius, trimmed against distance to
    the perimeter itself. The two must agree to within tolerance.
    """
    from .bizarre import is_bizarre
    if radius <= 0:
        raise ValueError("erosion radius must be positive")
    verdict = is_bizarre(scene, scene.d0 + radius)
    if verdict.bizarre:
        raise SceneError(
            "bizarre-erosion-distance",
            f"clearance {scene.d0 + radius:.12g} coincides with a degenerate "
            f"distance ({verdict.matches[0][0]})")
    d_c = scene.d0 + radius
    ens = build_ensemble(scene, d_c)
    loops = trim_pieces(list(ens.pieces), material_keep_test(scene, d_c),
                        scene.tol, scene.join_tol)
    comps = []
    for loop in loops:
        chain = CurveChain(tuple(p.geom for p in loop))
        probe = chain.start()
        if perimeter.free_side_contains(probe, strict=True, tol=scene.tol):
            comps.append(CentralPath(chain, tuple(loop)))
    _cross_check_erosion(scene, perimeter, radius, comps)
    return ErosionSet(radius, tuple(comps))


def _cross_check_erosion(scene: "Scene", perimeter: Perimeter, radius: float,
                         comps: list[CentralPath]) -> None:
    """Independent construction: erode by offsetting the perimeter chain."""
    pieces = offset_chain_pieces(perimeter.chain, radius)
    slack = 10.0 * scene.tol

    def keep(p: Vec2) -> bool:
        return perimeter.chain.project(p, scene.tol).distance >= radius - slack

    loops = trim_pieces(pieces, keep, scene.tol, scene.join_tol)
    if len(loops) != len(comps):
        raise ConsistencyError(
            f"erosion routes disagree: {len(comps)} components from the "
            f"material offsets, {len(loops)} from the perimeter offset")
    alt = [CurveChain(tuple(p.geom for p in loop)) for loop in loops]
    for comp in comps:
        n = max(64, 4 * len(comp.chain.segments))
        worst = 0.0
        for k in range(n):
            q = comp.chain.point_at(comp.chain.length * k / n)
            d = min(ch.project(q, scene.tol).distance for ch in alt)
            worst = max(worst, d)
        if worst > 100.0 * scene.tol:
            raise ConsistencyError(
                f"erosion routes differ by {worst:.3g} on a component")


# ---------------------------------------------------------------------------
# Fences


@dataclass(frozen=True)
class DoorStone:
    """A pivot of the gliding disc: its corner on the central path, the
    perimeter contacts it swings between, the gate segments it owns, and
    the perimeter stretches (caves) the gates bridge across."""

    center: Vec2
    contacts: tuple[Vec2, ...]
    gate_segments: tuple[int, ...]
    caves: tuple[CurveChain, ...]
    span: float

    def to_json(self) -> dict:
        return {
            "center": [self.center.x, self.center.y],
            "contacts": [[c.x, c.y] for c in self.contacts],
            "gate_segments": list(self.gate_segments),
            "span": self.span,
            "caves": [c.to_json() for c in self.caves],
        }


@dataclass(frozen=True)
class FenceSegmentInfo:
    kind: str  # "contact" or "gate"
    source: SourceRef | None = None
    stone: int = -1


@dataclass(frozen=True)
class Fence:
    chain: CurveChain
    provenance: tuple[FenceSegmentInfo, ...]
    radius: float
    clearance: float
    component_id: int
    door_stones: tuple[DoorStone, ...]

    def patch_contains(self, r: Vec2, tol: float = 1e-9,
                       boundary_counts: bool = True) -> bool:
        """Membership in the obstacle-free region the fence bounds."""
        return far_side_contains(self.chain, r, tol, boundary_counts)

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "clearance": self.clearance,
            "component": self.component_id,
            "segments": [seg.to_json() for seg in self.chain.segments],
            "provenance": [
                {"kind": p.kind,
                 **({"source": {"kind": p.source.kind,
                                "obstacle": p.source.obstacle,
                                "index": p.source.index}}
                    if p.source else {"stone": p.stone})}
                for p in self.provenance],
            "door_stones": [d.to_json() for d in self.door_stones],
        }


def build_fence(scene: "Scene", perimeter: Perimeter, erosion: ErosionSet,
                component_id: int) -> Fence:
    """Fence traced by the rim of the R-disc gliding on one component."""
    comp = erosion.components[component_id]
    R = erosion.radius
    pieces = comp.pieces
    m = len(pieces)
    segs: list[Segment] = []
    info: list[FenceSegmentInfo] = []
    corner_records = []  # (corner point, index of its gate segment)
    smooth_turn = scene.join_tol / max(R, scene.join_tol)

    for k in range(m):
        cur = pieces[k]
        segs.append(reoffset(cur.geom, -R))
        info.append(FenceSegmentInfo("contact", source=cur.source))
        nxt = pieces[(k + 1) % m]
        e = cur.geom.point_at(cur.geom.length)
        s = nxt.geom.point_at(0.0)
        corner = Vec2(0.5 * (e.x + s.x), 0.5 * (e.y + s.y))
        turn = signed_angle(cur.geom.tangent_at(cur.geom.length),
                            nxt.geom.tangent_at(0.0))
        if abs(turn) <= smooth_turn:
            continue
        if turn > 0:
            raise ConsistencyError(
                f"central path turns left by {turn:.3g} rad at "
                f"({corner.x:.6g}, {corner.y:.6g}); erosion boundaries "
                "cannot do that")
        n_in = cur.geom.tangent_at(cur.geom.length).perp()
        a0 = n_in.angle()
        segs.append(Arc(corner, R, a0, turn))
        info.append(FenceSegmentInfo("gate", stone=-2))
        corner_records.append((corner, len(segs) - 1))

    chain = CurveChain(tuple(segs))
    issues = chain.check_connected(10.0 * scene.join_tol)
    if issues:
        raise ConsistencyError("fence chain broken: " + "; ".join(issues))

    stones = _build_door_stones(scene, perimeter, chain, corner_records, R)
    # Patch gate provenance with final stone ids.
    stone_of_seg = {}
    for si, st in enumerate(stones):
        for gi in st.gate_segments:
            stone_of_seg[gi] = si
    info = [FenceSegmentInfo("gate", stone=stone_of_seg[i])
            if fi.kind == "gate" else fi
            for i, fi in enumerate(info)]
    return Fence(chain, tuple(info), R, scene.d0, component_id, stones)


def _build_door_stones(scene: "Scene", perimeter: Perimeter, chain: CurveChain,
                       corner_records, R: float) -> tuple[DoorStone, ...]:
    """Group gate corners into stones and attach contacts and caves."""
    clusters: list[list[int]] = []
    centers: list[Vec2] = []
    for corner, seg_idx in corner_records:
        placed = False
        for ci, c in enumerate(centers):
            if c.dist(corner) <= 10.0 * scene.join_tol:
                clusters[ci].append(seg_idx)
                placed = True
                break
        if not placed:
            centers.append(corner)
            clusters.append([seg_idx])
    stones = []
    for center, seg_ids in zip(centers, clusters):
        contacts: list[Vec2] = []
        caves: list[CurveChain] = []
        for gi in seg_ids:
            gate: Arc = chain.segments[gi]
            f_in = gate.point_at(0.0)
            f_out = gate.point_at(gate.length)
            contacts.extend((f_in, f_out))
            caves.append(_cave_between(scene, perimeter, f_in, f_out))
        span = _contact_span(center, contacts)
        if span >= math.pi - 1e-9:
            raise ConsistencyError(
                f"door stone at ({center.x:.6g}, {center.y:.6g}) has contact "
                f"span {span:.6g} rad; expected below a half turn")
        stones.append(DoorStone(center, tuple(contacts), tuple(sorted(seg_ids)),
                                tuple(caves), span))
    return tuple(stones)


def _cave_between(scene: "Scene", perimeter: Perimeter,
                  f_in: Vec2, f_out: Vec2) -> CurveChain:
    """Perimeter stretch bridged by a gate, running forward from entry
    contact to exit contact."""
    s_vals = []
    for f in (f_in, f_out):
        res = perimeter.chain.project(f, scene.tol)
        if res.distance > 100.0 * scene.tol:
            raise ConsistencyError(
                f"gate contact ({f.x:.6g}, {f.y:.6g}) misses the perimeter "
                f"by {res.distance:.3g}")
        pr = res.projections[0]
        s_vals.append(perimeter.chain.chain_param(pr.seg_index, pr.t))
    return perimeter.chain.subchain(s_vals[0], s_vals[1])


def _contact_span(center: Vec2, contacts: list[Vec2]) -> float:
    """Smallest angular sector at the stone covering all contacts."""
    angs = sorted(((c - center).angle()) % (2.0 * math.pi) for c in contacts)
    if len(angs) < 2:
        return 0.0
    gaps = [(angs[(i + 1) % len(angs)] - angs[i]) % (2.0 * math.pi)
            for i in range(len(angs))]
    return 2.0 * math.pi - max(gaps)


# ---------------------------------------------------------------------------
# Loop validation, selection, nesting


@dataclass(frozen=True)
class LoopReport:
    ok: bool
    issues: tuple[str, ...]

    def to_json(self) -> dict:
        return {"ok": self.ok, "issues": list(self.issues)}


def validate_loop(chain: CurveChain, r_reverse: float, r_forward: float,
                  angle_tol: float = 1e-7, join_tol: float = 1e-8) -> LoopReport:
    """Is the loop trackable by discs of the two radii?

    Clockwise stretches must be no tighter than r_reverse (the outer disc
    pivots there), counterclockwise ones no tighter than r_forward, joints
    must be tangent-continuous, and the chain must close up.
    """
    issues = []
    if not chain.closed:
        issues.append("chain is not closed")
    issues.extend(chain.check_connected(10.0 * join_tol))
    cap_neg = (1.0 + 1e-9) / r_reverse
    cap_pos = (1.0 + 1e-9) / r_forward
    for k, seg in enumerate(chain.segments):
        kappa = seg.curvature
        if kappa < -cap_neg:
            issues.append(
                f"segment {k}: clockwise curvature {abs(kappa):.6g} exceeds "
                f"1/{r_reverse:.6g}")
        if kappa > cap_pos:
            issues.append(
                f"segment {k}: counterclockwise curvature {kappa:.6g} "
                f"exceeds 1/{r_forward:.6g}")
    for s, turn in chain.joints():
        if abs(turn) > angle_tol:
            issues.append(f"tangent jump {turn:.3g} rad at s={s:.6g}")
    return LoopReport(not issues, tuple(issues))


def select_initial_fence(scene: "Scene", fences: list[Fence]) -> int:
    """Index of the unique fence whose patch holds the start point."""
    claim = [i for i, f in enumerate(fences)
             if f.patch_contains(scene.r_in, scene.tol)]
    if len(claim) == 1:
        return claim[0]
    if not claim:
        raise SceneError(
            "start-outside-fences",
            f"initial location ({scene.r_in.x:.6g}, {scene.r_in.y:.6g}) lies "
            "in no fence patch; the launch condition cannot hold")
    raise SceneError(
        "ambiguous-initial-fence",
        f"fences {claim} all contain the initial location in their patches")


@dataclass(frozen=True)
class NestingReport:
    ok: bool
    checked: int
    violations: tuple[Vec2, ...]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked,
                "violations": [[p.x, p.y] for p in self.violations]}


def check_nesting(scene: "Scene", r_small: float, r_large: float,
                  samples: int = 1000) -> NestingReport:
    """The larger-radius fence patch must sit inside the smaller's.

    Both fences are the initial ones (patch holding the start point). The
    larger chain is sampled along its length; every sample must belong to
    the smaller fence's patch, boundary membership included.
    """
    from .offsets import extract_perimeter
    if not (0 < r_small < r_large):
        raise ValueError("need 0 < r_small < r_large")
    perimeter = extract_perimeter(scene)
    fences = {}
    for radius in (r_small, r_large):
        erosion = compute_erosion(scene, perimeter, radius)
        built = [build_fence(scene, perimeter, erosion, i)
                 for i in range(len(erosion.components))]
        fences[radius] = built[select_initial_fence(scene, built)]
    inner = fences[r_large]
    outer = fences[r_small]
    bad = []
    for k in range(samples):
        q = inner.chain.point_at(inner.chain.length * k / samples)
        if not outer.patch_contains(q, scene.tol, boundary_counts=True):
            bad.append(q)
    if not outer.patch_contains(scene.r_in, scene.tol):
        bad.append(scene.r_in)
    return NestingReport(not bad, samples + 1, tuple(bad))
