"""Deterministic SVG snapshots of scenes and derived artifacts.

Everything is drawn as sampled polylines with fixed-precision coordinates,
so two runs on the same input produce byte-identical files. The y axis is
flipped to keep world coordinates right-handed on screen.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable

import numpy as np

from .geometry import CurveChain, Vec2

if TYPE_CHECKING:
    from .scene import Scene


_STYLE = {
    "obstacle": 'fill="#c9c2b8" stroke="#6f675c" stroke-width="{w}"',
    "point": 'fill="#6f675c"',
    "perimeter": 'fill="none" stroke="#2b6cb0" stroke-width="{w}"',
    "central": ('fill="none" stroke="#b08c2b" stroke-width="{w}" '
                'stroke-dasharray="{d1} {d2}"'),
    "fence": 'fill="none" stroke="#2f855a" stroke-width="{w}"',
    "gate": 'fill="none" stroke="#c53030" stroke-width="{w}"',
    "trajectory": 'fill="none" stroke="#553c9a" stroke-width="{w2}"',
    "robot": 'fill="#553c9a"',
    "stone": 'fill="#c53030"',
}


def _fmt(x: float, dec: int) -> str:
    s = f"{x:.{dec}f}"
    return "0." + "0" * dec if s == "-" + "0." + "0" * dec else s


def _poly(points: np.ndarray, style: str, dec: int, close: bool = False) -> str:
    coords = " ".join(f"{_fmt(px, dec)},{_fmt(-py, dec)}" for px, py in points)
    tag = "polygon" if close else "polyline"
    return f'<{tag} points="{coords}" {style}/>'


def render_svg(scene: "Scene", artifacts: dict, path: str) -> None:
    """Write an SVG of the scene plus whatever artifacts are provided.

    Recognized artifact keys: 'perimeter', 'erosion', 'fences' (list),
    'fence', 'trajectory'. Unknown keys are ignored so callers can pass a
    grab bag.
    """
    from .scene import LoopObstacle, PointObstacle

    dec = scene.config.svg_decimals
    pad = scene.d0 + 2.0 * scene.r_fence
    x0, y0, x1, y1 = scene.bbox()
    x0 = min(x0, scene.r_in.x) - pad
    y0 = min(y0, scene.r_in.y) - pad
    x1 = max(x1, scene.r_in.x) + pad
    y1 = max(y1, scene.r_in.y) + pad
    w = x1 - x0
    h = y1 - y0
    lw = max(w, h) / 400.0
    spacing = max(w, h) / 2000.0
    sty = {k: v.format(w=_fmt(lw, dec), w2=_fmt(0.6 * lw, dec),
                       d1=_fmt(3 * lw, dec), d2=_fmt(2 * lw, dec))
           for k, v in _STYLE.items()}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(x0, dec)} {_fmt(-y1, dec)} {_fmt(w, dec)} {_fmt(h, dec)}">',
        f'<rect x="{_fmt(x0, dec)}" y="{_fmt(-y1, dec)}" width="{_fmt(w, dec)}" '
        f'height="{_fmt(h, dec)}" fill="#faf8f4"/>',
    ]

    for ob in scene.obstacles:
        if isinstance(ob, PointObstacle):
            parts.append(f'<circle cx="{_fmt(ob.point.x, dec)}" '
                         f'cy="{_fmt(-ob.point.y, dec)}" r="{_fmt(2 * lw, dec)}" '
                         f'{sty["point"]}/>')
        else:
            parts.append(_poly(ob.boundary.sample(spacing), sty["obstacle"],
                               dec, close=True))

    peri = artifacts.get("perimeter")
    if peri is not None:
        parts.append(_poly(peri.chain.sample(spacing), sty["perimeter"],
                           dec, close=True))
    erosion = artifacts.get("erosion")
    if erosion is not None:
        for comp in erosion.components:
            parts.append(_poly(comp.chain.sample(spacing), sty["central"],
                               dec, close=True))
    fences = list(artifacts.get("fences", []))
    single = artifacts.get("fence")
    if single is not None:
        fences.append(single)
    for fence in fences:
        for seg, inf in zip(fence.chain.segments, fence.provenance):
            key = "gate" if inf.kind == "gate" else "fence"
            parts.append(_poly(seg.sample(spacing), sty[key], dec))
        for stone in fence.door_stones:
            parts.append(f'<circle cx="{_fmt(stone.center.x, dec)}" '
                         f'cy="{_fmt(-stone.center.y, dec)}" '
                         f'r="{_fmt(1.5 * lw, dec)}" {sty["stone"]}/>')
    traj = artifacts.get("trajectory")
    if traj is not None:
        pts = np.column_stack((traj.x, traj.y))
        keep = max(1, len(pts) // 4000)
        parts.append(_poly(pts[::keep], sty["trajectory"], dec))

    parts.append(f'<circle cx="{_fmt(scene.r_in.x, dec)}" '
                 f'cy="{_fmt(-scene.r_in.y, dec)}" r="{_fmt(2 * lw, dec)}" '
                 f'{sty["robot"]}/>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
