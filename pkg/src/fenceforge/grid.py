"""Brute-force grid oracle for the distance field and derived regions.

Everything here is deliberately independent of the analytic machinery:
distances come from nearest-neighbor queries against a dense sampling of
the obstacle boundaries, the material sign from even-odd scanline tests on
dense polylines, and region operations from pixel morphology. The oracle
exists to catch bugs in the exact constructions, so it shares no code with
them beyond segment point evaluation.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree
from skimage import measure

from .geometry import Vec2

if TYPE_CHECKING:
    from .scene import Scene


@dataclass
class GridOracle:
    origin: tuple[float, float]
    pitch: float
    values: np.ndarray          # signed distance, negative inside material
    material: np.ndarray        # bool mask
    boundary_tree: cKDTree

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def world_of(self, iy: np.ndarray, ix: np.ndarray):
        return (self.origin[0] + ix * self.pitch,
                self.origin[1] + iy * self.pitch)

    def index_of(self, p: Vec2) -> tuple[int, int]:
        ix = int(round((p.x - self.origin[0]) / self.pitch))
        iy = int(round((p.y - self.origin[1]) / self.pitch))
        ny, nx = self.values.shape
        return min(max(iy, 0), ny - 1), min(max(ix, 0), nx - 1)

    def value_at(self, p: Vec2) -> float:
        iy, ix = self.index_of(p)
        return float(self.values[iy, ix])

    # -- region masks ------------------------------------------------------

    def free_mask(self, level: float) -> np.ndarray:
        """Cells farther than level from material."""
        return self.values > level

    def component_mask(self, mask: np.ndarray, seed: Vec2) -> np.ndarray:
        labels, _ = ndimage.label(mask)
        iy, ix = self.index_of(seed)
        lab = labels[iy, ix]
        if lab == 0:
            raise ValueError(f"seed ({seed.x:.6g}, {seed.y:.6g}) not in mask")
        return labels == lab

    def component_count(self, mask: np.ndarray) -> int:
        _, n = ndimage.label(mask)
        return int(n)

    def interior_distance(self, mask: np.ndarray) -> np.ndarray:
        """Distance of every mask cell to the complement, in world units."""
        return ndimage.distance_transform_edt(mask, sampling=self.pitch)

    def eroded_mask(self, base: np.ndarray, radius: float) -> np.ndarray:
        """Disc erosion, done with a distance transform instead of a
        structuring element so the cost stays linear in the cell count."""
        return self.interior_distance(base) >= radius

    def dilated_mask(self, base: np.ndarray, radius: float) -> np.ndarray:
        return self.region_distance(base) <= radius

    def opening_mask(self, base: np.ndarray, radius: float,
                     seed: Vec2 | None = None) -> np.ndarray:
        """Morphological opening by a disc, optionally seeded to one component."""
        er = self.eroded_mask(base, radius)
        if seed is not None:
            er = self.component_mask(er, seed)
        return self.dilated_mask(er, radius)

    # -- subpixel boundaries ----------------------------------------------

    def _to_world(self, contour: np.ndarray) -> np.ndarray:
        out = np.empty_like(contour)
        out[:, 0] = self.origin[0] + contour[:, 1] * self.pitch
        out[:, 1] = self.origin[1] + contour[:, 0] * self.pitch
        return out

    def level_contours(self, level: float) -> list[np.ndarray]:
        """World-coordinate polylines of the signed-distance level set."""
        return [self._to_world(c)
                for c in measure.find_contours(self.values, level)]

    def region_distance(self, region_mask: np.ndarray) -> np.ndarray:
        """Distance of every cell to the given region, in world units."""
        return ndimage.distance_transform_edt(~region_mask,
                                              sampling=self.pitch)

    def region_offset_contours(self, region_mask: np.ndarray,
                               radius: float) -> list[np.ndarray]:
        """Subpixel boundary of the region dilated by radius."""
        edt = self.region_distance(region_mask)
        return [self._to_world(c) for c in measure.find_contours(edt, radius)]

    def opening_contours(self, level: float, radius: float,
                         seed: Vec2) -> list[np.ndarray]:
        """Subpixel boundary of the opened free region at the given level.

        The erosion comes straight from the sampled field (cells at least
        level+radius clear of material), the dilation from the distance
        transform of that cell set, so the only quantization is the cell
        binarization itself.
        """
        er = self.component_mask(self.free_mask(level + radius), seed)
        return self.region_offset_contours(er, radius)

    # -- serialization -----------------------------------------------------

    def dump_pgm(self, path: str) -> None:
        """16-bit PGM of the signed field plus a JSON sidecar with the scale."""
        vmin = float(self.values.min())
        vmax = float(self.values.max())
        span = max(vmax - vmin, 1e-300)
        scaled = np.round((self.values - vmin) / span * 65535.0)
        data = scaled.astype(">u2")
        ny, nx = self.values.shape
        with open(path, "wb") as fh:
            fh.write(f"P5\n{nx} {ny}\n65535\n".encode("ascii"))
            fh.write(data.tobytes())
        meta = {
            "origin": [self.origin[0], self.origin[1]],
            "pitch": self.pitch,
            "shape": [ny, nx],
            "value_min": vmin,
            "value_max": vmax,
            "encoding": "value = value_min + gray/65535 * (value_max - value_min)",
        }
        with open(path + ".json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")


def build_grid_oracle(scene: "Scene", pitch: float | None = None,
                      pad: float | None = None) -> GridOracle:
    """Sample the scene's distance field on a regular grid.

    Default pitch is diameter/512, coarsened if the cell budget would be
    blown. The window covers the obstacle bbox plus the robot start, padded
    far enough to contain every region later asked about.
    """
    cfg = scene.config
    if pitch is None:
        pitch = scene.diameter / cfg.pitch_divisor
    if pad is None:
        pad = scene.d0 + 2.0 * scene.r_fence
    x0, y0, x1, y1 = scene.bbox()
    x0 = min(x0, scene.r_in.x) - pad
    y0 = min(y0, scene.r_in.y) - pad
    x1 = max(x1, scene.r_in.x) + pad
    y1 = max(y1, scene.r_in.y) + pad
    while ((x1 - x0) / pitch + 1) * ((y1 - y0) / pitch + 1) > cfg.cell_budget:
        pitch *= 1.5
    nx = int(math.ceil((x1 - x0) / pitch)) + 1
    ny = int(math.ceil((y1 - y0) / pitch)) + 1

    samples = _boundary_samples(scene, pitch / 2.0)
    tree = cKDTree(samples)
    xs = x0 + np.arange(nx) * pitch
    ys = y0 + np.arange(ny) * pitch
    gx, gy = np.meshgrid(xs, ys)
    pts = np.column_stack((gx.ravel(), gy.ravel()))
    dist, _ = tree.query(pts, workers=-1)
    values = dist.reshape(ny, nx)

    material = _material_mask(scene, xs, ys)
    values = np.where(material, -values, values)
    return GridOracle((x0, y0), pitch, values, material, tree)


def _boundary_samples(scene: "Scene", spacing: float) -> np.ndarray:
    from .scene import LoopObstacle, PointObstacle
    chunks = []
    for ob in scene.obstacles:
        if isinstance(ob, PointObstacle):
            chunks.append(np.array([[ob.point.x, ob.point.y]]))
        else:
            chunks.append(ob.boundary.sample(spacing))
    return np.vstack(chunks)


def _material_mask(scene: "Scene", xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Even-odd material membership for every grid node.

    Scanline crossings per row against each loop's dense polyline; point
    obstacles have measure zero and are skipped.
    """
    from .scene import LoopObstacle
    mask = np.zeros((len(ys), len(xs)), dtype=bool)
    for ob in scene.obstacles:
        if not isinstance(ob, LoopObstacle):
            continue
        poly = ob.boundary.sample((xs[1] - xs[0]) / 2.0)
        inside = _even_odd(poly, xs, ys)
        if ob.material == "interior":
            mask |= inside
        else:
            mask |= ~inside
    return mask


def _even_odd(poly: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized scanline parity test for a closed polyline."""
    x0 = poly[:-1, 0]; y0 = poly[:-1, 1]
    x1 = poly[1:, 0]; y1 = poly[1:, 1]
    keep = np.abs(y1 - y0) > 1e-300
    x0, y0, x1, y1 = x0[keep], y0[keep], x1[keep], y1[keep]
    out = np.zeros((len(ys), len(xs)), dtype=bool)
    for iy, y in enumerate(ys):
        hits = (y0 <= y) != (y1 <= y)
        if not hits.any():
            continue
        xc = x0[hits] + (y - y0[hits]) * (x1[hits] - x0[hits]) / (y1[hits] - y0[hits])
        xc.sort()
        idx = np.searchsorted(xc, xs, side="right")
        out[iy] = (idx % 2) == 1
    return out


def hausdorff_to_polyline(points: np.ndarray, poly: np.ndarray) -> float:
    """Max distance from each of points to the vertex set of poly.

    Both inputs dense enough that vertex distance stands in for curve
    distance to within the sampling spacing.
    """
    tree = cKDTree(poly)
    d, _ = tree.query(points, workers=-1)
    return float(d.max())
