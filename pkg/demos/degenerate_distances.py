"""Show the three ways a clearance distance can go wrong.

Builds one miniature scene per failure mode, asks the enumerator what it
found, and probes a few values around each candidate. The point of the
exercise: validation can refuse a clearance BEFORE any offset machinery
runs on it, because the complete candidate list is computable up front.
"""

import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from fenceforge import Scene, enumerate_bizarre, is_bizarre


def scene_from(obstacles, robot):
    return Scene.from_json({
        "params": {"d0": 0.3, "r_min": 0.1, "r_op": 0.15,
                   "r_fence": 0.45, "v": 1.0},
        "robot": robot,
        "obstacles": obstacles,
    })


def bite_scene():
    """A block with a semicircular bite of radius 0.5 in its top face."""
    return scene_from([{"type": "loop", "material": "interior", "segments": [
        {"kind": "line", "a": [-2, -2], "b": [2, -2]},
        {"kind": "line", "a": [2, -2], "b": [2, 2]},
        {"kind": "line", "a": [2, 2], "b": [0.5, 2]},
        {"kind": "arc", "center": [0.0, 2.0], "radius": 0.5,
         "start_angle": 0.0, "sweep": -math.pi},
        {"kind": "line", "a": [-0.5, 2], "b": [-2, 2]},
        {"kind": "line", "a": [-2, 2], "b": [-2, -2]},
    ]}], {"x": 0.0, "y": 3.2, "theta": 0.0})


def corridor_scene():
    """Two blocks with parallel facing walls 1.2 apart."""
    def block(xa, xb):
        return {"type": "loop", "material": "interior", "segments": [
            {"kind": "line", "a": [xa, -1], "b": [xb, -1]},
            {"kind": "line", "a": [xb, -1], "b": [xb, 1]},
            {"kind": "line", "a": [xb, 1], "b": [xa, 1]},
            {"kind": "line", "a": [xa, 1], "b": [xa, -1]},
        ]}
    return scene_from([block(-2, -0.6), block(0.6, 2)],
                      {"x": 0.0, "y": 2.6, "theta": 0.0})


def point_pair_scene():
    """Two isolated points 1.2 apart."""
    return scene_from([{"type": "point", "x": -0.6, "y": 0.0},
                       {"type": "point", "x": 0.6, "y": 0.0}],
                      {"x": 0.0, "y": 1.6, "theta": 0.0})


def report(title, scene):
    print(f"\n=== {title}")
    cands = enumerate_bizarre(scene)
    if not cands:
        print("  no degenerate clearances")
        return
    for c in cands:
        print(f"  candidate {c.value:.12g}")
        for case, note in zip(c.cases, c.notes):
            print(f"    [{case}] {note}")
        for probe in (c.value - 0.05, c.value, c.value + 0.05):
            verdict = is_bizarre(scene, probe)
            tag = "degenerate" if verdict.bizarre else "clean"
            print(f"    probe {probe:.4g}: {tag}")


def main() -> None:
    report("concave arc that its own offset swallows", bite_scene())
    report("facing walls with a continuum of midpoints", corridor_scene())
    report("two points joined by a free bridge", point_pair_scene())
    print("\nAny of these values, used as a clearance, would make the "
          "equidistant set fail to be a clean set of loops; the pipeline "
          "refuses them up front.")


if __name__ == "__main__":
    main()
