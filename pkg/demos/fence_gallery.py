"""Build fences for every bundled scene and describe their anatomy.

For each scene: erode the free region behind the perimeter by the fence
radius, roll a disc of that radius along each eroded component, and
report what the disc's rim traced. Where the disc pivots on a corner of
the eroded region, the fence gets a gate arc and the corner becomes a
door stone sealing off a stretch of perimeter (its cave). One SVG per
scene lands in the output directory.
"""

import argparse
import glob
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from fenceforge import (Scene, build_fence, compute_erosion, extract_perimeter,
                        select_initial_fence, validate_loop)
from fenceforge.svg import render_svg


def describe(name, scene):
    peri = extract_perimeter(scene)
    erosion = compute_erosion(scene, peri, scene.r_fence)
    fences = [build_fence(scene, peri, erosion, i)
              for i in range(len(erosion.components))]
    initial = select_initial_fence(scene, fences)
    print(f"\n=== {name}: radius {scene.r_fence}, "
          f"{len(fences)} component(s), initial fence #{initial}")
    for i, fence in enumerate(fences):
        gates = sum(len(st.gate_segments) for st in fence.door_stones)
        rep = validate_loop(fence.chain, scene.r_fence, scene.r_op)
        print(f"  fence {i}: {len(fence.chain.segments)} segments "
              f"({gates} gates), length {fence.chain.length:.5g}, "
              f"trackable: {'yes' if rep.ok else rep.issues}")
        for j, st in enumerate(fence.door_stones):
            caves = ", ".join(f"{c.length:.4g}" for c in st.caves)
            print(f"    stone {j} at ({st.center.x:.5g}, {st.center.y:.5g}), "
                  f"swing {st.span:.4g} rad, sealed perimeter: {caves}")
    return peri, erosion, fences


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default_dir = os.path.join(os.path.dirname(__file__), os.pardir, "scenes")
    ap.add_argument("scene_dir", nargs="?", default=default_dir)
    ap.add_argument("--out", default="gallery")
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    for path in sorted(glob.glob(os.path.join(args.scene_dir, "*.json"))):
        name = os.path.splitext(os.path.basename(path))[0]
        scene = Scene.from_file(path)
        peri, erosion, fences = describe(name, scene)
        svg = os.path.join(args.out, name + ".svg")
        render_svg(scene, {"perimeter": peri, "erosion": erosion,
                           "fences": fences}, svg)
        print(f"  wrote {svg}")


if __name__ == "__main__":
    main()
