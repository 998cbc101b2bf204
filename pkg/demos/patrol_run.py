"""Simulate a patrol: approach the fence, settle onto it, go around.

The vehicle moves at constant speed and can only steer so hard, so it
first flies a shortest bounded-turn approach to the fence, then hands
over to the tracking law. After the run, a security check tries to build
a certificate that the whole converged stretch stayed covered by a disc
moving inside the eroded free region. Outputs: a trajectory CSV and an
SVG of the whole affair.

    python3 demos/patrol_run.py scenes/peanut.json --laps 2
"""

import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from fenceforge import (Scene, build_fence, check_initial_clearance,
                        compute_erosion, extract_perimeter,
                        select_initial_fence, track_fence, verify_secure)
from fenceforge.svg import render_svg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("scene", nargs="?", default=os.path.join(
        os.path.dirname(__file__), os.pardir, "scenes", "peanut.json"))
    ap.add_argument("--laps", type=float, default=2.0,
                    help="how many circuits to aim for")
    ap.add_argument("--radius", type=float, default=None,
                    help="fence radius (default: the scene's fence radius)")
    ap.add_argument("--out", default="patrol")
    args = ap.parse_args()

    scene = Scene.from_file(args.scene)
    peri = extract_perimeter(scene)
    launch = check_initial_clearance(scene, peri)
    if not launch.ok:
        print(f"cannot launch: {launch.reason}")
        sys.exit(1)

    radius = args.radius if args.radius is not None else scene.r_fence
    erosion = compute_erosion(scene, peri, radius)
    fences = [build_fence(scene, peri, erosion, i)
              for i in range(len(erosion.components))]
    fence = fences[select_initial_fence(scene, fences)]
    print(f"fence: radius {radius}, length {fence.chain.length:.5g}, "
          f"{len(fence.door_stones)} door stone(s)")

    horizon = 3.0 + args.laps * fence.chain.length / scene.v
    traj = track_fence(scene, fence, horizon)
    summ = traj.summary()
    print(f"simulated {summ['duration']:.4g} s in {summ['steps']} steps")
    print(f"  approach ends     {summ['approach_ends_at']:.4g} s")
    conv = summ["converged_at"]
    print(f"  converged at      {conv:.4g} s" if conv is not None
          else "  never converged")
    print(f"  circuits          {summ['laps']:.3f}")
    print(f"  min clearance     {summ['min_clearance']:.5g} "
          f"(floor is d0 = {scene.d0})")
    if summ["steady_max_cross_track"] is not None:
        print(f"  steady error      {summ['steady_max_cross_track']:.3g} "
              f"(band {1e-2 * scene.r_min:.3g})")

    report = verify_secure(scene, peri, traj)
    print(f"security: {report.reason}")

    os.makedirs(args.out, exist_ok=True)
    base = os.path.join(
        args.out, os.path.splitext(os.path.basename(args.scene))[0])
    traj.to_csv(base + ".csv")
    summ["security"] = report.to_json()
    with open(base + ".summary.json", "w", encoding="utf-8") as fh:
        json.dump(summ, fh, indent=2, sort_keys=True)
        fh.write("\n")
    render_svg(scene, {"perimeter": peri, "fence": fence,
                       "trajectory": traj}, base + ".svg")
    print(f"wrote {base}.csv, {base}.summary.json, {base}.svg")


if __name__ == "__main__":
    main()
