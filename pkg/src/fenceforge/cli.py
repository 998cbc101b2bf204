"""Command-line front end.

Exit codes: 0 success, 1 the scene is invalid or violates an assumption,
2 internal inconsistency or usage error. Scene problems print a JSON error
object so scripted callers can branch on the reason.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import fmt_float, load_config
from .errors import ConsistencyError, SceneError


def _error_json(exc: SceneError) -> str:
    return json.dumps({"error": exc.reason, "detail": exc.detail},
                      sort_keys=True)


def _load(path: str):
    from .scene import Scene
    return Scene.from_file(path)


def _dump(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_validate(args) -> int:
    from .scene import validate
    scene = _load(args.scene)
    report = validate(scene)
    _dump(report.to_json(), args.output)
    return 0 if report.ok else 1


def cmd_bizarre(args) -> int:
    from .bizarre import enumerate_bizarre, is_bizarre
    scene = _load(args.scene)
    if args.test is not None:
        verdict = is_bizarre(scene, args.test)
        _dump(verdict.to_json(), args.output)
        return 0
    cands = enumerate_bizarre(scene)
    _dump({"candidates": [
        {"value": fmt_float(c.value), "cases": list(c.cases),
         "notes": list(c.notes)} for c in cands]}, args.output)
    return 0


def cmd_perimeter(args) -> int:
    from .offsets import extract_perimeter
    scene = _load(args.scene)
    peri = extract_perimeter(scene)
    _dump(peri.to_json(), args.output)
    if args.svg:
        from .svg import render_svg
        render_svg(scene, {"perimeter": peri}, args.svg)
    return 0


def cmd_fence(args) -> int:
    from .fences import build_fence, compute_erosion, select_initial_fence
    from .offsets import extract_perimeter
    scene = _load(args.scene)
    radius = args.radius if args.radius is not None else scene.r_fence
    peri = extract_perimeter(scene)
    erosion = compute_erosion(scene, peri, radius)
    fences = [build_fence(scene, peri, erosion, i)
              for i in range(len(erosion.components))]
    if not fences:
        raise SceneError("erosion-empty",
                         f"no free region survives erosion by {radius:.6g}")
    initial = None
    try:
        initial = select_initial_fence(scene, fences)
    except SceneError:
        pass
    _dump({"initial": initial,
           "fences": [f.to_json() for f in fences]}, args.output)
    if args.svg:
        from .svg import render_svg
        render_svg(scene, {"perimeter": peri, "erosion": erosion,
                           "fences": fences}, args.svg)
    return 0


def cmd_simulate(args) -> int:
    from .dubins import track_fence, verify_secure
    from .fences import build_fence, compute_erosion, select_initial_fence
    from .offsets import extract_perimeter
    from .scene import check_initial_clearance
    scene = _load(args.scene)
    peri = extract_perimeter(scene)
    clearance = check_initial_clearance(scene, peri)
    if not clearance.ok:
        raise SceneError("launch-condition", clearance.reason,
                         witness=clearance.witness)
    radius = args.radius if args.radius is not None else scene.r_op
    erosion = compute_erosion(scene, peri, radius)
    fences = [build_fence(scene, peri, erosion, i)
              for i in range(len(erosion.components))]
    idx = select_initial_fence(scene, fences)
    traj = track_fence(scene, fences[idx], args.horizon)
    traj.to_csv(args.output)
    report = verify_secure(scene, peri, traj)
    summary = traj.summary()
    summary["security"] = report.to_json()
    _dump(summary, args.output + ".summary.json")
    if args.svg:
        from .svg import render_svg
        render_svg(scene, {"perimeter": peri, "fence": fences[idx],
                           "trajectory": traj}, args.svg)
    return 0


def cmd_oracle(args) -> int:
    from .grid import build_grid_oracle
    scene = _load(args.scene)
    oracle = build_grid_oracle(scene, pitch=args.pitch)
    oracle.dump_pgm(args.output)
    return 0


def cmd_check(args) -> int:
    """Full cross-check battery; prints one line per stage."""
    import numpy as np
    from .distance import dist_to_obstacles, dist_to_perimeter
    from .fences import build_fence, compute_erosion, validate_loop
    from .grid import build_grid_oracle, hausdorff_to_polyline
    from .offsets import extract_perimeter
    from .scene import validate
    scene = _load(args.scene)
    lines = []
    ok = True

    report = validate(scene)
    lines.append(("scene-validation", report.ok))
    ok &= report.ok
    if report.ok:
        peri = extract_perimeter(scene)
        rng = np.random.default_rng(7)
        x0, y0, x1, y1 = scene.bbox()
        worst = 0.0
        n_done = 0
        while n_done < 200:
            p = scene.r_in.__class__(
                float(rng.uniform(x0 - scene.d0, x1 + scene.d0)),
                float(rng.uniform(y0 - scene.d0, y1 + scene.d0)))
            if not peri.free_side_contains(p, strict=True, tol=scene.tol):
                continue
            zd = dist_to_obstacles(scene, p).distance
            zp = dist_to_perimeter(scene, peri, p).distance
            worst = max(worst, abs(zp - (zd - scene.d0)))
            n_done += 1
        good = worst <= 100.0 * scene.tol
        lines.append((f"distance-identity (max dev {worst:.3g})", good))
        ok &= good

        erosion = compute_erosion(scene, peri, scene.r_fence)
        lines.append(("erosion-dual-route", True))
        for i in range(len(erosion.components)):
            fence = build_fence(scene, peri, erosion, i)
            rep = validate_loop(fence.chain, scene.r_fence, scene.r_op)
            lines.append((f"fence-{i}-trackable", rep.ok))
            ok &= rep.ok

        oracle = build_grid_oracle(scene)
        peri_pts = peri.chain.sample(oracle.pitch / 2.0)
        best = None
        for cont in oracle.level_contours(scene.d0):
            h1 = hausdorff_to_polyline(peri_pts, cont)
            h2 = hausdorff_to_polyline(cont, peri_pts)
            h = max(h1, h2)
            if best is None or h < best:
                best = h
        good = best is not None and best <= 2.0 * oracle.pitch
        lines.append((f"perimeter-vs-oracle (Hausdorff {best:.4g}, "
                      f"pitch {oracle.pitch:.4g})", good))
        ok &= good

    for label, passed in lines:
        print(f"{'PASS' if passed else 'FAIL'}  {label}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fenceforge",
        description="Equidistant perimeters, disc fences, and bounded-turn "
                    "fence tracking for planar scenes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("scene", help="scene JSON file")
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, help="check scene assumptions")
    p.add_argument("-o", "--output", default=None)

    p = add("bizarre", cmd_bizarre, help="degenerate clearance candidates")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="list candidates")
    g.add_argument("--test", type=float, default=None,
                   help="test one clearance value")
    p.add_argument("-o", "--output", default=None)

    p = add("perimeter", cmd_perimeter, help="build the outer perimeter")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--svg", default=None)

    p = add("fence", cmd_fence, help="build fences at a radius")
    p.add_argument("--radius", "--R", dest="radius", type=float, default=None)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--svg", default=None)

    p = add("simulate", cmd_simulate, help="track the initial fence")
    p.add_argument("--horizon", type=float, required=True,
                   help="simulated seconds")
    p.add_argument("--radius", type=float, default=None,
                   help="fence radius (default: operational radius)")
    p.add_argument("-o", "--output", required=True, help="trajectory CSV")
    p.add_argument("--svg", default=None)

    p = add("oracle", cmd_oracle, help="dump the distance-field grid")
    p.add_argument("--pitch", type=float, default=None)
    p.add_argument("-o", "--output", required=True, help="16-bit PGM path")

    add("check", cmd_check, help="run the cross-check battery")
    return ap


def cli_main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SceneError as exc:
        sys.stderr.write(_error_json(exc) + "\n")
        return 1
    except ConsistencyError as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli_main())
