import json
import math
import os

import pytest

from fenceforge import Scene, extract_perimeter

SCENE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "scenes")
CORPUS = ["disc", "twopoints", "peanut", "rounded_square", "u_cave"]


def scene_path(name):
    return os.path.join(SCENE_DIR, name + ".json")


@pytest.fixture(scope="session")
def scenes():
    return {name: Scene.from_file(scene_path(name)) for name in CORPUS}


@pytest.fixture(scope="session")
def perimeters(scenes):
    return {name: extract_perimeter(sc) for name, sc in scenes.items()}


@pytest.fixture(scope="session")
def disc(scenes):
    return scenes["disc"]


@pytest.fixture(scope="session")
def u_cave(scenes):
    return scenes["u_cave"]


def make_scene(obstacles, robot, d0=0.3, r_min=0.1, r_op=0.15, r_fence=0.45, v=1.0):
    """Assemble a scene document from shorthand pieces and load it."""
    return Scene.from_json({
        "params": {"d0": d0, "r_min": r_min, "r_op": r_op,
                   "r_fence": r_fence, "v": v},
        "robot": robot,
        "obstacles": obstacles,
    })


def line(a, b):
    return {"kind": "line", "a": list(a), "b": list(b)}


def arc(center, radius, start_angle, sweep):
    return {"kind": "arc", "center": list(center), "radius": radius,
            "start_angle": start_angle, "sweep": sweep}


def loop(segments, material="interior"):
    return {"type": "loop", "material": material, "segments": segments}


def square_loop(cx, cy, half, material="interior"):
    a = (cx - half, cy - half)
    b = (cx + half, cy - half)
    c = (cx + half, cy + half)
    d = (cx - half, cy + half)
    return loop([line(a, b), line(b, c), line(c, d), line(d, a)], material)


def load_scene_doc(name):
    with open(scene_path(name)) as fh:
        return json.load(fh)


NOTCH_RADIUS = 0.5


def notch_scene():
    """Square block with a semicircular concave bite of radius 0.5."""
    return make_scene([loop([
        line((-2, -2), (2, -2)),
        line((2, -2), (2, 2)),
        line((2, 2), (0.5, 2)),
        arc((0.0, 2.0), NOTCH_RADIUS, 0.0, -math.pi),
        line((-0.5, 2), (-2, 2)),
        line((-2, 2), (-2, -2)),
    ])], {"x": 0.0, "y": 3.2, "theta": 0.0})


def corridor_scene(gap=1.2):
    """Two blocks whose facing walls sit gap apart."""
    g = gap / 2.0
    return make_scene([
        loop([line((-2, -1), (-g, -1)), line((-g, -1), (-g, 1)),
              line((-g, 1), (-2, 1)), line((-2, 1), (-2, -1))]),
        loop([line((g, -1), (2, -1)), line((2, -1), (2, 1)),
              line((2, 1), (g, 1)), line((g, 1), (g, -1))]),
    ], {"x": 0.0, "y": 2.6, "theta": 0.0})


def point_pair_scene(gap=1.2):
    g = gap / 2.0
    return make_scene([
        {"type": "point", "x": -g, "y": 0.0},
        {"type": "point", "x": g, "y": 0.0},
    ], {"x": 0.0, "y": 1.6, "theta": 0.0})
