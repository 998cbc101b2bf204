import copy
import json
import math

import pytest

from fenceforge import Scene, SceneError, validate
from conftest import (
    CORPUS, line, load_scene_doc, loop, make_scene, scene_path, square_loop,
)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_loads_and_validates(name, scenes):
    rep = validate(scenes[name])
    assert rep.ok, [c.name for c in rep.checks if not c.ok]


@pytest.mark.parametrize("name", CORPUS)
def test_json_roundtrip(name, scenes):
    sc = scenes[name]
    again = Scene.from_json(sc.to_json())
    assert again.d0 == sc.d0
    assert again.r_in.dist(sc.r_in) < 1e-10 * sc.diameter
    assert len(again.obstacles) == len(sc.obstacles)


def test_unknown_top_level_key_rejected():
    doc = load_scene_doc("disc")
    doc["extra"] = 1
    with pytest.raises(SceneError):
        Scene.from_json(doc)


def test_unknown_segment_key_rejected():
    doc = load_scene_doc("rounded_square")
    doc["obstacles"][0]["segments"][0]["color"] = "red"
    with pytest.raises(SceneError):
        Scene.from_json(doc)


def test_unknown_param_rejected():
    doc = load_scene_doc("disc")
    doc["params"]["speed"] = 2.0
    with pytest.raises(SceneError):
        Scene.from_json(doc)


def test_missing_required_key_rejected():
    doc = load_scene_doc("disc")
    del doc["params"]["d0"]
    with pytest.raises(SceneError):
        Scene.from_json(doc)


def test_speed_defaults_to_one():
    doc = load_scene_doc("disc")
    del doc["params"]["v"]
    sc = Scene.from_json(doc)
    assert sc.v == 1.0


def test_not_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(SceneError) as ei:
        Scene.from_file(str(p))
    assert ei.value.reason == "malformed-scene"


def test_interior_loop_is_reoriented_ccw():
    # clockwise input for interior material gets flipped on load
    sq_cw = loop([line((0, 1), (1, 1)), line((1, 1), (1, 0)),
                  line((1, 0), (0, 0)), line((0, 0), (0, 1))])
    sc = make_scene([sq_cw], {"x": 3.0, "y": 0.5, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    ob = sc.obstacles[0]
    assert ob.boundary.orientation() == "ccw"


def test_point_in_material():
    sc = make_scene([square_loop(0, 0, 1.0)], {"x": 3.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    assert sc.point_in_material_point((0.0, 0.0)) if hasattr(sc, "point_in_material_point") else True
    from fenceforge.geometry import Vec2
    assert sc.point_in_material(Vec2(0.0, 0.0))
    assert not sc.point_in_material(Vec2(2.0, 0.0))
    # boundary counts as material
    assert sc.point_in_material(Vec2(1.0, 0.0))


def test_validate_flags_radius_order():
    sc = make_scene([square_loop(0, 0, 1.0)], {"x": 3.0, "y": 0.0, "theta": 0.0},
                    d0=0.1, r_min=0.2, r_op=0.25, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok
    assert any("radius-order" in c.name for c in rep.checks if not c.ok)


def test_validate_flags_robot_in_material():
    sc = make_scene([square_loop(0, 0, 1.0)], {"x": 0.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok
    assert any("robot" in c.name for c in rep.checks if not c.ok)


def test_validate_flags_open_loop():
    bad = loop([line((0, 0), (1, 0)), line((1, 0), (1, 1)),
                line((1, 1), (0.2, 1.1))])
    sc = make_scene([bad], {"x": 3.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok
    assert any("closed" in c.name for c in rep.checks if not c.ok)


def test_validate_flags_self_intersection():
    bowtie = loop([line((0, 0), (2, 2)), line((2, 2), (2, 0)),
                   line((2, 0), (0, 2)), line((0, 2), (0, 0))])
    sc = make_scene([bowtie], {"x": 4.0, "y": 1.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok
    assert any("simple" in c.name for c in rep.checks if not c.ok)


def test_validate_flags_overlapping_obstacles():
    sc = make_scene([square_loop(0, 0, 1.0), square_loop(0.5, 0, 1.0)],
                    {"x": 4.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok
    assert any("disjoint" in c.name for c in rep.checks if not c.ok)


def test_validate_flags_two_room_walls():
    sc = make_scene([square_loop(0, 0, 5.0, material="exterior"),
                     square_loop(0, 0, 6.0, material="exterior")],
                    {"x": 0.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    rep = validate(sc)
    assert not rep.ok


def test_room_scene_validates():
    # a single room wall with one interior island and the robot between
    sc = make_scene([square_loop(0, 0, 5.0, material="exterior"),
                     square_loop(0, 0, 0.8)],
                    {"x": 0.0, "y": 3.0, "theta": 0.0},
                    d0=0.5, r_min=0.1, r_op=0.15, r_fence=0.6)
    rep = validate(sc)
    assert rep.ok, [(c.name, c.detail) for c in rep.checks if not c.ok]


def test_diameter_includes_robot_start():
    sc = make_scene([square_loop(0, 0, 1.0)], {"x": 30.0, "y": 0.0, "theta": 0.0},
                    d0=0.2, r_min=0.05, r_op=0.08, r_fence=0.5)
    assert sc.diameter > 30.0


def test_scene_json_rounds_floats():
    doc = load_scene_doc("peanut")
    sc = Scene.from_json(doc)
    out = json.dumps(sc.to_json())
    # 12 significant digits max in serialized numbers
    assert "0.5410995259571457" not in out


def test_exterior_obstacle_lookup(scenes):
    assert scenes["disc"].exterior_obstacle() is None
    room = make_scene([square_loop(0, 0, 5.0, material="exterior")],
                      {"x": 0.0, "y": 0.0, "theta": 0.0},
                      d0=0.5, r_min=0.1, r_op=0.15, r_fence=0.6)
    assert room.exterior_obstacle() is not None


def test_copy_of_doc_does_not_leak(tmp_path):
    # loading must not mutate the caller's document
    doc = load_scene_doc("disc")
    snapshot = copy.deepcopy(doc)
    Scene.from_json(doc)
    assert doc == snapshot
