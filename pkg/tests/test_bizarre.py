import math

import pytest

from fenceforge.bizarre import (
    CASE_BRIDGE,
    CASE_COLLAPSE,
    CASE_LOCUS,
    enumerate_bizarre,
    is_bizarre,
)
from conftest import corridor_scene, notch_scene, point_pair_scene, NOTCH_RADIUS


def values(scene):
    return [c.value for c in enumerate_bizarre(scene)]


def all_cases(scene, value):
    for c in enumerate_bizarre(scene):
        if abs(c.value - value) < 1e-9:
            return set(c.cases)
    return set()


def test_disc_has_no_degenerate_clearance(disc):
    assert enumerate_bizarre(disc) == ()


def test_smooth_corpus_scenes_are_clean(scenes):
    for name in ("peanut", "rounded_square"):
        assert enumerate_bizarre(scenes[name]) == (), name


def test_twopoints_bridge(scenes):
    vals = values(scenes["twopoints"])
    assert vals == [pytest.approx(0.48)]
    assert all_cases(scenes["twopoints"], 0.48) == {CASE_BRIDGE}


def test_u_cave_candidates(u_cave):
    vals = values(u_cave)
    # half the mouth width, then half the prong-tip diagonal
    assert vals == [pytest.approx(0.8), pytest.approx(math.sqrt(6.56) / 2)]
    assert CASE_LOCUS in all_cases(u_cave, 0.8)


def test_notch_collapse_value():
    sc = notch_scene()
    assert NOTCH_RADIUS in [pytest.approx(v) for v in values(sc)]
    # the bite's diameter is also a legitimate mutual normal, so the
    # bridge case may ride along; the collapse must be named
    assert CASE_COLLAPSE in all_cases(sc, NOTCH_RADIUS)


def test_corridor_locus_value():
    sc = corridor_scene(gap=1.2)
    cands = [c for c in enumerate_bizarre(sc) if abs(c.value - 0.6) < 1e-9]
    assert len(cands) == 1
    assert CASE_LOCUS in cands[0].cases


def test_point_pair_bridge_value():
    sc = point_pair_scene(gap=1.2)
    cands = enumerate_bizarre(sc)
    assert [c.value for c in cands] == [pytest.approx(0.6)]
    assert cands[0].cases == (CASE_BRIDGE,)


def test_candidates_sorted_positive(scenes):
    for name, sc in scenes.items():
        vals = values(sc)
        assert vals == sorted(vals), name
        assert all(v > 0 for v in vals), name


def test_is_bizarre_matches_exact_and_near(u_cave):
    hit = is_bizarre(u_cave, 0.8)
    assert hit.bizarre
    assert {c for c, _ in hit.matches} >= {CASE_LOCUS}
    assert all(v == pytest.approx(0.8) for _, v in hit.matches)
    near = is_bizarre(u_cave, 0.8 + 1e-13)
    assert near.bizarre  # within the matching tolerance
    miss = is_bizarre(u_cave, 0.73)
    assert not miss.bizarre
    assert miss.matches == ()


def test_verdict_json(u_cave):
    doc = is_bizarre(u_cave, 0.8).to_json()
    assert doc["bizarre"] is True
    assert {"case", "value"} <= set(doc["matches"][0])


def test_far_walls_do_not_bridge():
    # corridor walls also face outward; the outer faces are 4.0 apart but
    # material blocks the connector, so 2.0 must not be listed
    sc = corridor_scene(gap=1.2)
    assert all(abs(v - 2.0) > 1e-6 for v in values(sc))
