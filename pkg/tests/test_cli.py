import json
import os
import subprocess

import pytest

from fenceforge.cli import cli_main
from conftest import load_scene_doc, scene_path


def run(capsys, *argv):
    code = cli_main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def write_doc(tmp_path, doc, name="scene.json"):
    path = str(tmp_path / name)
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return path


def test_validate_corpus_scene(capsys, tmp_path):
    out = str(tmp_path / "report.json")
    code, _, _ = run(capsys, "validate", scene_path("disc"), "-o", out)
    assert code == 0
    report = json.load(open(out))
    assert report["ok"] is True
    assert all(c["ok"] for c in report["checks"])


def test_validate_flags_bad_scene(capsys, tmp_path):
    doc = load_scene_doc("disc")
    doc["robot"]["x"] = 0.2  # inside the disc
    path = write_doc(tmp_path, doc)
    code, out, _ = run(capsys, "validate", path)
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False


def test_malformed_scene_prints_error_object(capsys, tmp_path):
    path = str(tmp_path / "broken.json")
    with open(path, "w") as fh:
        fh.write("{this is not json")
    code, _, err = run(capsys, "validate", path)
    assert code == 1
    obj = json.loads(err)
    assert obj["error"] == "malformed-scene"
    assert obj["detail"]


def test_bizarre_listing_and_probe(capsys):
    code, out, _ = run(capsys, "bizarre", scene_path("twopoints"), "--list")
    assert code == 0
    doc = json.loads(out)
    assert [c["value"] for c in doc["candidates"]] == [0.48]

    code, out, _ = run(capsys, "bizarre", scene_path("twopoints"),
                       "--test", "0.48")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["bizarre"] is True

    code, out, _ = run(capsys, "bizarre", scene_path("twopoints"),
                       "--test", "0.5")
    assert json.loads(out)["bizarre"] is False


def test_perimeter_output_is_deterministic(capsys, tmp_path):
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    assert run(capsys, "perimeter", scene_path("peanut"), "-o", a)[0] == 0
    assert run(capsys, "perimeter", scene_path("peanut"), "-o", b)[0] == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    doc = json.load(open(a))
    assert doc["clearance"] == 0.6
    assert len(doc["segments"]) == len(doc["provenance"])


def test_fence_document(capsys, tmp_path):
    out = str(tmp_path / "fences.json")
    code, _, _ = run(capsys, "fence", scene_path("u_cave"), "-o", out)
    assert code == 0
    doc = json.load(open(out))
    assert isinstance(doc["initial"], int)
    fences = doc["fences"]
    assert sum(len(f["door_stones"]) for f in fences) == 1
    assert all(f["radius"] == 1.2 for f in fences)


def test_fence_custom_radius(capsys, tmp_path):
    out = str(tmp_path / "fences.json")
    code, _, _ = run(capsys, "fence", scene_path("disc"),
                     "--radius", "0.5", "-o", out)
    assert code == 0
    doc = json.load(open(out))
    assert doc["fences"][0]["radius"] == 0.5


def test_simulate_writes_csv_and_summary(capsys, tmp_path):
    out = str(tmp_path / "run.csv")
    code, _, _ = run(capsys, "simulate", scene_path("disc"),
                     "--horizon", "4.0", "-o", out)
    assert code == 0
    with open(out) as fh:
        header = fh.readline().strip()
        first = fh.readline()
    assert header == "t,x,y,theta,omega,clearance"
    assert len(first.split(",")) == 6
    summary = json.load(open(out + ".summary.json"))
    assert summary["security"]["ok"] is True
    assert summary["converged_at"] is not None
    assert summary["fence_radius"] == 0.25  # defaults to the operational radius


def test_simulate_refuses_bad_launch(capsys, tmp_path):
    doc = load_scene_doc("disc")
    doc["robot"]["x"] = 1.9  # closer to the perimeter than two turning radii
    path = write_doc(tmp_path, doc)
    out = str(tmp_path / "run.csv")
    code, _, err = run(capsys, "simulate", path, "--horizon", "2.0", "-o", out)
    assert code == 1
    obj = json.loads(err)
    assert obj["error"] == "launch-condition"
    assert "turning circles" in obj["detail"]
    assert not os.path.exists(out)


def test_oracle_dump(capsys, tmp_path):
    out = str(tmp_path / "field.pgm")
    code, _, _ = run(capsys, "oracle", scene_path("disc"),
                     "--pitch", "0.05", "-o", out)
    assert code == 0
    assert open(out, "rb").read(2) == b"P5"
    meta = json.load(open(out + ".json"))
    assert meta["pitch"] == 0.05


def test_check_battery_lines(capsys):
    code, out, _ = run(capsys, "check", scene_path("disc"))
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines)
    stages = [line.split(None, 1)[1] for line in lines]
    assert stages[0] == "scene-validation"
    assert stages[1].startswith("distance-identity")
    assert "erosion-dual-route" in stages
    assert any(s.startswith("fence-0-trackable") for s in stages)
    assert any(s.startswith("perimeter-vs-oracle") for s in stages)


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "perimeter", scene_path("disc"))[0] == 2  # missing -o


def test_installed_entry_point(tmp_path):
    out = str(tmp_path / "report.json")
    proc = subprocess.run(
        ["fenceforge", "validate", scene_path("disc"), "-o", out],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.load(open(out))["ok"] is True
