import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from minkrep.cli import main
from minkrep.hilbert import inner
from minkrep.scene import SceneError, load_scene, parse_scene

SCENE = Path(__file__).resolve().parents[1] / "scripts" / "example_scene.json"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def minimal_scene(tmp_path, **extra):
    doc = {
        "n_components": 1,
        "states": [{"name": "s", "terms": [{"origin": [0, 0, 0, 0], "span_u": [0, 0, 1, 0],
                                           "span_v": [0, 0, 0, 1], "frame": "standard", "fields": ["1"]}]}],
    }
    doc.update(extra)
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(doc))
    return path


def test_classify(capsys):
    code, doc = run_json(capsys, "classify", "sq", "--scene", SCENE)
    assert code == 0 and doc["info"]["class"] == "SpaceLike"
    code, doc = run_json(capsys, "classify", "slanted", "--scene", SCENE)
    assert code == 1 and doc["info"]["class"] == "TimeLike"
    code, _, err = run(capsys, "classify", "missing", "--scene", SCENE)
    assert code == 2 and "unknown surface" in err


def test_time_like_state_is_refused(capsys):
    code, _, err = run(capsys, "inner", "bad", "v", "--scene", SCENE)
    assert code == 2 and "TimeLike" in err


def test_measure(capsys, tmp_path):
    code, doc = run_json(capsys, "measure", "sq", "--kind", "area", "--scene", SCENE)
    assert code == 0 and abs(doc["info"]["value"] - 1) <= 1e-14
    boosted = {
        "n_components": 1,
        "states": [{"name": "b", "terms": [{
            "name": "boosted", "origin": [0, 0, 0, 0],
            "span_u": [-np.sinh(1), 0, np.cosh(1), 0], "span_v": [0, 0, 0, 1],
            "frame": {"f0": [np.cosh(1), 0, -np.sinh(1), 0], "f1": [0, 1, 0, 0]}, "fields": ["1"]}]}],
    }
    path = tmp_path / "b.json"
    path.write_text(json.dumps(boosted))
    code, doc = run_json(capsys, "measure", "boosted", "--kind", "mink", "--scene", path)
    assert code == 0 and abs(doc["info"]["value"] - 1) <= 1e-10
    code, doc = run_json(capsys, "measure", "boosted", "--kind", "area", "--scene", path)
    assert abs(doc["info"]["value"] - np.sqrt(np.cosh(2))) <= 1e-12
    check = doc["checks"][0]
    assert check["passed"] and check["values"]["delta"] <= 1e-8
    code, doc = run_json(capsys, "measure", "tri", "--kind", "signed", "--scene", SCENE)
    assert code == 0 and doc["info"]["value"] == [0.5, 0.0]


def test_inner(capsys, tmp_path):
    code, doc = run_json(capsys, "inner", "v", "w", "--scene", SCENE)
    assert code == 0
    re, im = doc["info"]["inner"]
    assert abs(complex(re, im) - (0.360644363298924 + 0.14583333333333334j)) <= 1e-12
    other = minimal_scene(tmp_path)
    assert run(capsys, "inner", "s", "s", "--scene", other)[0] == 0
    assert run(capsys, "inner", "s", "nope", "--scene", other)[0] == 2


def test_inner_component_mismatch(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n_components": 2, "states": [{"name": "s", "terms": [{
        "origin": [0, 0, 0, 0], "span_u": [0, 0, 1, 0], "span_v": [0, 0, 0, 1], "fields": ["1"]}]}]}))
    code, _, err = run(capsys, "inner", "s", "s", "--scene", path)
    assert code == 2 and "expected 2 fields" in err


def test_act_round_trip(capsys, tmp_path):
    out = tmp_path / "moved.json"
    code, _, _ = run(capsys, "act", "kick", "v", "--out", out, "--scene", SCENE)
    assert code == 0
    moved = load_scene(out)
    original = load_scene(SCENE)
    a = moved.state("kick.v")
    b = original.state("v")
    assert abs(inner(a, a) - inner(b, b)) <= 1e-10
    # stdout form carries only the document
    code, text, err = run(capsys, "act", "turn", "w", "--scene", SCENE)
    assert code == 0 and json.loads(text)["states"][0]["name"] == "turn.w" and "terms" in err


def test_act_io_error(capsys):
    code, _, err = run(capsys, "act", "kick", "v", "--out", "/nonexistent/dir/x.json", "--scene", SCENE)
    assert code == 3 and "I/O" in err


def test_scene_errors(capsys, tmp_path):
    assert run(capsys, "classify", "sq")[0] == 2  # no --scene
    assert run(capsys, "classify", "sq", "--scene", tmp_path / "absent.json")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", "sq", "--scene", bad)[0] == 2
    with pytest.raises(SceneError):
        parse_scene({"n_components": 0})
    with pytest.raises(SceneError):
        parse_scene({"n_components": 1, "states": [{"name": "a"}, {"name": "a"}]})
    with pytest.raises(SceneError):
        parse_scene({"n_components": 1, "transforms": [{"name": "t", "boost": {"axis": 1, "zeta": 1},
                                                        "rotation": {"axis": 1, "theta": 1}}]})
    with pytest.raises(SceneError):
        parse_scene({"n_components": 1, "transforms": [{"name": "t", "sl2c": [[2, 0], [0, 0], [0, 0], [1, 0]]}]})
    with pytest.raises(SceneError):
        parse_scene({"n_components": 1, "states": [{"name": "a", "terms": [{"origin": [0, 0, 0]}]}]})
    path = minimal_scene(tmp_path, states=[{"name": "s", "terms": [{
        "origin": [0, 0, 0, 0], "span_u": [0, 0, 1, 0], "span_v": [0, 0, 0, 1], "fields": ["x9"]}]}])
    code, _, err = run(capsys, "inner", "s", "s", "--scene", path)
    assert code == 2 and "position" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["measure", "sq", "--kind", "volume", "--scene", str(SCENE)])
    assert info.value.code == 2


def test_verify_deterministic(capsys):
    args = ("verify", "--suite", "all", "--trials", "5", "--seed", "3", "--scene", SCENE, "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    names = [c["name"] for c in json.loads(out1)["checks"]]
    assert "translate-orthonormality" in names and "unitarity-legacy-control" in names


def test_verify_suites(capsys):
    code, doc = run_json(capsys, "verify", "--suite", "identity", "--trials", "5", "--seed", "11")
    assert code == 0 and doc["checks"][0]["values"]["trials"] == 50
    code, doc = run_json(capsys, "verify", "--suite", "orthogonality")
    assert code == 0 and doc["checks"][0]["values"]["size"] == 50
    # an impossible tolerance makes the suite fail with exit code 1
    code, text, _ = run(capsys, "verify", "--suite", "identity", "--trials", "5", "--tol", "0")
    assert code == 1 and "FAIL" in text


def test_text_report_alignment(capsys):
    code, text, _ = run(capsys, "verify", "--suite", "invariance", "--trials", "3")
    rows = [line for line in text.splitlines() if "PASS" in line or "FAIL" in line]
    assert len(rows) == 3
    assert len({line.index("PASS") for line in rows}) == 1


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "minkrep.cli", "classify", "sq", "--scene", str(SCENE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "SpaceLike" in proc.stdout
