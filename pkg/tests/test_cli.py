import json
import os
import subprocess
import sys

import pytest

from eqlefschetz import corpus
from eqlefschetz.cli import main

SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None, err


@pytest.fixture(scope="module")
def exported(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    assert main(["corpus", "--export", str(d)]) == 0
    return d


def files(d, name, fixed=True):
    base = os.path.join(d, name)
    args = ["--group", base + ".group.json", "--complex", base + ".complex.json", "--map", base + ".map.json"]
    if fixed:
        args += ["--fixed", base + ".fixed.json"]
    return args


def test_analyze_example(capsys):
    code, out, _ = run_json(capsys, "analyze", "--example", "north-south-reflection")
    assert code == 0
    assert len(out["objects"]) == 3
    assert {c["label"] for c in out["subgroup_classes"]} == {"1", "2"}


def test_lambda_example(capsys):
    code, out, _ = run_json(capsys, "lambda", "--example", "north-south-reflection")
    assert code == 0
    assert out["augmented"] == {"(1)@0": -1, "(2)@0": 1, "(2)@3": 1}


def test_text_output(capsys):
    code, out, _ = run(capsys, "lambda", "--example", "sphere-push")
    assert code == 0
    assert "augmented" in out and "(1)@0" in out


@pytest.mark.parametrize("name", ["north-south", "north-south-reflection", "sphere-push", "free-rotation",
                                  "sphere-push-c3"])
def test_verify_from_files(capsys, exported, name):
    code, out, _ = run_json(capsys, "verify", *files(exported, name))
    assert code == 0
    assert out["ok"] and out["canonical"]["equal"]


def test_seed_gives_identical_output(capsys, exported):
    outs = []
    for seed in (0, 5, 11):
        code, out, _ = run_json(capsys, "verify", *files(exported, "north-south-reflection"), "--seed", str(seed))
        assert code == 0
        outs.append(out["canonical"]["lambda"])
    assert outs[0] == outs[1] == outs[2]


def test_lambda_loc_from_files(capsys, exported):
    code, out, _ = run_json(capsys, "lambda-loc", *files(exported, "north-south-reflection"), "--seed", "3")
    assert code == 0
    code2, lam, _ = run_json(capsys, "lambda", *files(exported, "north-south-reflection", fixed=False))
    assert out["lambda_loc"] == lam["lambda"]


def test_mismatch_exit_code(capsys, exported, tmp_path):
    bad = tmp_path / "fixed.json"
    bad.write_text(json.dumps([corpus.datum(0, [[1]]), corpus.datum(3, [[1]])]))
    args = files(exported, "north-south", fixed=False) + ["--fixed", str(bad)]
    code, out, _ = run_json(capsys, "verify", *args)
    assert code == 1
    assert not out["ok"]
    assert "(1)@0" in out["diff"]


def test_malformed_json(capsys, exported, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"vertices": 3,\n "simplices": [[0, 1]')
    code, _, err = run(capsys, "analyze", "--complex", str(bad))
    assert code == 2
    assert f"{bad}:2:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "--complex", "/nonexistent/x.json")
    assert code == 2
    assert "cannot read" in err


def test_unknown_example(capsys):
    code, _, err = run(capsys, "lambda", "--example", "no-such-thing")
    assert code == 2


def test_singular_datum_is_input_error(capsys, exported, tmp_path):
    bad = tmp_path / "fixed.json"
    bad.write_text(json.dumps([corpus.datum(0, [[0]]), corpus.datum(3, [[1]])]))
    code, _, err = run(capsys, "verify", *files(exported, "north-south", fixed=False), "--fixed", str(bad))
    assert code == 2
    assert "SingularFixedPoint" in err


def test_empty_complex(capsys, tmp_path):
    c = tmp_path / "empty.json"
    c.write_text(json.dumps({"vertices": 0, "simplices": []}))
    code, out, _ = run_json(capsys, "analyze", "--complex", str(c))
    assert code == 0
    assert out["lambda"] == {}


def test_burnside_sphere(capsys, tmp_path):
    s = tmp_path / "sphere.json"
    g = tmp_path / "group.json"
    g.write_text(json.dumps({"degree": 2, "generators": [[1, 0]], "generator_names": ["s"]}))
    s.write_text(json.dumps({"dim": 1, "rep_action": {"s": [[-1]]}, "map": [[-1]]}))
    code, out, _ = run_json(capsys, "burnside", "--group", str(g), "--sphere", str(s))
    assert code == 0
    assert out["degree"] == {"1": -1, "2": 1}


def test_split_command(capsys):
    code, out, _ = run_json(capsys, "split", "--example", "swap-disks")
    assert code == 0
    assert out["type_blocks"]["ok"]
    assert [c["length"] for c in out["components"]] == [2, 2]


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=os.path.abspath(SRC))
    res = subprocess.run([sys.executable, "-m", "eqlefschetz", "corpus", "--format", "json"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert "north-south" in json.loads(res.stdout)["examples"]
