import json
import subprocess
import sys

import pytest

from kanforge.cli import main

UP1 = {"tag": "upbox", "box": {"names": ["a0"], "open": "a0",
                               "faces": [{"name": "a0", "bit": 0, "term": {"tag": "base", "value": "*"}}],
                               "base": "*"}}


def plus(n):
    a = f"a{n}"
    return {"tag": "plus", "bound": a, "box": {"names": [a], "open": a, "faces": [
        {"name": a, "bit": 0, "term": {"tag": "base", "value": "*"}}], "base": "*"}}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_of_base(capsys):
    code, out, _ = run(["term", "rank", json.dumps({"tag": "base", "value": "*"})], capsys)
    assert code == 0 and json.loads(out) == {"rank": 0}


def test_subst_on_single_face_up_box_gives_plus(capsys):
    code, out, _ = run(["term", "subst", json.dumps(UP1), "--name", "a0", "--bit", "1"], capsys)
    assert code == 0 and json.loads(out) == plus(0)


def test_alpha_variants_are_equal(capsys):
    code, out, _ = run(["term", "eq", json.dumps(plus(0)), "--other", json.dumps(plus(5))], capsys)
    assert code == 0 and json.loads(out) == {"equal": True}


def test_act(capsys):
    code, out, _ = run(["term", "act", json.dumps(UP1), "--perm", '{"a0": "a2", "a2": "a0"}'], capsys)
    assert json.loads(out)["box"]["names"] == ["a2"]


def test_json_roundtrip_is_bit_exact(capsys):
    text = json.dumps(plus(0), sort_keys=True)
    _, out, _ = run(["term", "act", text, "--perm", "{}"], capsys)
    assert out.strip() == text


def test_schema_error_reports_location(capsys):
    bad = {"tag": "upbox", "box": {"names": ["a0"], "open": "a0", "faces": [], "base": "*"}}
    code, _, err = run(["term", "rank", json.dumps(bad)], capsys)
    assert code == 2 and json.loads(err)["location"] == "$.box"
    code, _, err = run(["term", "rank", "{not json"], capsys)
    assert code == 2 and json.loads(err)["error"] == "SchemaError"


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["laws", "--suite", "nope"])
    assert e.value.code == 2
    assert main(["enumerate", "--rank-max", "4"]) == 2
    assert main(["term", "subst", json.dumps(UP1)]) == 2


def test_enumerate(capsys):
    code, out, _ = run(["enumerate", "--rank-max", "1", "--alphabet", "1", "--check", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["counts"] == {"0": 1, "1": 4} and data["match"]


def test_laws_zero_iterations_is_clean(capsys):
    code, out, _ = run(["laws", "--suite", "all", "--iters", "0", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["clean"] and data["checks"] == {}


def test_laws_failure_exit_code(capsys):
    code, _, _ = run(["laws", "--suite", "zsub", "--iters", "20", "--mutant", "box-freshness"], capsys)
    assert code == 1


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("KANFORGE_SEED", "11")
    _, out, _ = run(["laws", "--suite", "monad", "--iters", "5", "--format", "json"], capsys)
    assert json.loads(out)["seed"] == 11
    monkeypatch.setenv("KANFORGE_SEED", "x")
    assert main(["path-demo"]) == 2


def test_path_demo_is_deterministic(capsys):
    code1, out1, _ = run(["path-demo", "--seed", "4"], capsys)
    code2, out2, _ = run(["path-demo", "--seed", "4"], capsys)
    assert code1 == code2 == 0 and out1 == out2
    assert "counit trace:" in out1 and "rho_r(c(w)) == w: True" in out1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kanforge", "enumerate", "--rank-max", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "rank 0: 1" in proc.stdout
