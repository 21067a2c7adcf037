import io
import json
import subprocess
import sys

import pytest

from minitwistor.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def params_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 3, "lambdas": ["1", "2"], "g_hat": ["1", "0", "1"]}))
    return str(path)


def test_build_surface():
    code, text = run("build-surface", "--n", "4")
    assert code == 0
    assert "K^2=0" in text
    assert text.rstrip().endswith("fail=0")


def test_build_surface_json():
    code, text = run("build-surface", "--n", "5", "--json")
    data = json.loads(text)
    assert code == 0 and data["failures"] == 0 and data["K2"] == -2


def test_build_surface_rejects_small_n():
    assert run("build-surface", "--n", "2")[0] == 2


def test_emit_minitwistor(params_file):
    code, text = run("emit-ideal", "--params", params_file, "--which", "minitwistor")
    assert code == 0
    assert "1 * z4 * z5" in text


def test_emit_branch_is_byte_stable(params_file):
    a = run("emit-ideal", "--params", params_file, "--which", "branch")[1]
    b = run("emit-ideal", "--params", params_file, "--which", "branch")[1]
    assert a == b
    assert a.startswith("branch: 1 * eta1^2 * eta2^2")


def test_emit_json(params_file):
    code, text = run("emit-ideal", "--params", params_file, "--which", "model-x", "--json")
    data = json.loads(text)
    assert [g["tag"] for g in data["generators"]][0] == "scroll.1.2"


@pytest.mark.parametrize("payload", [
    {"n": 3, "lambdas": ["0.5", "2"], "g_hat": []},
    {"n": 3, "lambdas": [1.5, 2], "g_hat": []},
    {"n": 3, "lambdas": ["2", "1"], "g_hat": []},
    {"n": 3, "lambdas": ["1", "2"], "g_hat": [], "c": ["1", "0"]},
    {"n": "3", "lambdas": ["1", "2"]},
])
def test_bad_params_exit_2(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    assert run("emit-ideal", "--params", str(path), "--which", "fiber")[0] == 2


def test_missing_params_file():
    assert run("emit-ideal", "--params", "/nonexistent.json", "--which", "fiber")[0] == 2


def test_verify_default_suite():
    code, text = run("verify", "--n", "6")
    assert code == 0
    assert "fail=0" in text


@pytest.mark.parametrize("n,deg", [(3, 4), (4, 6)])
def test_verify_deep(n, deg):
    code, text = run("verify", "--n", str(n), "--deep", "--json")
    data = json.loads(text)
    assert code == 0
    entry = [e for e in data["entries"] if e["claim_id"] == "models.degree_by_slicing"][0]
    assert entry["computed"] == deg


def test_verify_entries_sorted():
    data = json.loads(run("verify", "--n", "4", "--json")[1])
    ids = [e["claim_id"] for e in data["entries"]]
    assert ids == sorted(ids)


def test_verify_params_mismatch(params_file):
    assert run("verify", "--n", "4", "--params", params_file)[0] == 2


def test_verify_require_admissible_fails_on_generic(params_file):
    assert run("verify", "--n", "3", "--params", params_file, "--require-admissible")[0] == 1


def test_find_admissible_round_trip(tmp_path):
    found = tmp_path / "found.json"
    code, text = run("find-admissible", "--n", "3", "--lambdas", "1", "2", "--seeds", "16",
                     "--write-params", str(found))
    assert code == 0
    assert "admissible=" in text
    code, _ = run("verify", "--n", "3", "--params", str(found), "--require-admissible")
    assert code == 0


def test_find_admissible_no_seeds():
    assert run("find-admissible", "--n", "3", "--lambdas", "1", "2", "--seeds", "0")[0] == 3


def test_find_admissible_bad_lambdas():
    assert run("find-admissible", "--n", "3", "--lambdas", "1", "1")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "minitwistor", "build-surface", "--n", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "pass=" in r.stdout


def test_round_trip_with_cancelling_leading_terms(tmp_path):
    # g_hat^2 - q = 1 here, so the lam-degree of the branch polynomial drops to 2
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 4, "lambdas": ["1", "2", "3"], "g_hat": ["1", "-3", "1"]}))
    assert run("verify", "--n", "4", "--params", str(path), "--require-admissible")[0] == 0
