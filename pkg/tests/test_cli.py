import json

import pytest

from galois_forge.cli import SEED_ENV, main

REFERENCE_CSV = "133,65,26,85,15,30,24,-10,1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_forge_reference_example(capsys):
    code, doc, _ = run_json(capsys, "forge", "--paper-example")
    assert code == 0 and doc["ok"]
    res = doc["result"]
    assert res["f"] == REFERENCE_CSV.split(",")
    assert res["k"] == "4" and res["minimal_k"] == "4" and res["reproduces"]
    assert res["closure_oracle"] == {"generates_symmetric_group": True, "order": "40320"}
    assert set(doc) >= {"version", "command", "params", "seed", "ok", "result", "certificate"}


def test_forge_degree_8(capsys):
    code, doc, _ = run_json(capsys, "forge", "--degree", "8", "--seed", "42")
    assert code == 0
    assert doc["seed"] == "42"
    assert doc["certificate"]["vdw"]["pass"]
    assert len(doc["result"]["f"]) == 9


def test_forge_is_byte_identical(capsys):
    first = run(capsys, "forge", "--degree", "10", "--seed", "7", "--json")
    second = run(capsys, "forge", "--degree", "10", "--seed", "7", "--json")
    assert first == second


def test_forge_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "42")
    _, from_env, _ = run_json(capsys, "forge", "--degree", "8")
    _, from_flag, _ = run_json(capsys, "forge", "--degree", "8", "--seed", "42")
    assert from_env == from_flag
    # the flag wins over the environment
    _, other, _ = run_json(capsys, "forge", "--degree", "8", "--seed", "3")
    assert other["seed"] == "3"


def test_forge_usage_errors(capsys):
    assert run(capsys, "forge", "--degree", "7")[0] == 1
    assert run(capsys, "forge", "--degree", "4")[0] == 1
    assert run(capsys, "forge")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["forge", "--degree", "eight"])
    assert info.value.code == 1


def test_forge_small_degree_warns(capsys):
    code, _, err = run(capsys, "forge", "--degree", "6", "--seed", "1")
    assert code == 0 and "warning" in err


def test_forge_k_max_exceeded(capsys):
    code, doc, _ = run_json(capsys, "forge", "--degree", "8", "--seed", "42", "--k-max", "0")
    assert code == 2 and not doc["ok"]


def test_verify(capsys):
    code, doc, _ = run_json(capsys, "verify", REFERENCE_CSV)
    assert code == 0 and doc["result"]["scenic"]
    code, doc, _ = run_json(capsys, "verify", "--poly", "1,0,1")
    assert code == 2 and not doc["ok"]
    code, doc, _ = run_json(capsys, "verify", "--poly", "-1,0,0,0,0,0,0,0,1")
    assert code == 2 and doc["certificate"]["real_root_count"] == 2


def test_verify_reads_file(capsys, tmp_path):
    path = tmp_path / "f.csv"
    path.write_text(REFERENCE_CSV + "\n")
    assert run(capsys, "verify", "--file", str(path))[0] == 0


def test_verify_rejects_garbage(capsys):
    assert run(capsys, "verify", "1,x")[0] == 1
    assert run(capsys, "verify")[0] == 1


def test_torus(capsys):
    code, doc, _ = run_json(capsys, "torus", REFERENCE_CSV)
    assert code == 0 and doc["ok"]
    assert len(doc["result"]["J"]) == 8
    assert all(v < 1e-8 for k, v in doc["residuals"].items() if k in ("J_squared_plus_I", "J_C_minus_C_J"))


def test_torus_gaussian_and_selection(capsys):
    code, doc, _ = run_json(capsys, "torus", "1,0,1")
    assert code == 0
    assert doc["result"]["J"] == [[0.0, -1.0], [1.0, 0.0]]
    code, doc, _ = run_json(capsys, "torus", "1,0,1", "--select", "-")
    assert doc["result"]["J"] == [[0.0, 1.0], [-1.0, 0.0]]
    assert run(capsys, "torus", "1,0,1", "--select", "x")[0] == 1


def test_torus_real_roots(capsys):
    code, doc, _ = run_json(capsys, "torus", "--poly", "-1,0,1")
    assert code == 2 and doc["result"]["error"] == "RealRootDetected"


def test_scan_workers_do_not_change_output(capsys):
    one = run(capsys, "scan", REFERENCE_CSV, "--prime-bound", "3000", "--workers", "1", "--json")
    many = run(capsys, "scan", REFERENCE_CSV, "--prime-bound", "3000", "--workers", "8", "--json")
    assert one[0] == 0 and one == many
    doc = json.loads(one[1])
    assert doc["result"]["primes_used"] == sum(doc["result"]["buckets"].values())


def test_scan_rejects_bad_workers(capsys):
    assert run(capsys, "scan", REFERENCE_CSV, "--workers", "0")[0] == 1


@pytest.mark.parametrize(
    "model, verdict",
    [("total-iii", "Terminal"), ("total-i", "Terminal"), ("base-ii", "Terminal")],
)
def test_ages_models(capsys, model, verdict):
    code, doc, _ = run_json(capsys, "ages", "--model", model, "--n", "4")
    assert code == 0 and doc["result"]["verdict"] == verdict


def test_ages_total_iii_n1(capsys):
    code, doc, _ = run_json(capsys, "ages", "--model", "total-iii", "--n", "1")
    assert doc["result"]["verdict"] == "CanonicalNotTerminal"
    assert sorted(doc["result"]["ages"]) == ["1", "3/2", "3/2"]


def test_ages_from_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"generators": [{"order": 3, "rotations": [1, 1, 1]}]}))
    code, doc, _ = run_json(capsys, "ages", "--file", str(path))
    assert code == 0 and doc["result"]["verdict"] == "CanonicalNotTerminal"
    path.write_text(json.dumps([{"order": 2, "rotations": [1, 0]}]))
    assert run(capsys, "ages", "--file", str(path))[0] == 2


@pytest.mark.parametrize("content", ["not json", "[{\"order\": 2}]", "{\"rotations\": [1]}", "[{\"order\": \"x\", \"rotations\": [1]}]"])
def test_ages_malformed_file(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(capsys, "ages", "--file", str(path))[0] == 1


def test_ages_usage(capsys):
    assert run(capsys, "ages")[0] == 1
    assert run(capsys, "ages", "--model", "total-iv")[0] == 1


def test_negative_leading_coefficient_as_positional(capsys):
    code, doc, _ = run_json(capsys, "verify", "-1,0,1")
    assert code == 2 and doc["params"]["poly"] == "-1,0,1"
