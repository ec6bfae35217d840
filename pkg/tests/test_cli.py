import json
from pathlib import Path

import pytest

from germlab.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_RUNS = {
    "invariants_q11.json": ["invariants", "x^3+y^2*z+x*z^3+z^5", "--vars", "x,y,z", "--json"],
    "classify_e7.json": ["classify", "x^3+x*y^3+z^2+w^2", "--vars", "x,y,z,w", "--json"],
    "j10_1_2.json": ["j10", "--lambda", "1", "--lambda2", "2", "--json"],
    "membership_q11.json": [
        "certify", "membership", "x^3+y^2*z+x*z^3+z^5", "--vars", "x,y,z",
        "--targets", "x^8,y^8,z^8", "--minfil", "4", "--json",
    ],
    "split_a2.json": ["split", "x^2+2*x*y^2+y^3", "--vars", "x,y", "--json"],
    "tables.json": ["tables", "--json"],
    "separation.json": ["separation", "--json"],
}


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv("GERMLAB_SEED", raising=False)


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_output(capsys, name):
    code, out, _ = run(capsys, GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()
    code, again, _ = run(capsys, GOLDEN_RUNS[name])
    assert again == out


def test_invariants_report_lct(capsys):
    _, out, _ = run(capsys, GOLDEN_RUNS["invariants_q11.json"])
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["result"]["lct"]["value"] == "3/2"


def test_membership_report(capsys):
    _, out, _ = run(capsys, GOLDEN_RUNS["membership_q11.json"])
    result = json.loads(out)["result"]["certificate"]
    assert result["verdict"] == "accepted"
    assert all(s["verdict"] == "accepted" for s in result["samples"])


def test_tables_match_codimension(capsys):
    _, out, _ = run(capsys, ["tables", "--json"])
    result = json.loads(out)["result"]
    rows = result["corank_1_2"] + result["corank_3"]
    assert len(rows) == 23 and all(r["matches"] for r in rows)


def test_j10_verdict(capsys):
    _, out, _ = run(capsys, GOLDEN_RUNS["j10_1_2.json"])
    assert json.loads(out)["result"]["verdict"] == "not-equivalent"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["invariants", "0", "--vars", "x"], 2),
        (["invariants", "x^2*y", "--vars", "x,y"], 3),
        (["invariants", "x^3+", "--vars", "x"], 2),
        (["invariants", "x+y^2", "--vars", "x,y"], 3),
        (["milnor", "x^3", "--bogus"], 2),
        (["milnor", "x^3+y^4", "--max-jet", "2"], 4),
        (["certify", "qh-triviality", "S_{1,0}"], 2),
        (["j10", "--lambda", "1/0"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, argv)
    assert got == code
    assert out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1
    payload = json.loads(lines[0])
    assert payload["exit"] == code and payload["reason"]


def test_seed_precedence(capsys, monkeypatch):
    argv = ["milnor", "x^3+y^4", "--json"]
    _, out, _ = run(capsys, argv)
    assert json.loads(out)["seed"] == 1729
    monkeypatch.setenv("GERMLAB_SEED", "7")
    _, out, _ = run(capsys, argv)
    assert json.loads(out)["seed"] == 7
    _, out, _ = run(capsys, argv + ["--seed", "11"])
    assert json.loads(out)["seed"] == 11
    monkeypatch.setenv("GERMLAB_SEED", "seven")
    code, _, _ = run(capsys, argv)
    assert code == 2


def test_timing_only_on_request(capsys):
    _, out, _ = run(capsys, ["milnor", "x^3+y^4", "--json"])
    assert json.loads(out)["timing_ms"] is None
    _, out, _ = run(capsys, ["milnor", "x^3+y^4", "--json", "--timing"])
    assert isinstance(json.loads(out)["timing_ms"], int)


def test_text_output(capsys):
    code, out, _ = run(capsys, ["milnor", "x^3+y^4"])
    assert code == 0 and "milnor: 6" in out


def test_certify_catalog_family(capsys):
    code, out, _ = run(capsys, ["certify", "qh-triviality", "X_9", "--samples", "1,2,-1", "--json"])
    assert code == 0
    result = json.loads(out)["result"]["certificate"]
    # a = 2 violates a^2 != 4 and is dropped
    assert [s["parameter"] for s in result["samples"]] == ["1", "-1"]
    assert result["verdict"] == "accepted"
