#!/usr/bin/env python3
"""
Tests for the command-line front end
"""
import json
from pathlib import Path

import pytest

import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.json")


def test_classify_skew_jets(capsys):
    code, out = run(capsys, "classify", "--scheme", fixture_path("skew_two_jets_p3"), "--degree", 5)
    data = json.loads(out)
    assert code == main.EXIT_OK
    assert data["schema_version"] == main.SCHEMA_VERSION
    assert data["rank"] == 10
    assert data["stratum"].startswith("sigma_{4,10}")


def test_classify_unclassified_exits_3(capsys):
    code, out = run(capsys, "classify", "--scheme", fixture_path("tangent_point_p2"), "--degree", 5)
    assert code == main.EXIT_UNCLASSIFIED
    assert json.loads(out)["verdict"] == "unclassified"


def test_classify_table_format(capsys):
    code, out = run(capsys, "classify", "--scheme", fixture_path("four_jet_p3"), "-d", 3, "--format", "table")
    assert code == main.EXIT_OK
    assert "configuration" in out and "III1-curvilinear" in out


@pytest.mark.parametrize("argv", [
    ["classify", "--scheme", "does/not/exist.json", "--degree", "5"],
    ["classify", "--degree", "5"],
    ["classify", "--scheme", str(FIXTURES / "skew_two_jets_p3.json"), "--degree", "2"],
    ["sylvester", "--form", "x0^2 + x1"],
])
def test_bad_input_exits_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == main.EXIT_BAD_INPUT


def test_bad_scheme_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 2, "components": [{"type": "jet", "support": [1, 0, 0]}]}')
    code, _ = run(capsys, "classify", "--scheme", bad, "--degree", 4)
    assert code == main.EXIT_BAD_INPUT


def test_sylvester_tangent_case(capsys):
    code, out = run(capsys, "sylvester", "--form", "x0^5*x1")
    data = json.loads(out)
    assert code == main.EXIT_OK
    assert (data["rank"], data["border_rank"], data["tangent_case"]) == (6, 2, True)
    assert data["verified"]
    assert len(data["witness_poly"]) == 7
    assert "rational_points" in data and "witness" not in data


def test_sylvester_reads_form_files(capsys, tmp_path):
    path = tmp_path / "form.txt"
    path.write_text("x0*x1^2\n")
    code, out = run(capsys, "sylvester", "--form", path)
    assert code == main.EXIT_OK
    assert json.loads(out)["rank"] == 3


def test_decompose_then_verify(capsys, tmp_path):
    out_path = tmp_path / "witness.json"
    code, _ = run(capsys, "decompose", "--scheme", fixture_path("skew_two_jets_p3"), "--degree", 4,
                  "--seed", 2, "--out", out_path)
    assert code == main.EXIT_OK
    written = json.loads(out_path.read_text())
    assert written["verified"] is True
    assert written["decomposition"]["total_size"] == 8

    code, out = run(capsys, "verify", "--witness", out_path)
    data = json.loads(out)
    assert code == main.EXIT_OK
    assert data["verified"] is True and data["total_size"] == 8


def test_decompose_sigma_verdict_has_no_witness(capsys):
    code, out = run(capsys, "decompose", "--scheme", fixture_path("fat_point_p3"), "--degree", 4)
    data = json.loads(out)
    assert code == main.EXIT_OK
    assert data["classification"]["verdict"] == "in_sigma2"
    assert data["decomposition"] is None


def test_decompose_rejects_forms_off_the_span(capsys):
    code, _ = run(capsys, "decompose", "--scheme", fixture_path("skew_two_jets_p3"), "--degree", 4,
                  "--form", "x0*x1*x2*x3")
    assert code == main.EXIT_BAD_INPUT


def test_verify_detects_a_wrong_form(capsys, tmp_path):
    out_path = tmp_path / "witness.json"
    run(capsys, "decompose", "--scheme", fixture_path("skew_two_jets_p3"), "--degree", 4, "--out", out_path)
    code, out = run(capsys, "verify", "--witness", out_path, "--form", "x0*x1*x2*x3")
    assert code == main.EXIT_FAILURE
    assert json.loads(out)["member"] is False


def test_sample_is_reproducible_and_reads_the_seed_from_the_environment(capsys, monkeypatch):
    argv = ["sample", "--scheme", fixture_path("square_pencil_p2"), "--degree", 5]
    _, first = run(capsys, *argv, "--seed", 9)
    _, second = run(capsys, *argv, "--seed", 9)
    assert first == second
    monkeypatch.setenv("WARING4_SEED", "9")
    _, from_env = run(capsys, *argv)
    assert from_env == first
    data = json.loads(first)
    assert data["catalecticant_rank"] == 4
    assert not any(c["contains_sample"] for c in data["certificates"])


def test_bad_seed_in_environment(capsys, monkeypatch):
    monkeypatch.setenv("WARING4_SEED", "abc")
    code, _ = run(capsys, "sylvester", "--form", "x0*x1")
    assert code == main.EXIT_BAD_INPUT


def test_atlas_on_the_rational_normal_curve(capsys):
    code, out = run(capsys, "atlas", "--m-max", 1, "--d-min", 6, "--d-max", 7, "--per-config", 1)
    data = json.loads(out)
    assert code == main.EXIT_OK
    cells = {(c["m"], c["d"]): c for c in data["report"]["cells"]}
    assert cells[(1, 6)]["realized"] == [4]
    assert cells[(1, 7)]["realized"] == [4, 5]
    assert all(c["within_table"] for c in cells.values())


if __name__ == "__main__":
    print("🖥️ Testing the command line")
    print("=" * 50)
    for argv in (["classify", "--scheme", fixture_path("skew_two_jets_p3"), "--degree", "5"],
                 ["sylvester", "--form", "x0^5*x1"]):
        print(f"\n$ python main.py {' '.join(argv)}")
        print(f"   exit code {main.main(argv)}")
    print("\n✅ Testing complete!")
