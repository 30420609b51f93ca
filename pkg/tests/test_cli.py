"""Tests for the command-line interface, run in process."""

import json

import pytest

from pivotal import cli
from pivotal.cli import EXIT_INTERNAL, EXIT_INVALID, EXIT_IO, EXIT_OK, main

from conftest import DATA_DIR, fixture_path

ASTEROID = str(fixture_path("asteroid"))
ENTREPRENEUR = str(fixture_path("entrepreneur"))
PANDEMIC = str(fixture_path("pandemic"))


# validate

def test_validate_good_document(capsys):
    assert main(["validate", ASTEROID]) == EXIT_OK
    out = capsys.readouterr().out
    assert "OK: asteroid-defense" in out
    assert "discrete" in out


def test_validate_reports_diagnostics(capsys):
    code = main(["validate", str(DATA_DIR / "broken.dproblem.json")])
    assert code == EXIT_INVALID
    err = capsys.readouterr().err
    assert "MISSING_OBJECTIVE" in err


def test_validate_malformed_document(capsys):
    code = main(["validate", str(DATA_DIR / "malformed.dproblem.json")])
    assert code == EXIT_IO
    assert "error:" in capsys.readouterr().err


def test_validate_unknown_field(capsys):
    code = main(["validate", str(DATA_DIR / "unknown_field.dproblem.json")])
    assert code == EXIT_IO
    assert "notes" in capsys.readouterr().err


def test_missing_file_is_io_failure(capsys):
    assert main(["validate", "/nonexistent/nowhere.dproblem.json"]) == EXIT_IO
    assert "error:" in capsys.readouterr().err


# score

def test_score_asteroid(capsys):
    assert main(["score", ASTEROID]) == EXIT_OK
    out = capsys.readouterr().out
    assert "H = 0.03125" in out
    assert "k = 5" in out
    assert out.count("property ") == 5


def test_score_with_custom_c(capsys):
    assert main(["score", ASTEROID, "--c", "0.25"]) == EXIT_OK
    out = capsys.readouterr().out
    # 0.75 ** 5 printed to six significant digits
    assert "H = 0.237305" in out


def test_score_rejects_bad_c(capsys):
    assert main(["score", ASTEROID, "--c", "0"]) == EXIT_IO
    assert "error:" in capsys.readouterr().err


def test_score_broken_document_fails_validation(capsys):
    code = main(["score", str(DATA_DIR / "broken.dproblem.json")])
    assert code == EXIT_INVALID
    assert "MISSING_OBJECTIVE" in capsys.readouterr().err


# recommend

def test_recommend_asteroid(capsys):
    assert main(["recommend", ASTEROID]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Early detection before impact" in out
    assert "Basic research" in out
    assert out.splitlines()[0].startswith("1. ")


def test_recommend_top(capsys):
    assert main(["recommend", ASTEROID, "--top", "2"]) == EXIT_OK
    lines = [line for line in capsys.readouterr().out.splitlines() if line]
    assert len(lines) == 2


def test_recommend_empty(capsys, tmp_path):
    text = (DATA_DIR / "broken.dproblem.json").read_text(encoding="utf-8")
    document = json.loads(text)
    document["problem"]["objectives"] = [
        {"id": "m", "name": "m", "direction": "minimize"}
    ]
    for action in document["problem"]["action_space"]["actions"]:
        action["metric_values"] = {"m": 1.0}
    path = tmp_path / "quiet.dproblem.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    assert main(["recommend", str(path)]) == EXIT_OK
    assert "no applicable strategies" in capsys.readouterr().out


# optimize

def test_optimize_discrete(capsys):
    assert main(["optimize", ASTEROID]) == EXIT_OK
    out = capsys.readouterr().out
    assert "front: 3 member(s)" in out
    assert "knee:" in out
    assert "deflection-mission" in out


def test_optimize_infeasible_action_excluded(capsys):
    assert main(["optimize", PANDEMIC]) == EXIT_OK
    out = capsys.readouterr().out
    assert "stockpile-and-drill" not in out


def test_optimize_continuous_is_seeded(capsys):
    argv = ["optimize", ENTREPRENEUR, "--population", "16", "--generations", "8",
            "--seed", "42"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "front:" in first
    assert "knee: (" in first


def test_optimize_seed_from_environment(capsys, monkeypatch):
    argv = ["optimize", ENTREPRENEUR, "--population", "16", "--generations", "8"]
    monkeypatch.setenv("PIVOTAL_SEED", "7")
    assert main(argv) == EXIT_OK
    via_env = capsys.readouterr().out
    monkeypatch.delenv("PIVOTAL_SEED")
    assert main(argv + ["--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == via_env


def test_optimize_bad_environment_seed(capsys, monkeypatch):
    monkeypatch.setenv("PIVOTAL_SEED", "not-a-number")
    code = main(["optimize", ENTREPRENEUR, "--population", "16", "--generations", "8"])
    assert code == EXIT_IO
    assert "PIVOTAL_SEED" in capsys.readouterr().err


def test_optimize_rejects_bad_population(capsys):
    code = main(["optimize", ENTREPRENEUR, "--population", "5"])
    assert code == EXIT_IO
    assert "population" in capsys.readouterr().err


# taxonomy

def test_taxonomy_table(capsys):
    assert main(["taxonomy"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Detectable hazard" in out
    assert "strategies:" in out


def test_taxonomy_json(capsys):
    assert main(["taxonomy", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["properties"]) == 14
    assert len(data["strategies"]) == 39


# report

def test_report_markdown(capsys):
    assert main(["report", ASTEROID]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# Planetary defense")
    assert "H = 0.03125" in out


def test_report_json(capsys):
    assert main(["report", ASTEROID, "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["complexity"]["h"] == 0.03125
    assert len(data["front"]["members"]) == 3


def test_report_to_file(tmp_path, capsys):
    target = tmp_path / "out.md"
    assert main(["report", ASTEROID, "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert "H = 0.03125" in target.read_text(encoding="utf-8")


# failure plumbing

def test_internal_errors_exit_three(capsys, monkeypatch):
    def explode(*args, **kwargs):
        raise RuntimeError("wires crossed")

    monkeypatch.setattr(cli, "complexity", explode)
    assert main(["score", ASTEROID]) == EXIT_INTERNAL
    assert "internal error" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "pivotal" in capsys.readouterr().out
