import os

import pytest

from campanato.harness import cli
from campanato.harness.cli import EXIT_CONFIG, EXIT_FAILURE, EXIT_INTERNAL, EXIT_PASS, main

from .testutil import SMALL_GRID, write_job

GRID_FLAGS = [
    "--grid-circle",
    str(SMALL_GRID["n_circle"]),
    "--grid-radial",
    str(SMALL_GRID["n_radial"]),
    "--arc-depth",
    str(SMALL_GRID["arc_depth"]),
    "--delta-min",
    str(SMALL_GRID["delta_min"]),
]


def norm_job(functions, operations):
    return {
        "task": "norm",
        "functions": functions,
        "operations": operations,
        "grid": SMALL_GRID,
    }


def test_01():
    # a single verification check without a config file
    assert main(["verify", "szego"] + GRID_FLAGS) == EXIT_PASS


def test_02(tmp_path, capsys):
    # a passing norm job prints its table
    path = write_job(tmp_path, norm_job([{"type": "Monomial", "n": 1}], ["campanato"]))
    assert main(["norm", "--config", path]) == EXIT_PASS
    assert "campanato" in capsys.readouterr().out


def test_03(tmp_path):
    # a failing row gives exit status 1
    path = write_job(tmp_path, norm_job([{"type": "LogKernel"}], ["hardy"]))
    assert main(["norm", "--config", path]) == EXIT_FAILURE


def test_04(tmp_path):
    # configuration errors give exit status 2
    bad = write_job(tmp_path, {"task": "norm", "functions": [{"type": "Nope"}]}, "bad.json")
    assert main(["norm", "--config", bad]) == EXIT_CONFIG
    assert main(["norm", "--config", str(tmp_path / "missing.json")]) == EXIT_CONFIG
    assert main(["norm"]) == EXIT_CONFIG
    assert main(["verify", "no_such_check"]) == EXIT_CONFIG
    assert main(["verify", "szego", "--grid-circle", "0"]) == EXIT_CONFIG
    # the task of the file must match the command
    good = write_job(tmp_path, norm_job([{"type": "Monomial", "n": 1}], ["hardy"]))
    assert main(["carleson", "--config", good]) == EXIT_CONFIG


def test_05():
    # unknown tasks are rejected by the parser
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_06(tmp_path, monkeypatch):
    # unexpected exceptions give exit status 3
    def broken(config):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "run_job", broken)
    path = write_job(tmp_path, norm_job([{"type": "Monomial", "n": 1}], ["hardy"]))
    assert main(["norm", "--config", path]) == EXIT_INTERNAL


def test_07(tmp_path):
    # --out writes the CSV and JSON report; --refine adds the rerun columns
    path = write_job(tmp_path, norm_job([{"type": "Monomial", "n": 2}], ["hardy"]))
    out = tmp_path / "report"
    assert main(["norm", "--config", path, "--out", str(out), "--refine"]) == EXIT_PASS
    assert os.path.exists(out / "norm.csv")
    assert os.path.exists(out / "norm.json")
    assert "refined_value" in (out / "norm.csv").read_text()


def test_08(tmp_path):
    # an option of the wrong type is a configuration error, not an internal one
    job = norm_job([{"type": "Monomial", "n": 1}], ["bloch"])
    job["options"] = {"alpha": "1"}
    path = write_job(tmp_path, job)
    assert main(["norm", "--config", path]) == EXIT_CONFIG
