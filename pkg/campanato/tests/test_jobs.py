import json
import os

import numpy as np
import pandas as pd
import pytest

from campanato.analysis.functions import LogKernel, Monomial, Polynomial
from campanato.carleson.measures import ConstantDensity
from campanato.composition.selfmaps import ComposedSpec, MobiusSelfMap, PolynomialSelfMap
from campanato.errors import ConfigError
from campanato.harness.config import JobConfig
from campanato.harness.jobs import run_job
from campanato.harness.report import COLUMNS, Report
from campanato.norms.params import IndexParams
from campanato.norms.seminorms import hardy_norm


def norm_job(grid, functions, operations, **kwargs):
    return JobConfig(task="norm", functions=functions, operations=operations, grid=grid, **kwargs)


def test_01(small_grid):
    # constants have seminorm zero, z has seminorm one; rows follow the function order
    config = norm_job(small_grid, [Polynomial([2 - 1j]), Monomial(1)], ["campanato"])
    report = run_job(config)
    assert len(report) == 2
    assert list(report.table.columns[: len(COLUMNS)]) == list(COLUMNS)
    assert np.allclose(report.table["value"], [0, 1])
    assert list(report.table["row"]) == [0, 1]
    assert report.passed
    assert json.loads(report.table["params"][0]) == {"p": 2.0, "eta": 1.0}


def test_02(small_grid):
    # a failing row is recorded and the job goes on
    config = norm_job(small_grid, [LogKernel(), Monomial(1)], ["hardy"])
    report = run_job(config)
    assert len(report) == 2
    assert len(report.errors) == 1
    assert report.table["error"][0].startswith("DomainError")
    assert np.isnan(report.table["value"][0])
    assert np.isclose(report.table["value"][1], 1)
    assert not report.passed
    # the fallback radius turns the failure into a value
    config = norm_job(
        small_grid, [LogKernel()], ["hardy"], options={"fallback_radius": 0.99}
    )
    assert run_job(config).passed


def test_03(small_grid):
    # each index of the job is a separate row
    config = JobConfig(
        task="carleson",
        densities=[ConstantDensity()],
        indices=[IndexParams(2, 1), IndexParams(2, 3)],
        grid=small_grid,
    )
    report = run_job(config)
    assert len(report) == 2
    assert np.isclose(report.table["value"][0], 1)
    assert report.table["flags"][1] == "DIVERGENT"
    assert report.flags == ["BOUNDED", "DIVERGENT"]


def test_04(small_grid):
    # Stanton's formula: the identity and a Mobius self-map
    f = Monomial(2)
    phi = MobiusSelfMap(0.5)
    config = JobConfig(
        task="compose",
        functions=[f],
        selfmaps=[PolynomialSelfMap([0, 1]), phi],
        operations=["stanton"],
        grid=small_grid,
    )
    report = run_job(config)
    assert len(report) == 2
    assert np.isclose(report.table["value"][0], 1, rtol=1e-5)
    direct = hardy_norm(ComposedSpec(f, phi), 2, small_grid.circle())
    assert np.isclose(report.table["value"][1], direct, rtol=1e-4)
    assert np.allclose(report.table["skipped_mass"], 0)
    assert json.loads(report.table["input"][1])["selfmap"] == phi.to_dict()


def test_05(small_grid):
    # alpha is required by the automorphism criterion
    config = JobConfig(
        task="compose", selfmaps=[MobiusSelfMap(0.5)], operations=["thm43i"], grid=small_grid
    )
    with pytest.raises(ConfigError) as e:
        run_job(config)
    assert e.value.field == "options.alpha"
    config.options["alpha"] = 1
    report = run_job(config)
    assert np.isclose(report.table["value"][0], 1, rtol=1e-8)


def test_06(small_grid):
    # function operations of a compose job need function specs
    config = JobConfig(
        task="compose", selfmaps=[MobiusSelfMap(0.5)], operations=["splitting"], grid=small_grid
    )
    with pytest.raises(ConfigError) as e:
        run_job(config)
    assert e.value.field == "functions"


def test_07(small_grid):
    # polynomials lie in the closure; profiles have one row per level
    config = JobConfig(
        task="distance", functions=[Polynomial([1, 2, 3])], operations=["estimate"], grid=small_grid
    )
    report = run_job(config)
    assert report.table["value"][0] == 0
    assert bool(report.table["in_closure"][0])

    config = JobConfig(
        task="distance",
        functions=[Monomial(2)],
        operations=["profile"],
        eps=[0.5, 0.1],
        grid=small_grid,
    )
    report = run_job(config)
    assert len(report) == 2
    assert np.allclose(report.table["eps"], [0.5, 0.1])
    assert {"extended_norm", "slope"} <= set(report.table.columns)

    config.eps = []
    with pytest.raises(ConfigError):
        run_job(config)


def test_08(small_grid):
    # refinement appends the rerun value and the relative change
    config = norm_job(small_grid, [Monomial(1)], ["campanato"], refine=True)
    report = run_job(config)
    assert np.isclose(report.table["refined_value"][0], 1)
    assert report.table["relative_change"][0] < 1e-6


def test_09(small_grid):
    # the body is deterministic; only the provenance records timing
    config = norm_job(small_grid, [Monomial(1), Polynomial([0, 1, 0.5j])], ["campanato", "mobius"])
    first, second = run_job(config), run_job(config)
    pd.testing.assert_frame_equal(first.table, second.table)
    assert first.body()["flags"] == second.body()["flags"]
    assert first.provenance["grid"] == small_grid.to_dict()
    assert first.provenance["wall_time"] >= 0
    assert "campanato" in first.provenance["versions"]


def test_10(small_grid, tmp_path):
    # CSV and JSON files of a report
    config = norm_job(small_grid, [Monomial(1)], ["campanato", "hardy"])
    report = run_job(config)
    csv_path, json_path = report.write(str(tmp_path / "out"))
    assert os.path.basename(csv_path) == "norm.csv"
    table = pd.read_csv(csv_path)
    assert len(table) == 2
    assert np.allclose(table["value"], report.table["value"])
    with open(json_path) as fid:
        document = json.load(fid)
    assert document["body"]["task"] == "norm"
    assert len(document["body"]["rows"]) == 2
    assert document["provenance"]["grid"]["n_circle"] == small_grid.n_circle


def test_11():
    # unknown flags are rejected
    with pytest.raises(ValueError):
        Report("norm", [{"value": 1.0, "flags": "HUGE"}])
    report = Report("norm", [{"value": 1.0, "flags": "BOUNDED;SKIPPED-MASS"}])
    assert report.flags == ["BOUNDED", "SKIPPED-MASS"]
    assert report.passed
