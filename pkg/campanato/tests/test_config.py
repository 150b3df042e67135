import pytest

from campanato.analysis.functions import Monomial
from campanato.analysis.grids import GridParams
from campanato.errors import ConfigError
from campanato.harness.config import DEFAULT_OPERATIONS, JobConfig
from campanato.norms.params import IndexParams

from .testutil import SMALL_GRID, write_job

NORM_JOB = {
    "task": "norm",
    "functions": [{"type": "Monomial", "n": 1}, {"type": "CauchyKernel", "b": [0.5, 0]}],
    "indices": [{"p": 2, "eta": 1}, {"p": 2, "eta": 0.5}],
    "operations": ["campanato", "hardy"],
    "options": {"fallback_radius": 0.99},
    "grid": SMALL_GRID,
}


def test_01():
    # a norm job with every block
    config = JobConfig.from_dict(NORM_JOB)
    assert config.task == "norm"
    assert config.functions[0] == Monomial(1)
    assert config.functions[1].b == 0.5
    assert [i.to_dict() for i in config.indices] == NORM_JOB["indices"]
    assert config.operations == ["campanato", "hardy"]
    assert config.grid == GridParams(**SMALL_GRID)
    assert config.refine is False and config.out is None


def test_02():
    # defaults: index (2, 1), the task's operations, the default grid
    config = JobConfig.from_dict({"task": "norm", "functions": [{"type": "LogKernel"}]})
    assert [i.to_dict() for i in config.indices] == [IndexParams(2, 1).to_dict()]
    assert config.operations == list(DEFAULT_OPERATIONS["norm"])
    assert config.grid == GridParams()


def test_03():
    # to_dict is read back unchanged
    config = JobConfig.from_dict(NORM_JOB)
    again = JobConfig.from_dict(config.to_dict())
    assert again.to_dict() == config.to_dict()


@pytest.mark.parametrize(
    "data,field",
    [
        ([], "<root>"),
        ({"task": "norm", "colour": "red"}, "colour"),
        ({"functions": []}, "task"),
        ({"task": "norm", "functions": {"type": "Monomial"}}, "functions"),
        ({"task": "norm", "functions": [{"type": "Monomial", "n": 1}, {"type": "Nope"}]}, "functions[1]"),
        ({"task": "norm", "functions": [{"type": "Monomial"}]}, "functions[0]"),
        ({"task": "norm", "functions": [{"n": 1}]}, "functions[0]"),
        ({"task": "compose", "selfmaps": [{"type": "MobiusSelfMap", "a": [2, 0]}]}, "selfmaps[0]"),
        ({"task": "carleson", "densities": [{"type": "PowerWeight"}]}, "densities[0]"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "indices": [{"p": 0.5, "eta": 1}]}, "indices[0]"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "options": [1]}, "options"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "options": {"alpha": "1"}}, "options.alpha"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "options": {"radius": 0.9}}, "options.radius"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "grid": {"n_cirle": 8}}, "grid"),
        ({"task": "norm", "functions": [{"type": "LogKernel"}], "grid": {"delta_min": 2}}, "grid"),
    ],
)
def test_04(data, field):
    # parse errors name the offending field
    with pytest.raises(ConfigError) as e:
        JobConfig.from_dict(data)
    assert e.value.field == field
    assert str(e.value).startswith(field)


@pytest.mark.parametrize(
    "kwargs,field",
    [
        ({"task": "bogus"}, "task"),
        ({"task": "carleson", "operations": ["bloch"], "densities": []}, "operations"),
        ({"task": "norm", "operations": [], "functions": [Monomial(1)]}, "operations"),
        ({"task": "verify"}, "suite"),
        ({"task": "norm"}, "functions"),
        ({"task": "distance"}, "functions"),
        ({"task": "compose"}, "selfmaps"),
        ({"task": "carleson"}, "densities"),
    ],
)
def test_05(kwargs, field):
    # validation of the parsed fields
    with pytest.raises(ConfigError) as e:
        JobConfig(**kwargs)
    assert e.value.field == field


def test_06(tmp_path):
    # files: a good one, a missing one and broken JSON
    config = JobConfig.from_json(write_job(tmp_path, NORM_JOB))
    assert config.operations == ["campanato", "hardy"]
    with pytest.raises(ConfigError) as e:
        JobConfig.from_json(str(tmp_path / "missing.json"))
    assert e.value.field == "<file>"
    broken = tmp_path / "broken.json"
    broken.write_text("{\"task\": ")
    with pytest.raises(ConfigError) as e:
        JobConfig.from_json(str(broken))
    assert e.value.field == "<file>"


def test_07():
    # command-line grid overrides; None leaves a field alone
    config = JobConfig(task="verify", suite="core", grid=GridParams(**SMALL_GRID))
    config.replace_grid(n_circle=1024, n_radial=None)
    assert config.grid.n_circle == 1024
    assert config.grid.n_radial == SMALL_GRID["n_radial"]
    with pytest.raises(ConfigError) as e:
        config.replace_grid(n_circle=0)
    assert e.value.field == "grid"
    # configuration errors are also value errors
    assert isinstance(e.value, ValueError)
