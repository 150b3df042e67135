"""Job configuration files."""

import json
import numbers

from ..analysis.functions import spec_from_dict
from ..analysis.grids import GridParams
from ..carleson.measures import density_from_dict
from ..composition.selfmaps import selfmap_from_dict
from ..errors import ConfigError
from ..norms.params import IndexParams

TASKS = ("norm", "carleson", "compose", "distance", "verify")

OPERATIONS = {
    "norm": ("hardy", "campanato", "mobius", "lp_star", "lp_star_harmonic", "bloch"),
    "carleson": ("carleson_norm", "lemma31"),
    "compose": (
        "stanton",
        "lemma42",
        "splitting",
        "thm42",
        "thm42_necessity",
        "thm43i",
        "thm43ii",
        "composition_bloch",
    ),
    "distance": ("profile", "estimate"),
    "verify": (),
}

DEFAULT_OPERATIONS = {
    "norm": ("campanato", "mobius", "lp_star", "bloch"),
    "carleson": ("carleson_norm",),
    "compose": ("stanton",),
    "distance": ("estimate",),
    "verify": (),
}

OPTIONS = ("alpha", "a", "b", "lam", "fallback_radius")

_FIELDS = (
    "task",
    "functions",
    "selfmaps",
    "densities",
    "indices",
    "operations",
    "eps",
    "suite",
    "options",
    "grid",
    "out",
    "refine",
)


class JobConfig:
    """A parsed job.

    Parameters
    ----------
    task : str
        One of ``TASKS``.
    functions : list of FunctionSpec, optional
        Function specs.
    selfmaps : list of SelfMapSpec, optional
        Self-maps, for compose jobs.
    densities : list of MeasureDensity, optional
        Densities, for carleson jobs.
    indices : list of IndexParams, optional
        Index pairs (p, eta), by default [(2, 1)].
    operations : list of str, optional
        Operations of the task, by default ``DEFAULT_OPERATIONS[task]``.
    eps : list of float, optional
        Levels for distance profiles.
    suite : str, optional
        Verification suite, for verify jobs.
    options : dict, optional
        Extra scalar parameters (alpha, a, b, lam, fallback_radius).
    grid : GridParams, optional
        Resolution, by default ``GridParams()``.
    out : str, optional
        Output directory.
    refine : bool, optional
        Rerun every row on the refined grid, by default False.

    Raises
    ------
    ConfigError
        If a field is invalid.
    """

    def __init__(
        self,
        *,
        task,
        functions=(),
        selfmaps=(),
        densities=(),
        indices=None,
        operations=None,
        eps=(),
        suite=None,
        options=None,
        grid=None,
        out=None,
        refine=False,
    ):
        self.task = task
        self.functions = list(functions)
        self.selfmaps = list(selfmaps)
        self.densities = list(densities)
        self.indices = list(indices) if indices is not None else [IndexParams(2, 1)]
        self.operations = list(operations) if operations is not None else None
        self.eps = [float(e) for e in eps]
        self.suite = suite
        self.options = dict(options or {})
        self.grid = grid if grid is not None else GridParams()
        self.out = out
        self.refine = bool(refine)

        # Error check
        if self.task not in TASKS:
            raise ConfigError("task", "must be one of {}, got {!r}.".format(TASKS, task))
        if self.operations is None:
            self.operations = list(DEFAULT_OPERATIONS[self.task])
        if self.task != "verify" and not self.operations:
            raise ConfigError("operations", "must name at least one operation.")
        for op in self.operations:
            if op not in OPERATIONS[self.task]:
                raise ConfigError(
                    "operations", "{!r} is not an operation of the {} task.".format(op, self.task)
                )
        if self.task == "verify" and self.suite is None:
            raise ConfigError("suite", "verify jobs need a suite name.")
        if self.task in ("norm", "distance") and not self.functions:
            raise ConfigError("functions", "{} jobs need at least one function.".format(self.task))
        if self.task == "compose" and not self.selfmaps:
            raise ConfigError("selfmaps", "compose jobs need at least one self-map.")
        if self.task == "carleson" and not self.densities:
            raise ConfigError("densities", "carleson jobs need at least one density.")
        for name, value in self.options.items():
            if name not in OPTIONS:
                raise ConfigError(
                    "options.{}".format(name), "unknown option; expected one of {}.".format(OPTIONS)
                )
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise ConfigError(
                    "options.{}".format(name), "must be a number, got {!r}.".format(value)
                )

    def __repr__(self):
        return "JobConfig(task={!r}, operations={})".format(self.task, self.operations)

    def replace_grid(self, **changes):
        """Applies command-line overrides to the grid block."""
        try:
            self.grid = self.grid.replace(**changes)
        except ValueError as e:
            raise ConfigError("grid", str(e))
        return self

    def to_dict(self):
        return {
            "task": self.task,
            "functions": [f.to_dict() for f in self.functions],
            "selfmaps": [m.to_dict() for m in self.selfmaps],
            "densities": [d.to_dict() for d in self.densities],
            "indices": [i.to_dict() for i in self.indices],
            "operations": list(self.operations),
            "eps": list(self.eps),
            "suite": self.suite,
            "options": dict(self.options),
            "grid": self.grid.to_dict(),
            "out": self.out,
            "refine": self.refine,
        }

    @classmethod
    def from_dict(cls, data):
        """Parses a configuration dictionary.

        Raises
        ------
        ConfigError
            Naming the first offending field, e.g. ``functions[2]``.
        """
        if not isinstance(data, dict):
            raise ConfigError("<root>", "a job configuration is a JSON object.")
        unknown = sorted(set(data) - set(_FIELDS))
        if unknown:
            raise ConfigError(unknown[0], "unknown field.")
        if "task" not in data:
            raise ConfigError("task", "missing.")
        kwargs = {
            "task": data["task"],
            "functions": _parse_list(data, "functions", spec_from_dict),
            "selfmaps": _parse_list(data, "selfmaps", selfmap_from_dict),
            "densities": _parse_list(data, "densities", density_from_dict),
            "eps": _parse_list(data, "eps", float),
            "suite": data.get("suite"),
            "out": data.get("out"),
            "refine": data.get("refine", False),
        }
        if "indices" in data:
            kwargs["indices"] = _parse_list(data, "indices", IndexParams.from_dict)
        if "operations" in data:
            kwargs["operations"] = _parse_list(data, "operations", str)
        options = data.get("options", {})
        if not isinstance(options, dict):
            raise ConfigError("options", "must be an object.")
        kwargs["options"] = options
        if "grid" in data:
            try:
                kwargs["grid"] = GridParams.from_dict(data["grid"])
            except (TypeError, ValueError) as e:
                raise ConfigError("grid", str(e))
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path):
        """Reads a configuration file.

        Raises
        ------
        ConfigError
            If the file cannot be read or parsed.
        """
        try:
            with open(path) as fid:
                data = json.load(fid)
        except OSError as e:
            raise ConfigError("<file>", "cannot read {}: {}".format(path, e))
        except json.JSONDecodeError as e:
            raise ConfigError("<file>", "invalid JSON in {}: {}".format(path, e))
        return cls.from_dict(data)


def _parse_list(data, field, parse):
    items = data.get(field, [])
    if not isinstance(items, list):
        raise ConfigError(field, "must be a list.")
    out = []
    for i, item in enumerate(items):
        try:
            out.append(parse(item))
        except (TypeError, ValueError, KeyError) as e:
            raise ConfigError("{}[{}]".format(field, i), str(e))
    return out
