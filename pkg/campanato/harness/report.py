"""Tabular job reports with a provenance block."""

import json
import logging
import os
import platform

import numpy as np
import pandas as pd
import scipy
import sklearn

from .. import __version__
from ..errors import CampanatoError
from ..norms.params import FLAGS

logger = logging.getLogger(__name__)

COLUMNS = ("row", "operation", "input", "params", "value", "witness", "flags", "error")

# Errors recorded on their row instead of aborting the job.
ROW_ERRORS = (CampanatoError, ValueError, ArithmeticError)


def format_witness(witness):
    """Text form of a witness: an arc, a point or nothing."""
    if witness is None:
        return ""
    if hasattr(witness, "to_dict"):
        return json.dumps(witness.to_dict(), sort_keys=True)
    if isinstance(witness, (complex, np.complexfloating)):
        return "{!r}".format(complex(witness))
    return str(witness)


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(np.real(obj)), float(np.imag(obj))]
    raise TypeError("{} is not JSON serializable.".format(type(obj).__name__))


class Report:
    """Rows of a job with their witnesses and flags.

    Parameters
    ----------
    task : str
        The job task.
    rows : list of dict
        One dictionary per result row. Missing columns are filled with
        empty values; extra columns (refinement, check names) are kept
        after the standard ones.
    provenance : dict, optional
        Grid parameters, package versions and wall time. Excluded from the
        report body.
    """

    def __init__(self, task, rows, provenance=None):
        self.task = task
        self.table = self._build_table(rows)
        self.provenance = dict(provenance or {})
        unknown = set(self.flags) - set(FLAGS)
        if unknown:
            raise ValueError("Unknown report flags: {}.".format(sorted(unknown)))

    def __repr__(self):
        return "Report(task={!r}, rows={}, flags={})".format(
            self.task, len(self.table), self.flags
        )

    def __len__(self):
        return len(self.table)

    @staticmethod
    def _build_table(rows):
        rows = list(rows)
        extra = []
        for row in rows:
            for key in row:
                if key not in COLUMNS and key not in extra:
                    extra.append(key)
        table = pd.DataFrame(rows, columns=list(COLUMNS) + extra)
        table["row"] = np.arange(len(table))
        for col in ("operation", "input", "params", "witness", "flags", "error"):
            table[col] = table[col].fillna("").astype(str)
        return table

    @property
    def flags(self):
        """Sorted union of the flags of all rows."""
        out = set()
        for entry in self.table["flags"]:
            out.update(f for f in entry.split(";") if f)
        return sorted(out)

    @property
    def errors(self):
        """Rows that raised a module error."""
        return self.table[self.table["error"] != ""]

    @property
    def passed(self):
        """Whether no row failed; verify reports also require every check to pass."""
        if len(self.errors):
            return False
        if "passed" in self.table:
            return bool(self.table["passed"].astype(bool).all())
        return True

    def body(self):
        """The deterministic part of the report."""
        records = self.table.to_dict(orient="records")
        return {"task": self.task, "flags": self.flags, "rows": records}

    def to_json(self):
        document = {"body": self.body(), "provenance": self.provenance}
        return json.dumps(document, sort_keys=True, indent=2, default=_json_default)

    def write(self, out, stem=None):
        """Writes ``<stem>.csv`` and ``<stem>.json`` into a directory.

        Parameters
        ----------
        out : str
            Output directory, created if missing.
        stem : str, optional
            File name stem, by default the task name.

        Returns
        -------
        tuple of str
            Paths of the CSV and JSON files.
        """
        stem = stem or self.task
        os.makedirs(out, exist_ok=True)
        csv_path = os.path.join(out, stem + ".csv")
        json_path = os.path.join(out, stem + ".json")
        self.table.to_csv(csv_path, index=False, float_format="%.12g")
        with open(json_path, "w") as fid:
            fid.write(self.to_json())
            fid.write("\n")
        logger.info("Wrote %s and %s.", csv_path, json_path)
        return csv_path, json_path


def provenance(grid, wall_time):
    """Grid parameters, package versions and wall time of a run."""
    return {
        "grid": grid.to_dict(),
        "versions": {
            "campanato": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "pandas": pd.__version__,
            "scikit-learn": sklearn.__version__,
            "python": platform.python_version(),
        },
        "wall_time": float(wall_time),
    }
