"""Batch execution of job configurations."""

import json
import logging
import time
import warnings

import numpy as np
from sklearn.model_selection import ParameterGrid

from ..carleson.distance import distance_estimate, distance_profile
from ..carleson.measures import carleson_norm, lemma31_ratio
from ..composition.criteria import (
    composition_bloch_ratio,
    lemma42_checks,
    splitting_ratio,
    stanton_norm,
    thm42_criterion,
    thm42_necessity_report,
    thm43i_criterion,
    thm43ii_criterion,
)
from ..errors import ConfigError
from ..norms.params import SeminormReport
from ..norms.seminorms import (
    bloch_norm,
    campanato_seminorm,
    hardy_norm,
    lp_star_seminorm,
    mobius_seminorm,
)
from .report import ROW_ERRORS, Report, format_witness, provenance
from .verify import verify_suite

logger = logging.getLogger(__name__)

# Compose operations that take a function spec besides the self-map.
_FUNCTION_OPS = ("stanton", "splitting", "composition_bloch")

# Compose operations that do not depend on the index pair.
_SELFMAP_OPS = ("lemma42",)


def _row(result, witness=None, flags=()):
    """Normalizes an operation result into value, witness and flags."""
    if isinstance(result, SeminormReport):
        row = {
            "value": result.value,
            "witness": format_witness(result.witness),
            "flags": ";".join(result.flags),
        }
        if result.notes:
            row["notes"] = "; ".join(result.notes)
        return row
    return {"value": float(result), "witness": format_witness(witness), "flags": ";".join(flags)}


def _option(options, name, default=None):
    if name in options:
        return options[name]
    if default is None:
        raise ConfigError("options.{}".format(name), "required by this operation.")
    return default


# Norm task: (f, index, options, grid) -> row or rows


def _hardy(f, index, options, grid):
    return _row(hardy_norm(f, index.p, grid.circle(), options.get("fallback_radius")))


def _campanato(f, index, options, grid):
    return _row(
        campanato_seminorm(
            f, index, grid.boundary_arcs(), grid.circle(), options.get("fallback_radius")
        )
    )


def _mobius(f, index, options, grid):
    return _row(
        mobius_seminorm(f, index, grid.wgrid(), grid.circle(), options.get("fallback_radius"))
    )


def _lp_star(f, index, options, grid):
    return _row(lp_star_seminorm(f, index, grid.boundary_arcs(), grid.radial(), grid.circle()))


def _lp_star_harmonic(f, index, options, grid):
    return _row(
        lp_star_seminorm(
            f, index, grid.boundary_arcs(), grid.radial(), grid.circle(), variant="harmonic"
        )
    )


def _bloch(f, index, options, grid):
    return _row(bloch_norm(f, options.get("alpha", index.alpha), grid.disk()))


# Carleson task: (rho, index, options, grid); the index supplies eta.


def _carleson_norm(rho, index, options, grid):
    return _row(carleson_norm(rho, index.eta, grid.box_arcs(), grid.disk()))


def _lemma31(rho, index, options, grid):
    a = _option(options, "a")
    b = _option(options, "b")
    return _row(lemma31_ratio(rho, a, b, index.eta, grid.box_arcs(), grid.disk()))


# Compose task: ((f, phi), index, options, grid)


def _stanton(pair, index, options, grid):
    f, phi = pair
    result = stanton_norm(f, phi, index.p, grid.disk())
    row = _row(result.value, flags=result.flags)
    row["skipped_mass"] = result.skipped_mass
    return row


def _lemma42(pair, index, options, grid):
    _, phi = pair
    result = lemma42_checks(phi, grid.disk(), grid.circle())
    row = _row(result.gap, witness=result.witness)
    row.update(
        norm_sq=result.norm_sq,
        area_integral=result.area_integral,
        counting_ratio=result.ratio,
        passed=bool(result.passes),
    )
    return row


def _splitting(pair, index, options, grid):
    f, phi = pair
    return _row(splitting_ratio(f, phi, index.p, grid.circle()))


def _thm42(pair, index, options, grid):
    _, phi = pair
    lam = options.get("lam", index.eta)
    return _row(thm42_criterion(phi, index.p, index.eta, lam, 2, grid.wgrid(), grid.circle()))


def _thm42_necessity(pair, index, options, grid):
    _, phi = pair
    lam = options.get("lam", index.eta)
    result = thm42_necessity_report(
        phi, index.p, index.eta, lam, wgrid=grid.wgrid(), cgrid=grid.circle()
    )
    row = _row(result.ratio)
    row.update(criterion=result.criterion, chain=result.chain)
    return row


def _thm43i(pair, index, options, grid):
    _, phi = pair
    alpha = _option(options, "alpha")
    return _row(thm43i_criterion(phi, alpha, index.p, index.eta, grid.disk()))


def _thm43ii(pair, index, options, grid):
    _, phi = pair
    alpha = _option(options, "alpha")
    return _row(
        thm43ii_criterion(
            phi, alpha, index.p, index.eta, grid.boundary_arcs(), grid.radial(), grid.circle()
        )
    )


def _composition_bloch(pair, index, options, grid):
    f, phi = pair
    alpha = _option(options, "alpha")
    return _row(
        composition_bloch_ratio(
            f, phi, alpha, index, grid.disk(), grid.boundary_arcs(), grid.radial(), grid.circle()
        )
    )


# Distance task: (f, index, options, grid); the index supplies eta.


def _profile(f, index, options, grid, eps=()):
    if not eps:
        raise ConfigError("eps", "distance profiles need at least one level.")
    table = distance_profile(f, index.eta, eps, grid.box_arcs(), grid.disk())
    rows = []
    for record in table.to_dict(orient="records"):
        row = _row(record["norm"], flags=[record["flag"]])
        row.update(eps=record["eps"], extended_norm=record["refined_norm"], slope=record["slope"])
        rows.append(row)
    return rows


def _estimate(f, index, options, grid, eps=()):
    value = distance_estimate(f, index.eta, grid.box_arcs(), grid.disk())
    row = _row(value)
    row["in_closure"] = value == 0
    return row


OPERATIONS = {
    "hardy": _hardy,
    "campanato": _campanato,
    "mobius": _mobius,
    "lp_star": _lp_star,
    "lp_star_harmonic": _lp_star_harmonic,
    "bloch": _bloch,
    "carleson_norm": _carleson_norm,
    "lemma31": _lemma31,
    "stanton": _stanton,
    "lemma42": _lemma42,
    "splitting": _splitting,
    "thm42": _thm42,
    "thm42_necessity": _thm42_necessity,
    "thm43i": _thm43i,
    "thm43ii": _thm43ii,
    "composition_bloch": _composition_bloch,
    "profile": _profile,
    "estimate": _estimate,
}


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def _cases(config):
    """(operation, subject, subject text, index) in config row order."""
    ops = config.operations
    indices = range(len(config.indices))
    if config.task in ("norm", "distance"):
        grids = [{"function": range(len(config.functions)), "index": indices, "operation": ops}]
    elif config.task == "carleson":
        grids = [{"density": range(len(config.densities)), "index": indices, "operation": ops}]
    else:
        with_f = [op for op in ops if op in _FUNCTION_OPS]
        if with_f and not config.functions:
            raise ConfigError("functions", "operations {} need function specs.".format(with_f))
        plain = [op for op in ops if op not in _FUNCTION_OPS and op not in _SELFMAP_OPS]
        only = [op for op in ops if op in _SELFMAP_OPS]
        selfmaps = range(len(config.selfmaps))
        grids = []
        if with_f:
            grids.append(
                {
                    "selfmap": selfmaps,
                    "function": range(len(config.functions)),
                    "index": indices,
                    "operation": with_f,
                }
            )
        if plain:
            grids.append({"selfmap": selfmaps, "index": indices, "operation": plain})
        if only:
            grids.append({"selfmap": selfmaps, "index": [0], "operation": only})

    for case in ParameterGrid(grids):
        index = config.indices[case["index"]]
        if "density" in case:
            subject = config.densities[case["density"]]
            text = _dump(subject.to_dict())
        elif "selfmap" in case:
            f = config.functions[case["function"]] if "function" in case else None
            phi = config.selfmaps[case["selfmap"]]
            subject = (f, phi)
            text = _dump(
                {"function": f.to_dict() if f is not None else None, "selfmap": phi.to_dict()}
            )
        else:
            subject = config.functions[case["function"]]
            text = _dump(subject.to_dict())
        yield case["operation"], subject, text, index


def _params_text(index, options):
    params = index.to_dict()
    params.update({k: options[k] for k in sorted(options)})
    return _dump(params)


def _evaluate(config, operation, subject, index, grid):
    """Rows of one case; module errors become a row with an error message."""
    func = OPERATIONS[operation]
    kwargs = {"eps": config.eps} if config.task == "distance" else {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            out = func(subject, index, config.options, grid, **kwargs)
        except ConfigError:
            raise
        except ROW_ERRORS as e:
            logger.warning("%s failed on row: %s", operation, e)
            out = {"value": np.nan, "error": "{}: {}".format(type(e).__name__, e)}
    rows = out if isinstance(out, list) else [out]
    if caught:
        messages = sorted({str(w.message) for w in caught})
        for row in rows:
            row["warnings"] = "; ".join(messages)
    return rows


def _relative_change(coarse, fine):
    if np.isnan(coarse) or np.isnan(fine):
        return np.nan
    if coarse == 0:
        return 0.0 if fine == 0 else np.inf
    return abs(fine - coarse) / abs(coarse)


def run_job(config):
    """Runs a job and collects its rows into a report.

    Parameters
    ----------
    config : JobConfig
        The job.

    Returns
    -------
    Report
        One or more rows per (subject, index, operation) case in config
        order. With ``config.refine`` every case is rerun on
        ``config.grid.refined()`` and the columns ``refined_value`` and
        ``relative_change`` are appended.

    Raises
    ------
    ConfigError
        If the job is malformed. Module errors are recorded per row.
    """
    start = time.perf_counter()
    if config.task == "verify":
        report = verify_suite(
            config.suite, config.grid, selfmaps=config.selfmaps or None
        )
        report.provenance = provenance(config.grid, time.perf_counter() - start)
        return report

    refined = config.grid.refined() if config.refine else None
    rows = []
    for operation, subject, text, index in _cases(config):
        logger.info("Running %s on %s with %s.", operation, text, index)
        coarse = _evaluate(config, operation, subject, index, config.grid)
        params = _params_text(index, config.options)
        if refined is not None:
            fine = _evaluate(config, operation, subject, index, refined)
            if len(fine) != len(coarse):
                fine = [{"value": np.nan}] * len(coarse)
            for row, other in zip(coarse, fine):
                row["refined_value"] = other.get("value", np.nan)
                row["relative_change"] = _relative_change(
                    row.get("value", np.nan), row["refined_value"]
                )
        for row in coarse:
            row.update(operation=operation, input=text, params=params)
            rows.append(row)
    elapsed = time.perf_counter() - start
    logger.info("Job %s finished %d rows in %.2f s.", config.task, len(rows), elapsed)
    return Report(config.task, rows, provenance(config.grid, elapsed))
