"""Verification suites: the module invariants run as named checks.

Every check returns one or more rows with the measured ``value``, the
``tolerance`` it is held to, a ``witness`` and ``passed``. A suite passes
when every row passes and no check raised.
"""

import logging
import warnings

import numpy as np
from sklearn.model_selection import ParameterGrid

from ..analysis.boundary import (
    FourierSeries,
    boundary_values,
    conjugate_function,
    poisson_extension,
    polynomial_series,
    szego_project,
)
from ..analysis.functions import (
    CauchyKernel,
    Lacunary,
    LogKernel,
    Monomial,
    MobiusPullback,
    Polynomial,
    ScaledCauchy,
)
from ..analysis.grids import CarlesonBox, GridParams, dyadic_arcs
from ..analysis.mobius import MobiusMap
from ..carleson.distance import distance_estimate
from ..carleson.measures import (
    ConstantDensity,
    DerivativeWeight,
    LevelSetWeight,
    PowerWeight,
    box_mass,
    carleson_norm,
    lemma31_ratio,
    level_set,
)
from ..composition.criteria import (
    C_SPLIT,
    PAIR_FLOOR,
    bloch_pair,
    lemma42_checks,
    splitting_ratio,
    stanton_norm,
    thm42_criterion,
    thm42_necessity_report,
    thm43i_criterion,
)
from ..composition.selfmaps import ComposedSpec, MobiusSelfMap, PolynomialSelfMap
from ..errors import ConfigError
from ..norms.params import IndexParams
from ..norms.seminorms import (
    bloch_norm,
    campanato_seminorm,
    equivalence_report,
    hardy_norm,
    lp_star_seminorm,
    mobius_seminorm,
)
from .report import ROW_ERRORS, Report, format_witness

logger = logging.getLogger(__name__)

# Frozen ceiling of max / min of seminorm ratios over the Cauchy family.
SPREAD_CEILING = 20.0

# Largest relative change of a ratio when the grids are doubled.
REFINEMENT_TOL = 0.1

# Same for the T_{a,b} Carleson ratio of a singular weight.
T_AB_REFINEMENT_TOL = 0.2

CAUCHY_RADII = (0.3, 0.6, 0.9, 0.97)

EQUIVALENCE_INDICES = ((2, 0.5), (2, 1))

MOBIUS_CENTERS = (0, 0.5, 0.7j)


def _result(check, value, tolerance, passed, witness=None, subject=""):
    return {
        "operation": check,
        "input": subject,
        "value": float(value),
        "tolerance": float(tolerance),
        "witness": format_witness(witness),
        "passed": bool(passed),
    }


def _cauchy_family():
    return [CauchyKernel(b) for b in CAUCHY_RADII]


def _default_selfmaps():
    return [
        PolynomialSelfMap([0, 1]),
        PolynomialSelfMap([0, 0, 1]),
        PolynomialSelfMap([0, 0, 0, 0.5]),
        PolynomialSelfMap([0, 0, 0.5, 0.5]),
    ]


# Core


def check_mobius_involution(grid, selfmaps):
    rng = np.random.default_rng(0)
    n = 1000
    w = 0.99 * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    z = 0.99 * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    errors = np.empty(n)
    for k in range(n):
        m = MobiusMap(w[k])
        errors[k] = abs(m(m(z[k]))[0] - z[k])
    k = int(np.argmax(errors))
    return [_result("mobius_involution", errors[k], 1e-12, errors[k] <= 1e-12, w[k])]


def check_derivatives(grid, selfmaps):
    specs = [
        Monomial(3),
        Polynomial([1, 2, 0.5j]),
        CauchyKernel(0.6j),
        ScaledCauchy(0.5, 2, 1),
        LogKernel(),
        Lacunary(2, 0.5, n_terms=6),
        MobiusPullback(0.3, Monomial(2)),
    ]
    z = 0.5 * np.exp(1j * np.linspace(0, 2 * np.pi, 7, endpoint=False))
    step = 1e-6
    rows = []
    for f in specs:
        exact = f.derivative(z)
        numeric = (f.evaluate(z + step) - f.evaluate(z - step)) / (2 * step)
        error = np.abs(numeric - exact) / np.maximum(np.abs(exact), 1)
        k = int(np.argmax(error))
        rows.append(
            _result("derivative_at", error[k], 1e-6, error[k] <= 1e-6, z[k], repr(f))
        )
    return rows


def check_poisson_reproduction(grid, selfmaps):
    cgrid = grid.circle()
    rows = []
    for f in (CauchyKernel(0.5), Polynomial([1, -2, 0, 1j])):
        samples = boundary_values(f, cgrid)
        z = 0.9 * np.exp(1j * np.linspace(0, 2 * np.pi, 9, endpoint=False))
        error = np.abs(poisson_extension(samples, z, cgrid) - f.evaluate(z))
        k = int(np.argmax(error))
        rows.append(
            _result("poisson_reproduction", error[k], 1e-8, error[k] <= 1e-8, z[k], repr(f))
        )
    return rows


def _random_series(rng, order=32):
    return FourierSeries(rng.normal(size=2 * order + 1) + 1j * rng.normal(size=2 * order + 1))


def check_szego(grid, selfmaps):
    rng = np.random.default_rng(1)
    idempotent = 0.0
    identity = 0.0
    for _ in range(10):
        series = _random_series(rng)
        projected = szego_project(series)
        again = szego_project(polynomial_series(projected))
        idempotent = max(
            idempotent, float(np.max(np.abs(np.asarray(again.coeffs) - projected.coeffs)))
        )
        lhs = 1j * conjugate_function(series) + series
        rhs = 2 * polynomial_series(projected) - FourierSeries({0: series.coefficient(0)})
        identity = max(identity, float(np.max(np.abs((lhs - rhs).coeffs))))
    return [
        _result("szego_idempotent", idempotent, 1e-12, idempotent <= 1e-12),
        _result("conjugate_identity", identity, 1e-12, identity <= 1e-12),
    ]


def check_quadrature_mass(grid, selfmaps):
    dgrid = grid.disk()
    mass = float(np.sum(dgrid.weights))
    log_moment = float(np.sum(dgrid.weights * np.log(1 / np.abs(dgrid.nodes))))
    return [
        _result("disk_mass", abs(mass - 1), 1e-10, abs(mass - 1) <= 1e-10),
        _result("log_moment", abs(log_moment - 0.5), 1e-6, abs(log_moment - 0.5) <= 1e-6),
    ]


# Seminorm equivalence


def check_constants_and_homogeneity(grid, selfmaps):
    cgrid, rgrid, arcs = grid.circle(), grid.radial(), grid.boundary_arcs()
    index = IndexParams(2, 1)
    constant = Polynomial([2 - 1j])
    f = CauchyKernel(0.6)
    c = 3 - 4j
    norms = {
        "campanato": lambda g: campanato_seminorm(g, index, arcs, cgrid).value,
        "mobius": lambda g: mobius_seminorm(g, index, grid.wgrid(), cgrid).value,
        "lp_star": lambda g: lp_star_seminorm(g, index, arcs, rgrid, cgrid).value,
        "bloch": lambda g: bloch_norm(g, index.alpha, grid.disk()).value,
    }
    rows = []
    for name, norm in norms.items():
        zero = norm(constant)
        rows.append(_result("vanish_on_constants", zero, 1e-10, zero <= 1e-10, subject=name))
        base = norm(f)
        error = abs(norm(c * f) - abs(c) * base) / base
        rows.append(_result("homogeneity", error, 1e-10, error <= 1e-10, subject=name))
    return rows


def _equivalence(check, norm_a, grid):
    """Spread and refinement stability of norm_a / campanato over the Cauchy family."""
    rows = []
    family = _cauchy_family()
    fine = grid.refined()
    for p, eta in EQUIVALENCE_INDICES:
        index = IndexParams(p, eta)

        def campanato(f, g):
            return campanato_seminorm(f, index, g.boundary_arcs(), g.circle())

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            coarse = equivalence_report(
                lambda f: norm_a(f, index, grid), lambda f: campanato(f, grid), family
            )
            refined = equivalence_report(
                lambda f: norm_a(f, index, fine), lambda f: campanato(f, fine), family
            )
        subject = repr(index)
        rows.append(
            _result(
                check + "_spread",
                coarse.spread,
                SPREAD_CEILING,
                coarse.spread <= SPREAD_CEILING,
                subject=subject,
            )
        )
        change = np.abs(refined.ratios - coarse.ratios) / coarse.ratios
        k = int(np.argmax(change))
        rows.append(
            _result(
                check + "_refinement",
                change[k],
                REFINEMENT_TOL,
                change[k] < REFINEMENT_TOL,
                family[k].b,
                subject,
            )
        )
    return rows


def check_mobius_equivalence(grid, selfmaps):
    def norm(f, index, g):
        return mobius_seminorm(f, index, g.wgrid(), g.circle())

    return _equivalence("mobius_campanato", norm, grid)


def check_lp_star_equivalence(grid, selfmaps):
    def norm(f, index, g):
        return lp_star_seminorm(f, index, g.boundary_arcs(), g.radial(), g.circle())

    return _equivalence("lp_star_campanato", norm, grid)


def check_bloch_embedding(grid, selfmaps):
    family = [Monomial(n) for n in range(1, 7)] + _cauchy_family() + [LogKernel()]
    rows = []
    for p, eta in EQUIVALENCE_INDICES:
        index = IndexParams(p, eta)
        maxima = []
        for g in (grid, grid.refined()):
            report = equivalence_report(
                lambda f: bloch_norm(f, index.alpha, g.disk()),
                lambda f: lp_star_seminorm(f, index, g.boundary_arcs(), g.radial(), g.circle()),
                family,
            )
            maxima.append(report.max)
        change = abs(maxima[1] - maxima[0]) / maxima[0]
        rows.append(
            _result(
                "bloch_embedding",
                change,
                REFINEMENT_TOL,
                np.isfinite(maxima[0]) and change < REFINEMENT_TOL,
                subject=repr(index),
            )
        )
    return rows


def check_regime_divergence(grid, selfmaps):
    f = Monomial(1)
    rows = []
    for eta, expected in ((1.0, "BOUNDED"), (3.5, "DIVERGENT")):
        report = campanato_seminorm(f, IndexParams(2, eta), grid.boundary_arcs(), grid.circle())
        flag = report.flags[0]
        rows.append(
            _result(
                "regime_flag",
                report.value,
                0,
                flag == expected,
                report.witness,
                "eta={:g} expects {}".format(eta, expected),
            )
        )
    return rows


# Carleson


def check_carleson_closed_form(grid, selfmaps):
    dgrid, arcs = grid.disk(), grid.box_arcs()
    h_min = min(arc.length for arc in arcs)
    report = carleson_norm(ConstantDensity(1.0), 2, arcs, dgrid)
    error = abs(report.value - (2 - h_min)) / (2 - h_min)
    rows = [_result("carleson_closed_form", error, 0.02, error <= 0.02, report.witness)]
    for h in (0.5, 0.25, 0.125):
        box = CarlesonBox(dyadic_arcs(int(np.log2(1 / h)))[-1])
        exact = 2 * h ** 2 - h ** 3
        error = abs(box_mass(ConstantDensity(1.0), box, dgrid) - exact) / exact
        rows.append(_result("box_mass", error, 0.02, error <= 0.02, subject="h={:g}".format(h)))
    return rows


def check_carleson_order(grid, selfmaps):
    dgrid, arcs = grid.disk(), grid.box_arcs()
    small, large = PowerWeight(1.0), ConstantDensity(1.0)
    lo = carleson_norm(small, 1, arcs, dgrid).value
    hi = carleson_norm(large, 1, arcs, dgrid).value
    scaled = carleson_norm(3 * small, 1, arcs, dgrid).value
    error = abs(scaled - 3 * lo) / (3 * lo)
    return [
        _result("carleson_monotone", lo - hi, 0, lo <= hi),
        _result("carleson_homogeneity", error, 1e-12, error <= 1e-12),
    ]


def check_level_sets(grid, selfmaps):
    dgrid, arcs = grid.disk(), grid.box_arcs()
    g = Polynomial([0, 1, 0.5])
    eta = 1.0
    z = dgrid.nodes.ravel()
    outer = level_set(g, eta, 0.5).contains(z)
    inner = level_set(g, eta, 1.0).contains(z)
    escaped = int(np.sum(inner & ~outer))
    rows = [_result("level_set_monotone", escaped, 0, escaped == 0)]
    bound = carleson_norm(DerivativeWeight(g, 1.0), eta, arcs, dgrid).value
    for eps in (0.5, 1.0):
        value = carleson_norm(LevelSetWeight(level_set(g, eta, eps)), eta, arcs, dgrid).value
        limit = bound / eps ** 2
        rows.append(
            _result(
                "level_set_bound",
                value,
                limit,
                value <= limit * (1 + 1e-12),
                subject="eps={:g}".format(eps),
            )
        )
    return rows


def check_polynomial_distance(grid, selfmaps):
    rows = []
    for g in (Polynomial([0, 1]), Polynomial([1, 0.5, 0, -0.25])):
        value = distance_estimate(g, 1.0, grid.box_arcs(), grid.disk())
        rows.append(_result("distance_polynomial", value, 0, value == 0, subject=repr(g)))
    return rows


def check_lacunary_distance(grid, selfmaps):
    f = Lacunary(2, 1)
    value = distance_estimate(f, 1.0, grid.box_arcs(), grid.disk())
    return [_result("distance_lacunary", value, 0, value > 0, subject=repr(f))]


def check_t_ab_refinement(grid, selfmaps):
    rows = []
    for field in (ConstantDensity(1.0), PowerWeight(-0.5)):
        values = [
            lemma31_ratio(field, 1, 2, 1, g.box_arcs(), g.disk()) for g in (grid, grid.refined())
        ]
        change = abs(values[1] - values[0]) / values[0]
        rows.append(
            _result(
                "t_ab_refinement",
                change,
                T_AB_REFINEMENT_TOL,
                change <= T_AB_REFINEMENT_TOL,
                subject=repr(field),
            )
        )
    return rows


# Composition


def check_stanton_identity(grid, selfmaps):
    dgrid = grid.disk()
    identity = PolynomialSelfMap([0, 1])
    rows = []
    for n in range(1, 5):
        value = stanton_norm(Monomial(n), identity, 2, dgrid).value
        rows.append(
            _result(
                "stanton_identity",
                abs(value - 1),
                1e-5,
                abs(value - 1) <= 1e-5,
                subject="n={}".format(n),
            )
        )
    return rows


def check_stanton_mobius(grid, selfmaps):
    dgrid, cgrid = grid.disk(), grid.circle()
    rows = []
    for case in ParameterGrid({"n": [1, 2, 3], "a": list(MOBIUS_CENTERS)}):
        f, phi = Monomial(case["n"]), MobiusSelfMap(case["a"])
        direct = hardy_norm(ComposedSpec(f, phi), 2, cgrid)
        error = abs(stanton_norm(f, phi, 2, dgrid).value - direct) / direct
        rows.append(
            _result("stanton_mobius", error, 1e-4, error <= 1e-4, case["a"], repr(f))
        )
    return rows


def check_lemma42(grid, selfmaps):
    dgrid, cgrid = grid.disk(), grid.circle()
    rows = []
    for phi in selfmaps or _default_selfmaps():
        result = lemma42_checks(phi, dgrid, cgrid)
        rows.append(_result("lemma42_gap", result.gap, 1e-4, result.gap <= 1e-4, subject=repr(phi)))
        rows.append(
            _result("lemma42_counting", result.ratio, 1, result.passes, result.witness, repr(phi))
        )
    return rows


def check_mobius_fixed_points(grid, selfmaps):
    rows = []
    for a in MOBIUS_CENTERS:
        phi = MobiusSelfMap(a)
        value = thm42_criterion(phi, 2, 1, 1, 2, grid.wgrid(), grid.circle()).value
        rows.append(
            _result("thm42_mobius", abs(value - 1), 1e-3, abs(value - 1) <= 1e-3, a)
        )
        value = thm43i_criterion(phi, 1, 2, 1, grid.disk()).value
        rows.append(
            _result("thm43i_mobius", abs(value - 1), 1e-8, abs(value - 1) <= 1e-8, a)
        )
    return rows


def check_splitting(grid, selfmaps):
    cgrid = grid.circle()
    worst, witness = 0.0, ""
    stress = ParameterGrid({"n": [1, 2, 3], "m": [1, 2], "c": [0.5, 1.0], "p": [2, 4]})
    for case in stress:
        phi = PolynomialSelfMap([0] * case["m"] + [case["c"]])
        value = splitting_ratio(Monomial(case["n"]), phi, case["p"], cgrid)
        if value > worst:
            worst, witness = value, repr(case)
    return [
        _result("splitting", worst, C_SPLIT, worst <= C_SPLIT * (1 + 1e-9), subject=witness)
    ]


def check_necessity_chain(grid, selfmaps):
    phi = PolynomialSelfMap([0, 0.5, 0.25])
    result = thm42_necessity_report(phi, 2, 1, 1, wgrid=grid.wgrid(), cgrid=grid.circle())
    return [
        _result("thm42_necessity", result.ratio, np.inf, np.isfinite(result.ratio), subject=repr(phi))
    ]


def check_bloch_pair(grid, selfmaps):
    dgrid = grid.disk()
    rows = []
    for alpha in (0.5, 1.0):
        pair = bloch_pair(alpha, dgrid=dgrid, floor=0)
        rows.append(
            _result(
                "bloch_pair",
                pair.ratio,
                PAIR_FLOOR,
                pair.ratio > PAIR_FLOOR,
                pair.argmin,
                "alpha={:g}".format(alpha),
            )
        )
    return rows


CHECKS = {
    "mobius_involution": check_mobius_involution,
    "derivatives": check_derivatives,
    "poisson_reproduction": check_poisson_reproduction,
    "szego": check_szego,
    "quadrature_mass": check_quadrature_mass,
    "constants_and_homogeneity": check_constants_and_homogeneity,
    "mobius_equivalence": check_mobius_equivalence,
    "lp_star_equivalence": check_lp_star_equivalence,
    "bloch_embedding": check_bloch_embedding,
    "regime_divergence": check_regime_divergence,
    "carleson_closed_form": check_carleson_closed_form,
    "carleson_order": check_carleson_order,
    "level_sets": check_level_sets,
    "polynomial_distance": check_polynomial_distance,
    "lacunary_distance": check_lacunary_distance,
    "t_ab_refinement": check_t_ab_refinement,
    "stanton_identity": check_stanton_identity,
    "stanton_mobius": check_stanton_mobius,
    "lemma42": check_lemma42,
    "mobius_fixed_points": check_mobius_fixed_points,
    "splitting": check_splitting,
    "necessity_chain": check_necessity_chain,
    "bloch_pair": check_bloch_pair,
}

SUITES = {
    "core": (
        "mobius_involution",
        "derivatives",
        "poisson_reproduction",
        "szego",
        "quadrature_mass",
    ),
    "seminorm-equivalence": (
        "constants_and_homogeneity",
        "mobius_equivalence",
        "lp_star_equivalence",
        "bloch_embedding",
        "regime_divergence",
    ),
    "carleson": (
        "carleson_closed_form",
        "carleson_order",
        "level_sets",
        "polynomial_distance",
        "lacunary_distance",
        "t_ab_refinement",
    ),
    "composition": (
        "stanton_identity",
        "stanton_mobius",
        "lemma42",
        "mobius_fixed_points",
        "splitting",
        "necessity_chain",
        "bloch_pair",
    ),
}
SUITES["all"] = tuple(name for suite in list(SUITES.values()) for name in suite)


def suite_checks(name):
    """Check names of a suite, or the single check of that name.

    Raises
    ------
    ConfigError
        If the name is neither a suite nor a check.
    """
    if name in SUITES:
        return SUITES[name]
    if name in CHECKS:
        return (name,)
    raise ConfigError(
        "suite", "unknown suite {!r}; expected one of {}.".format(name, sorted(SUITES))
    )


def verify_suite(name, grid=None, selfmaps=None):
    """Runs a verification suite.

    Parameters
    ----------
    name : str
        A suite of ``SUITES`` or a single check of ``CHECKS``.
    grid : GridParams, optional
        Resolution, by default ``GridParams()``.
    selfmaps : list of SelfMapSpec, optional
        Replaces the default self-map family of the counting-function checks.

    Returns
    -------
    Report
        One row per check result. ``Report.passed`` is the suite verdict; a
        check that raises is recorded as a failing row with its error.
    """
    checks = suite_checks(name)
    grid = grid if grid is not None else GridParams()
    rows = []
    for check in checks:
        logger.info("Running check %s.", check)
        try:
            out = CHECKS[check](grid, selfmaps)
        except ROW_ERRORS as e:
            logger.warning("Check %s raised: %s", check, e)
            out = [
                {
                    "operation": check,
                    "value": np.nan,
                    "passed": False,
                    "error": "{}: {}".format(type(e).__name__, e),
                }
            ]
        for row in out:
            if not row["passed"]:
                logger.warning("Check %s failed: %s", row["operation"], row)
        rows.extend(out)
    return Report("verify", rows)
