"""Hardy, Campanato, Möbius, Littlewood-Paley and Bloch seminorms."""

import warnings

import numpy as np
from sklearn.utils import Bunch

from ..analysis.boundary import FourierSeries, boundary_values
from ..analysis.functions import FunctionSpec
from ..analysis.grids import GridParams, circle_grid, dyadic_arcs, group_by_length
from ..analysis.utils import as_complex
from ..errors import DegenerateError, DomainError, RegimeWarning
from .params import SeminormReport

# Relative growth of the finest level over the next one that flags divergence.
DIVERGENCE_SLOPE = 0.1

# Seminorm values below this count as zero in ratio reports.
ZERO_TOL = 1e-12

# Largest number of complex samples evaluated in one block.
_BLOCK_SIZE = 2 ** 22


def default_arcs(cgrid, min_nodes=8, max_depth=10):
    """Dyadic arcs down to the finest length resolved by a circle grid."""
    depth = min(max_depth, int(np.floor(np.log2(cgrid.n / min_nodes))))
    return dyadic_arcs(depth)


def divergence_flag(levels):
    """BOUNDED or DIVERGENT from suprema ordered from coarse to fine.

    Parameters
    ----------
    levels : sequence of float
        Per-level suprema, the finest level last.

    Returns
    -------
    str
        DIVERGENT when the finest level exceeds the previous one by more
        than ``DIVERGENCE_SLOPE``, BOUNDED otherwise.
    """
    levels = list(levels)
    if len(levels) < 2:
        return "BOUNDED"
    fine, coarse = levels[-1], levels[-2]
    if fine > (1 + DIVERGENCE_SLOPE) * coarse:
        return "DIVERGENT"
    return "BOUNDED"


def arc_supremum(arcs, n_nodes, eta, p, arc_means, min_nodes=8):
    """Maximum of (h^-eta * h * mean_I g)^(1/p) over an arc family.

    Parameters
    ----------
    arcs : sequence of Arc
        The arc family.
    n_nodes : int
        Number of equispaced circle nodes the integrand is sampled on.
    eta : float
        Scaling exponent.
    p : float
        Outer exponent.
    arc_means : callable
        ``arc_means(h, idx)`` returns the means of the integrand g over the
        arcs of length h whose node indices are the rows of ``idx``.
    min_nodes : int, optional
        Minimum number of nodes per arc, by default 8.

    Returns
    -------
    value : float
        The supremum.
    witness : Arc
        The first arc attaining it.
    levels : dict
        Supremum per arc length.
    """
    if len(arcs) == 0:
        raise ValueError("The arc family is empty.")
    values = np.empty(len(arcs))
    levels = {}
    for h, positions in group_by_length(arcs).items():
        idx = np.stack([arcs[i].indices(n_nodes, min_nodes=min_nodes) for i in positions])
        means = np.maximum(arc_means(h, idx), 0)
        values[positions] = (h ** (1 - eta) * means) ** (1 / p)
        levels[h] = float(np.max(values[positions]))
    k = int(np.argmax(values))
    return float(values[k]), arcs[k], levels


def levels_flag(levels, reverse=True):
    keys = sorted(levels, reverse=reverse)
    return divergence_flag([levels[k] for k in keys])


def hardy_norm(f, p, g=None, fallback_radius=None):
    """Hardy norm from boundary values on a circle grid.

    Parameters
    ----------
    f : FunctionSpec, FourierSeries or numpy.array
        The function, or its samples on ``g``.
    p : float
        Exponent, p >= 1.
    g : CircleGrid, optional
        Circle grid, by default the default grid of ``GridParams``.
    fallback_radius : float, optional
        Radius for variants singular on the circle, by default None.

    Returns
    -------
    float
        (sum_k |f(zeta_k)|^p / N)^(1/p).

    Raises
    ------
    DomainError
        If f is singular on the circle and no fallback radius is given.
    """
    if p < 1:
        raise ValueError("p must be at least 1.")
    g = g if g is not None else GridParams().circle()
    values = np.abs(boundary_values(f, g, fallback_radius))
    if np.isinf(p):
        return float(np.max(values))
    return float(np.mean(values ** p) ** (1 / p))


def campanato_seminorm(f, params, arcs=None, cgrid=None, fallback_radius=None):
    """Campanato mean-oscillation seminorm over an arc family.

    Parameters
    ----------
    f : numpy.array, FunctionSpec or FourierSeries
        Boundary samples on ``cgrid``, or a function sampled on it.
    params : IndexParams
        The pair (p, eta).
    arcs : sequence of Arc, optional
        Arc family; dyadic arcs resolved by ``cgrid`` by default.
    cgrid : CircleGrid, optional
        Circle grid; inferred from the number of samples for arrays.
    fallback_radius : float, optional
        Radius for variants singular on the circle, by default None.

    Returns
    -------
    SeminormReport
        sup_I (|I|^-eta int_I |f - f_I|^p |dzeta| / 2 pi)^(1/p), with the
        attaining arc and per-length suprema. The DIVERGENT flag marks
        growth at the finest arc length.

    Raises
    ------
    ResolutionError
        If an arc contains fewer than 8 grid nodes.
    """
    if cgrid is None:
        if isinstance(f, (FunctionSpec, FourierSeries)):
            cgrid = GridParams().circle()
        else:
            cgrid = circle_grid(np.asarray(f).size)
    arcs = arcs if arcs is not None else default_arcs(cgrid)
    samples = boundary_values(f, cgrid, fallback_radius)
    p = params.p

    def arc_means(h, idx):
        v = samples[idx]
        centered = v - np.mean(v, axis=1, keepdims=True)
        return np.mean(np.abs(centered) ** p, axis=1)

    value, witness, levels = arc_supremum(arcs, cgrid.n, params.eta, p, arc_means)
    notes = []
    if params.regime == "constants":
        notes.append("eta > 1 + p: only constants have finite seminorm")
    return SeminormReport(
        value,
        witness,
        resolution={"n_circle": cgrid.n, "n_arcs": len(arcs), "h_min": min(levels)},
        flags=[levels_flag(levels)],
        levels=levels,
        notes=notes,
    )


def _check_mobius_regime(params):
    if params.in_mobius_regime:
        return []
    message = "{} lies outside 0 < eta < 2 <= 1 + p.".format(params)
    warnings.warn(message, RegimeWarning)
    return [message]


def _mobius_supremum(evaluate, center, params, wgrid, cgrid, radius=1.0):
    """sup over w of (1 - |w|^2)^((1 - eta) / p) ||F(sigma_w) - center(w)||_p."""
    w = as_complex(wgrid)
    modulus = np.abs(w)
    keys = np.round(modulus, 12)
    scale = (1 - modulus ** 2) ** ((1 - params.eta) / params.p)
    values = np.empty(w.size)
    levels = {}
    for key in np.unique(keys):
        sel = np.flatnonzero(keys == key)
        g = cgrid.adapted(modulus[sel].max())
        zeta = radius * g.nodes
        rows = max(1, _BLOCK_SIZE // g.n)
        for start in range(0, sel.size, rows):
            block = sel[start : start + rows]
            W = w[block][:, None]
            Z = (W - zeta[None, :]) / (1 - np.conj(W) * zeta[None, :])
            if radius == 1.0:
                Z /= np.abs(Z)
            diff = evaluate(Z.ravel()).reshape(Z.shape) - center(w[block])[:, None]
            norms = np.mean(np.abs(diff) ** params.p, axis=1) ** (1 / params.p)
            values[block] = scale[block] * norms
        levels[float(key)] = float(np.max(values[sel]))
    k = int(np.argmax(values))
    return float(values[k]), complex(w[k]), levels


def mobius_seminorm(f, params, wgrid=None, cgrid=None, fallback_radius=None):
    """Möbius-invariant seminorm of an analytic function.

    Parameters
    ----------
    f : FunctionSpec
        The function.
    params : IndexParams
        The pair (p, eta). Outside 0 < eta < 2 <= 1 + p the value is still
        computed, with a RegimeWarning and a note on the report.
    wgrid : numpy.array, optional
        Points w, by default the w grid of ``GridParams``.
    cgrid : CircleGrid, optional
        Base circle grid, adapted per radius of w.
    fallback_radius : float, optional
        Radius for variants singular on the circle, by default None.

    Returns
    -------
    SeminormReport
        sup_w (1 - |w|^2)^((1 - eta) / p) ||f o sigma_w - f(w)||_p with the
        attaining w. f o sigma_w is evaluated by pullback.
    """
    defaults = GridParams()
    wgrid = wgrid if wgrid is not None else defaults.wgrid()
    cgrid = cgrid if cgrid is not None else defaults.circle()
    notes = _check_mobius_regime(params)
    radius = 1.0
    if not np.all(f.finite_on_boundary(cgrid.nodes)):
        if fallback_radius is None:
            raise DomainError(
                "{} is singular on the circle and no fallback radius is configured.".format(
                    f.type_name
                )
            )
        radius = fallback_radius
    value, witness, levels = _mobius_supremum(
        f.evaluate, f.evaluate, params, wgrid, cgrid, radius
    )
    return SeminormReport(
        value,
        witness,
        resolution={"n_circle": cgrid.n, "n_w": int(np.size(wgrid)), "radius": radius},
        flags=[levels_flag(levels, reverse=False)],
        levels=levels,
        notes=notes,
    )


def boundary_mobius_seminorm(series, params, wgrid=None, cgrid=None):
    """Möbius characterization for boundary data.

    The analytic formula with f(w) replaced by the Poisson extension
    Pf(w), so it applies to boundary functions that are not analytic.

    Parameters
    ----------
    series : FourierSeries
        Boundary function.
    params : IndexParams
        The pair (p, eta).
    wgrid : numpy.array, optional
        Points w.
    cgrid : CircleGrid, optional
        Base circle grid.

    Returns
    -------
    SeminormReport
        sup_w (1 - |w|^2)^((1 - eta) / p) ||f o sigma_w - Pf(w)||_p.
    """
    defaults = GridParams()
    wgrid = wgrid if wgrid is not None else defaults.wgrid()
    cgrid = cgrid if cgrid is not None else defaults.circle()
    notes = _check_mobius_regime(params)
    value, witness, levels = _mobius_supremum(series, series, params, wgrid, cgrid)
    return SeminormReport(
        value,
        witness,
        resolution={"n_circle": cgrid.n, "n_w": int(np.size(wgrid))},
        flags=[levels_flag(levels, reverse=False)],
        levels=levels,
        notes=notes,
    )


def lp_star_seminorm(f, params, arcs=None, rgrid=None, cgrid=None, variant="analytic"):
    """Littlewood-Paley seminorm over Carleson boxes.

    Parameters
    ----------
    f : FunctionSpec or FourierSeries
        The function. Fourier series require ``variant="harmonic"``.
    params : IndexParams
        The pair (p, eta).
    arcs : sequence of Arc, optional
        Arc family; dyadic arcs resolved by ``cgrid`` by default.
    rgrid : RadialGrid, optional
        Radial grid for the inner integral.
    cgrid : CircleGrid, optional
        Circle grid for the outer integral.
    variant : str, optional
        "analytic" integrates |f'|^2 (1 - r); "harmonic" integrates
        |grad Pf|^2 (1 - r^2), with |grad f|^2 = 2 |f'|^2 for analytic f.
        By default "analytic".

    Returns
    -------
    SeminormReport
        sup_I (h^-eta int_I (int_{1-h}^1 weight * D dr)^(p/2) |dzeta| / 2 pi)^(1/p).

    Raises
    ------
    ResolutionError
        If the radial grid cannot resolve 1 - h for the shortest arc.
    """
    defaults = GridParams()
    rgrid = rgrid if rgrid is not None else defaults.radial()
    cgrid = cgrid if cgrid is not None else defaults.circle()
    arcs = arcs if arcs is not None else default_arcs(cgrid)
    r = rgrid.nodes
    z = r[:, None] * cgrid.nodes[None, :]

    if variant == "analytic":
        if not isinstance(f, FunctionSpec):
            raise ValueError("The analytic variant needs an analytic function spec.")
        density = np.abs(f.derivative(z.ravel()).reshape(z.shape)) ** 2
        weight = 1 - r
    elif variant == "harmonic":
        if isinstance(f, FourierSeries):
            density = f.gradient_sq(z.ravel()).reshape(z.shape)
        else:
            density = 2 * np.abs(f.derivative(z.ravel()).reshape(z.shape)) ** 2
        weight = 1 - r ** 2
    else:
        raise ValueError("Unknown variant '{}'.".format(variant))

    weighted = (rgrid.weights * weight)[:, None] * density
    tail = np.cumsum(weighted[::-1], axis=0)[::-1]
    p = params.p

    def arc_means(h, idx):
        inner = tail[rgrid.first_index(h)]
        return np.mean(inner[idx] ** (p / 2), axis=1)

    value, witness, levels = arc_supremum(arcs, cgrid.n, params.eta, p, arc_means)
    return SeminormReport(
        value,
        witness,
        resolution={
            "n_circle": cgrid.n,
            "n_radial": rgrid.n_radial,
            "delta_min": rgrid.delta_min,
            "n_arcs": len(arcs),
            "variant": variant,
        },
        flags=[levels_flag(levels)],
        levels=levels,
    )


def bloch_norm(f, alpha, dgrid=None):
    """Bloch-alpha seminorm on a disk grid.

    Parameters
    ----------
    f : FunctionSpec
        The function.
    alpha : float
        Bloch order, alpha > 0.
    dgrid : DiskGrid, optional
        Disk grid; the origin is always included.

    Returns
    -------
    SeminormReport
        max (1 - |w|^2)^alpha |f'(w)| with the attaining point w.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive, got {}.".format(alpha))
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    points = np.concatenate([[0j], dgrid.nodes.ravel()])
    values = (1 - np.abs(points) ** 2) ** alpha * np.abs(f.derivative(points))
    k = int(np.argmax(values))
    return SeminormReport(
        values[k],
        complex(points[k]),
        resolution={"n_points": points.size, "delta_min": dgrid.radial.delta_min},
    )


def _as_value(result):
    if isinstance(result, SeminormReport):
        return result.value
    return float(result)


def equivalence_report(norm_a, norm_b, family, zero_tol=ZERO_TOL):
    """Ratio statistics of two seminorm functionals over a family.

    Parameters
    ----------
    norm_a, norm_b : callable
        Functionals returning a float or a SeminormReport.
    family : sequence
        Inputs passed to both functionals.
    zero_tol : float, optional
        Values below this count as zero, by default ``ZERO_TOL``.

    Returns
    -------
    sklearn.utils.Bunch
        Fields ``ratios`` (nan for 0/0 members), ``min``, ``max``,
        ``spread`` (max / min), ``excluded`` (positions of 0/0 members)
        and ``flags`` (DEGENERATE when no ratio is defined).

    Raises
    ------
    DegenerateError
        If norm_b vanishes on a member where norm_a does not.
    """
    family = list(family)
    if not family:
        raise ValueError("The family is empty.")
    ratios = np.full(len(family), np.nan)
    excluded = []
    for i, f in enumerate(family):
        a = _as_value(norm_a(f))
        b = _as_value(norm_b(f))
        if b <= zero_tol:
            if a <= zero_tol:
                excluded.append(i)
                continue
            raise DegenerateError(
                "Second seminorm vanishes on family member {} but the first is {:g}.".format(
                    i, a
                )
            )
        ratios[i] = a / b
    defined = ratios[~np.isnan(ratios)]
    if defined.size == 0:
        return Bunch(
            ratios=ratios,
            min=np.nan,
            max=np.nan,
            spread=np.nan,
            excluded=excluded,
            flags=["DEGENERATE"],
        )
    lo, hi = float(np.min(defined)), float(np.max(defined))
    return Bunch(
        ratios=ratios,
        min=lo,
        max=hi,
        spread=hi / lo if lo > 0 else np.inf,
        excluded=excluded,
        flags=["DEGENERATE"] if excluded else [],
    )
