"""Composition operators: Stanton's formula, splitting and boundedness criteria."""

import logging
import warnings

import numpy as np
import pandas as pd
from sklearn.utils import Bunch

from ..analysis.functions import FunctionSpec, Lacunary, Monomial, ScaledCauchy
from ..analysis.grids import GridParams
from ..analysis.utils import as_complex
from ..errors import (
    CertificationError,
    DegenerateError,
    PreconditionError,
    SingularWeightError,
)
from ..norms.params import IndexParams, SeminormReport
from ..norms.seminorms import (
    arc_supremum,
    bloch_norm,
    default_arcs,
    hardy_norm,
    levels_flag,
    lp_star_seminorm,
    mobius_seminorm,
)
from .selfmaps import ComposedSpec

logger = logging.getLogger(__name__)

# Slack of the counting function bound at grid nodes.
COUNTING_SLACK = 1e-3

# Frozen regression bound of the splitting ratio over the monomial stress family.
C_SPLIT = 1.0

# Certified floor of min / max of the lacunary pair density.
PAIR_FLOOR = 0.01

_ORIGIN_TOL = 1e-14


def _require_origin(phi, name):
    if abs(phi.origin_value) > _ORIGIN_TOL:
        raise PreconditionError("{} needs phi(0) = 0, got {}.".format(name, phi.origin_value))


def _area_quadrature(phi, dgrid):
    c = phi.origin_value
    if abs(c) <= _ORIGIN_TOL:
        return dgrid.nodes.ravel(), dgrid.weights.ravel()
    quad = dgrid.recentered(c)
    return quad.nodes.ravel(), quad.weights.ravel()


def stanton_norm(f, phi, p, dgrid=None):
    """Hardy norm of f o phi through the counting function.

    ||f o phi||_p^p = |f(phi(0))|^p
                      + p^2 / 2 int |f|^(p-2) |f'|^2 N(phi, w) dA(w).

    The disk grid is pulled back through sigma_{phi(0)} so that its
    refinement toward the origin resolves the logarithmic singularity of
    N(phi, .) at phi(0).

    Parameters
    ----------
    f : FunctionSpec
        The function.
    phi : SelfMapSpec
        The self-map.
    p : float
        Exponent, p >= 1.
    dgrid : DiskGrid, optional
        Disk grid.

    Returns
    -------
    sklearn.utils.Bunch
        ``value``, the norm; ``skipped_mass``, the dA mass of nodes where the
        integrand is infinite; ``flags``.
    """
    if p < 1:
        raise ValueError("p must be at least 1.")
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    w, weights = _area_quadrature(phi, dgrid)
    counting = phi.counting_values(w)
    fw = np.abs(f.evaluate(w))
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = fw ** (p - 2) * np.abs(f.derivative(w)) ** 2 * counting
    finite = np.isfinite(integrand)
    skipped = float(np.sum(weights[~finite]))
    if skipped > 0:
        warnings.warn(
            "Skipped dA mass {:.3g} where the Stanton integrand is infinite.".format(skipped)
        )
    area = float(np.sum(weights[finite] * integrand[finite]))
    start = abs(complex(f.evaluate(phi.origin_value)[0])) ** p
    return Bunch(
        value=(start + p ** 2 / 2 * area) ** (1 / p),
        skipped_mass=skipped,
        flags=["SKIPPED-MASS"] if skipped > 0 else [],
    )


def lemma42_checks(phi, dgrid=None, cgrid=None, delta_min=None):
    """The area identity and the pointwise bound of the counting function.

    Parameters
    ----------
    phi : SelfMapSpec
        Self-map with phi(0) = 0.
    dgrid : DiskGrid, optional
        Disk grid for the area integral and the pointwise bound.
    cgrid : CircleGrid, optional
        Circle grid for ||phi||_2.
    delta_min : float, optional
        Nodes with 1 - |z| < delta_min are left out of the pointwise bound;
        by default the radial delta_min of ``dgrid``.

    Returns
    -------
    sklearn.utils.Bunch
        ``norm_sq`` (||phi||_2^2), ``area_integral`` (2 int N dA), ``gap``,
        ``ratio`` (max of N(phi, z) / ((4 / log 2) ||phi||_2^2 log(1/|z|))
        over 1/2 < |z| < 1 - delta_min), ``witness`` and ``passes``.

    Raises
    ------
    PreconditionError
        If phi(0) != 0.
    """
    _require_origin(phi, "lemma42_checks")
    defaults = GridParams()
    dgrid = dgrid if dgrid is not None else defaults.disk()
    cgrid = cgrid if cgrid is not None else defaults.circle()
    delta_min = delta_min if delta_min is not None else dgrid.radial.delta_min

    norm_sq = float(np.mean(np.abs(phi.evaluate(cgrid.nodes)) ** 2))
    w = dgrid.nodes.ravel()
    counting = phi.counting_values(w)
    area = 2 * float(np.sum(dgrid.weights.ravel() * counting))

    modulus = np.abs(w)
    band = (modulus > 0.5) & (modulus < 1 - delta_min)
    bound = 4 / np.log(2) * norm_sq * np.log(1 / modulus[band])
    ratios = counting[band] / bound
    k = int(np.argmax(ratios))
    ratio = float(ratios[k])
    return Bunch(
        norm_sq=norm_sq,
        area_integral=area,
        gap=abs(norm_sq - area),
        ratio=ratio,
        witness=complex(w[band][k]),
        passes=ratio <= 1 + COUNTING_SLACK,
    )


def splitting_ratio(f, phi, p, cgrid=None):
    """||f o phi||_p / (||f||_p ||phi||_p^(2/p)) on a circle grid.

    Raises
    ------
    PreconditionError
        If f(0) != 0, phi(0) != 0 or p < 2.
    DegenerateError
        If f or phi vanishes identically on the grid.
    """
    if p < 2:
        raise PreconditionError("The splitting inequality needs p >= 2.")
    if abs(complex(f.evaluate(0)[0])) > _ORIGIN_TOL:
        raise PreconditionError("The splitting inequality needs f(0) = 0.")
    _require_origin(phi, "splitting_ratio")
    cgrid = cgrid if cgrid is not None else GridParams().circle()
    norm_f = hardy_norm(f, p, cgrid)
    norm_phi = hardy_norm(ComposedSpec(Monomial(1), phi), p, cgrid)
    if norm_f == 0 or norm_phi == 0:
        raise DegenerateError("The splitting ratio needs f and phi not identically 0.")
    composed = hardy_norm(ComposedSpec(f, phi), p, cgrid)
    return composed / (norm_f * norm_phi ** (2 / p))


def _check_thm42(p, eta, lam, q):
    if q != 2:
        raise PreconditionError("The composition criterion fixes q = 2, got {}.".format(q))
    if not (0 < eta < 2 and 0 < lam < 2 and q <= p):
        raise PreconditionError(
            "Need 0 < eta, lambda < 2 = q <= p, got p={}, eta={}, lambda={}.".format(p, eta, lam)
        )


def thm42_criterion(phi, p, eta, lam, q=2, wgrid=None, cgrid=None):
    """Möbius criterion for C_phi from AL_{p, eta} into AL_{q, lambda}.

    sup_w (1 - |w|^2)^((1 - lambda) / q) / (1 - |phi(w)|^2)^((1 - eta) / p)
          * ||sigma_{phi(w)} o phi o sigma_w||_q.

    Parameters
    ----------
    phi : SelfMapSpec
        The self-map.
    p, eta, lam : float
        Indices with 0 < eta, lambda < 2 = q <= p.
    q : float, optional
        Target exponent, fixed to 2.
    wgrid : numpy.array, optional
        Points w.
    cgrid : CircleGrid, optional
        Base circle grid, adapted per radius of w.

    Returns
    -------
    SeminormReport
        The supremum with the attaining w.
    """
    _check_thm42(p, eta, lam, q)
    defaults = GridParams()
    w = as_complex(wgrid if wgrid is not None else defaults.wgrid())
    cgrid = cgrid if cgrid is not None else defaults.circle()
    modulus = np.abs(w)
    keys = np.round(modulus, 12)
    v = phi.evaluate(w)
    factor = (1 - modulus ** 2) ** ((1 - lam) / q) / (1 - np.abs(v) ** 2) ** ((1 - eta) / p)
    values = np.empty(w.size)
    levels = {}
    for key in np.unique(keys):
        sel = np.flatnonzero(keys == key)
        g = cgrid.adapted(modulus[sel].max())
        W = w[sel][:, None]
        Z = (W - g.nodes[None, :]) / (1 - np.conj(W) * g.nodes[None, :])
        Z /= np.abs(Z)
        inner = phi.evaluate(Z.ravel()).reshape(Z.shape)
        V = v[sel][:, None]
        composed = (V - inner) / (1 - np.conj(V) * inner)
        norms = np.mean(np.abs(composed) ** q, axis=1) ** (1 / q)
        values[sel] = factor[sel] * norms
        levels[float(key)] = float(np.max(values[sel]))
    k = int(np.argmax(values))
    return SeminormReport(
        values[k],
        complex(w[k]),
        resolution={"n_circle": cgrid.n, "n_w": w.size},
        flags=[levels_flag(levels, reverse=False)],
        levels=levels,
    )


def thm42_necessity_report(
    phi, p, eta, lam, radii=(0.3, 0.6, 0.9, 0.97), wgrid=None, cgrid=None
):
    """Compares the criterion with the bounded test functions F_b.

    For each b the report holds mobius_seminorm(F_b o phi; 2, lambda) over
    mobius_seminorm(F_b; p, eta). The F_b centers lie on the ray through
    phi(w*) for the criterion witness w*.

    Returns
    -------
    sklearn.utils.Bunch
        ``criterion``, ``table`` (pandas.DataFrame with one row per b),
        ``chain`` (max of the ratios) and ``ratio`` (criterion / chain).
    """
    _check_thm42(p, eta, lam, 2)
    criterion = thm42_criterion(phi, p, eta, lam, 2, wgrid, cgrid)
    target = complex(phi.evaluate(criterion.witness)[0])
    direction = target / abs(target) if abs(target) > 0 else 1.0
    rows = []
    for radius in radii:
        b = radius * direction
        test = ScaledCauchy(b, p, eta)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            source = mobius_seminorm(test, IndexParams(p, eta), wgrid, cgrid).value
            image = mobius_seminorm(ComposedSpec(test, phi), IndexParams(2, lam), wgrid, cgrid).value
        rows.append(
            {"b": abs(b), "source": source, "image": image, "ratio": image / source if source else np.nan}
        )
    table = pd.DataFrame(rows, columns=["b", "source", "image", "ratio"])
    chain = float(np.nanmax(table["ratio"].to_numpy()))
    return Bunch(
        criterion=criterion.value,
        table=table,
        chain=chain,
        ratio=criterion.value / chain if chain > 0 else np.inf,
    )


def _check_thm43(alpha, p, eta):
    if not alpha > 0:
        raise PreconditionError("alpha must be positive, got {}.".format(alpha))
    if not 0 < eta < 1 + p:
        raise PreconditionError("Need 0 < eta < 1 + p, got p={}, eta={}.".format(p, eta))


def thm43i_criterion(phi, alpha, p, eta, dgrid=None):
    """sup_w (1 - |w|^2)^alpha |phi'(w)| / (1 - |phi(w)|^2)^((p + 1 - eta) / p).

    Characterizes C_phi from AL_{p, eta} into the Bloch-alpha space.

    Returns
    -------
    SeminormReport
        The supremum over the disk grid and the origin, with its witness.
    """
    _check_thm43(alpha, p, eta)
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    w = np.concatenate([[0j], dgrid.nodes.ravel()])
    v = phi.evaluate(w)
    values = (
        (1 - np.abs(w) ** 2) ** alpha
        * np.abs(phi.derivative(w))
        / (1 - np.abs(v) ** 2) ** ((p + 1 - eta) / p)
    )
    k = int(np.argmax(values))
    return SeminormReport(
        values[k],
        complex(w[k]),
        resolution={"n_points": w.size, "delta_min": dgrid.radial.delta_min},
    )


def thm43ii_criterion(phi, alpha, p, eta, arcs=None, rgrid=None, cgrid=None):
    """Carleson-box criterion with the weight (1 - r)^(1 - 2 alpha).

    sup_I (h^-eta int_I (int_{1-h}^1 |phi'(r zeta)|^2 (1 - r)^(1 - 2 alpha) dr)^(p/2)
           |dzeta| / 2 pi)^(1/p).

    Raises
    ------
    SingularWeightError
        If alpha >= 1 and phi' does not vanish near the circle, where the
        weight is not integrable.
    """
    _check_thm43(alpha, p, eta)
    defaults = GridParams()
    rgrid = rgrid if rgrid is not None else defaults.radial()
    cgrid = cgrid if cgrid is not None else defaults.circle()
    arcs = arcs if arcs is not None else default_arcs(cgrid)
    r = rgrid.nodes
    if alpha >= 1:
        edge = (1 - rgrid.delta_min) * cgrid.nodes
        if np.max(np.abs(phi.derivative(edge))) > 1e-12:
            raise SingularWeightError(
                "(1 - r)^(1 - 2 alpha) is not integrable for alpha = {} and phi' != 0.".format(
                    alpha
                )
            )
    z = r[:, None] * cgrid.nodes[None, :]
    density = np.abs(phi.derivative(z.ravel()).reshape(z.shape)) ** 2
    weighted = (rgrid.weights * (1 - r) ** (1 - 2 * alpha))[:, None] * density
    tail = np.cumsum(weighted[::-1], axis=0)[::-1]

    def arc_means(h, idx):
        inner = tail[rgrid.first_index(h)]
        return np.mean(inner[idx] ** (p / 2), axis=1)

    value, witness, levels = arc_supremum(arcs, cgrid.n, eta, p, arc_means)
    return SeminormReport(
        value,
        witness,
        resolution={"n_circle": cgrid.n, "n_radial": rgrid.n_radial, "n_arcs": len(arcs)},
        flags=[levels_flag(levels)],
        levels=levels,
    )


def pair_density(specs, alpha, dgrid):
    """(1 - |z|^2)^(2 alpha) sum_i |f_i'(z)|^2 on the nodes of a disk grid."""
    z = dgrid.nodes.ravel()
    total = sum(np.abs(f.derivative(z)) ** 2 for f in specs)
    return ((1 - np.abs(z) ** 2) ** (2 * alpha) * total).reshape(dgrid.nodes.shape)


def bloch_pair(alpha, base=16, n_terms=10, dgrid=None, floor=PAIR_FLOOR):
    """Two lacunary functions whose Bloch-alpha densities never vanish together.

    The gap sequences are base^k and sqrt(base) * base^k, so every scale
    1 - |z| ~ base^(-k / 2) carries a dominant term of one of them.

    Parameters
    ----------
    alpha : float
        Bloch order, alpha > 0.
    base : int, optional
        Gap ratio, a perfect square, by default 16.
    n_terms : int, optional
        Terms of each series, by default 10.
    dgrid : DiskGrid, optional
        Certification grid.
    floor : float, optional
        Required lower bound of min / max, by default ``PAIR_FLOOR``.

    Returns
    -------
    sklearn.utils.Bunch
        ``f1``, ``f2``, ``min``, ``max``, ``ratio`` (min / max) and the
        grid points attaining the extrema.

    Raises
    ------
    CertificationError
        If min <= floor * max on the grid.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive, got {}.".format(alpha))
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    f1 = Lacunary(base, alpha, 0.0, n_terms)
    f2 = Lacunary(base, alpha, 0.5, n_terms)
    density = pair_density([f1, f2], alpha, dgrid).ravel()
    lo, hi = int(np.argmin(density)), int(np.argmax(density))
    nodes = dgrid.nodes.ravel()
    low, high = float(density[lo]), float(density[hi])
    logger.info("Lacunary pair at alpha=%g: min %.4g, max %.4g.", alpha, low, high)
    if not low > floor * high:
        raise CertificationError(
            "Pair density min {:.3g} is not above {:g} * max {:.3g}.".format(low, floor, high)
        )
    return Bunch(
        f1=f1,
        f2=f2,
        min=low,
        max=high,
        ratio=low / high,
        argmin=complex(nodes[lo]),
        argmax=complex(nodes[hi]),
    )


def composition_bloch_ratio(f, phi, alpha, params, dgrid=None, arcs=None, rgrid=None, cgrid=None):
    """bloch_norm(f o phi, alpha) / lp_star_seminorm(f, params).

    Raises
    ------
    DegenerateError
        If the Littlewood-Paley seminorm of f vanishes.
    """
    if not isinstance(f, FunctionSpec):
        raise TypeError("f must be a function spec.")
    denominator = lp_star_seminorm(f, params, arcs, rgrid, cgrid).value
    if denominator == 0:
        raise DegenerateError("f has zero Littlewood-Paley seminorm.")
    return bloch_norm(ComposedSpec(f, phi), alpha, dgrid).value / denominator
