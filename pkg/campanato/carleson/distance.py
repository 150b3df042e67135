"""Distance from a Bloch-type function to the analytic Campanato space.

A level set Omega_eps(f) generates the measure
chi_Omega (1 - |z|^2)^(eta - 2) dA. On a finite grid every such measure is
Carleson, so membership is read off a refinement: the norm is computed on
the disk grid and on the same grid extended toward the boundary (interior
nodes shared, delta_min squared). A relative growth above
``DIVERGENCE_SLOPE`` marks the level DIVERGENT. The distance is the
smallest level that stays BOUNDED.
"""

import logging

import numpy as np
import pandas as pd

from ..analysis.grids import GridParams, disk_grid
from ..errors import NoTransitionError, PreconditionError, ResolutionError
from ..norms.seminorms import DIVERGENCE_SLOPE
from .measures import carleson_ratios, level_function

logger = logging.getLogger(__name__)

# Lowest tested level, relative to the Bloch seminorm.
LOW_LEVEL_FRACTION = 0.01

# Bisection steps of the distance estimate.
BISECTION_STEPS = 12

# A truncated series must keep terms down to this many times the finest scale.
TRUNCATION_MARGIN = 10


def _check_truncation(f, delta):
    """Raises ResolutionError when the grid sees past the last term of a truncated series."""
    degree = f.truncation
    if degree is not None and degree * delta < TRUNCATION_MARGIN:
        raise ResolutionError(
            "{!r} is truncated at degree {}, which the grid resolves down to 1 - |z| = {:g}; "
            "keep more terms.".format(f, degree, delta)
        )


class _LevelProfile:
    """Level values and weights of a function on a grid and its extension."""

    def __init__(self, f, eta, arcs, dgrid):
        radial = dgrid.radial
        _check_truncation(f, radial.delta_min ** 2)
        extended = disk_grid(
            2 * radial.n_radial, radial.delta_min ** 2, dgrid.n_angles, radial.order
        )
        self.eta = eta
        self.arcs = arcs
        self.grids = (dgrid, extended)
        self.levels = []
        self.weights = []
        for grid in self.grids:
            z = grid.nodes.ravel()
            self.levels.append(level_function(f, eta, z).reshape(grid.nodes.shape))
            self.weights.append((1 - np.abs(grid.nodes) ** 2) ** (eta - 2))

    @property
    def top(self):
        """Largest level value on either grid."""
        return max(float(np.max(level)) for level in self.levels)

    def norms(self, eps):
        out = []
        for grid, level, weight in zip(self.grids, self.levels, self.weights):
            samples = np.where(level >= eps, weight, 0.0)
            out.append(float(np.max(carleson_ratios(samples, self.eta, self.arcs, grid))))
        return out

    def row(self, eps):
        coarse, fine = self.norms(eps)
        if coarse > 0:
            slope = (fine - coarse) / coarse
            flag = "DIVERGENT" if slope > DIVERGENCE_SLOPE else "BOUNDED"
        else:
            slope = 0.0 if fine == 0 else np.inf
            flag = "BOUNDED" if fine == 0 else "DIVERGENT"
        return {"eps": float(eps), "norm": coarse, "refined_norm": fine, "slope": slope, "flag": flag}


def _check_eta(eta):
    if not 0 < eta < 2:
        raise PreconditionError("eta must lie in (0, 2), got {}.".format(eta))


def _grids(arcs, dgrid):
    defaults = GridParams()
    dgrid = dgrid if dgrid is not None else defaults.disk()
    arcs = arcs if arcs is not None else defaults.box_arcs()
    return arcs, dgrid


def distance_profile(f, eta, eps_list, arcs=None, dgrid=None):
    """eta-Carleson norms of the level-set measures of f.

    Parameters
    ----------
    f : FunctionSpec
        Function with finite Bloch-(3 - eta)/2 seminorm.
    eta : float
        Scaling exponent in (0, 2).
    eps_list : sequence of float
        Levels eps >= 0.
    arcs : sequence of Arc, optional
        Generating arcs, by default the dyadic box arcs of ``GridParams``.
    dgrid : DiskGrid, optional
        Disk grid.

    Returns
    -------
    pandas.DataFrame
        One row per level with columns ``eps``, ``norm`` (nonincreasing in
        eps), ``refined_norm``, ``slope`` and ``flag`` (BOUNDED or
        DIVERGENT).

    Raises
    ------
    PreconditionError
        If eta lies outside (0, 2).
    ResolutionError
        If f is a truncated series whose last term the extended grid
        resolves.
    """
    _check_eta(eta)
    arcs, dgrid = _grids(arcs, dgrid)
    profile = _LevelProfile(f, eta, arcs, dgrid)
    rows = [profile.row(eps) for eps in eps_list]
    return pd.DataFrame(rows, columns=["eps", "norm", "refined_norm", "slope", "flag"])


def _transition(profile, steps):
    """Bisects for the smallest BOUNDED level; raises NoTransitionError if all are."""
    hi = profile.top * (1 + 1e-12)
    lo = LOW_LEVEL_FRACTION * hi
    if profile.row(lo)["flag"] == "BOUNDED":
        raise NoTransitionError("Level {:.4g} is already bounded.".format(lo))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if profile.row(mid)["flag"] == "BOUNDED":
            hi = mid
        else:
            lo = mid
        logger.debug("Distance bracket [%.6g, %.6g].", lo, hi)
    return hi


def distance_estimate(f, eta, arcs=None, dgrid=None, steps=BISECTION_STEPS):
    """Grid surrogate of the distance from f to the analytic Campanato space.

    Parameters
    ----------
    f : FunctionSpec
        Function with finite Bloch-(3 - eta)/2 seminorm.
    eta : float
        Scaling exponent in (0, 2).
    arcs : sequence of Arc, optional
        Generating arcs.
    dgrid : DiskGrid, optional
        Disk grid.
    steps : int, optional
        Bisection steps, by default ``BISECTION_STEPS``.

    Returns
    -------
    float
        The BOUNDED/DIVERGENT transition level, or 0 when every tested
        level is bounded.

    Raises
    ------
    ResolutionError
        If f is a truncated series whose last term the extended grid
        resolves.
    """
    _check_eta(eta)
    arcs, dgrid = _grids(arcs, dgrid)
    profile = _LevelProfile(f, eta, arcs, dgrid)
    if profile.top == 0:
        return 0.0
    try:
        eps = _transition(profile, steps)
    except NoTransitionError as e:
        logger.info("No transition for %r: %s", f, e)
        return 0.0
    logger.info("Distance estimate for %r at eta=%g: %.6g", f, eta, eps)
    return eps


def in_closure(f, eta, arcs=None, dgrid=None):
    """Whether f lies in the Bloch closure of the analytic Campanato space."""
    return distance_estimate(f, eta, arcs, dgrid) == 0
