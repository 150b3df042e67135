"""Preimages and Nevanlinna counting functions of self-maps."""

import warnings

import numpy as np
from numpy_groupies import aggregate
from scipy.sparse.csgraph import connected_components

from ..analysis.utils import as_complex
from ..errors import ConditioningWarning, ConvergenceError, DomainError, InfiniteValueError

# Roots closer than this are merged into one root with multiplicity.
CLUSTER_TOL = 1e-7

# Distinct roots closer than this trigger a ConditioningWarning.
CONDITIONING_TOL = 1e-6

# Largest accepted |phi(z) - w| after polishing.
RESIDUAL_TOL = 1e-10

# Preimages with modulus below this count as the origin.
ORIGIN_TOL = 1e-14

NEWTON_STEPS = 6

_BATCH = 65536


def _horner(coeffs, z):
    """Values and derivatives of row-wise polynomials at row-wise points."""
    value = np.zeros(z.shape, dtype=np.complex128)
    deriv = np.zeros(z.shape, dtype=np.complex128)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        deriv = deriv * z + value
        value = value * z + coeffs[:, k : k + 1]
    return value, deriv


def _roots(coeffs):
    """All complex roots of each row of ascending coefficients."""
    degree = coeffs.shape[1] - 1
    lead = coeffs[:, -1]
    if np.any(lead == 0):
        raise ConvergenceError("The preimage equation lost its leading coefficient.")
    if degree == 1:
        return (-coeffs[:, 0] / lead)[:, None]
    companion = np.zeros((coeffs.shape[0], degree, degree), dtype=np.complex128)
    companion[:, np.arange(1, degree), np.arange(degree - 1)] = 1
    companion[:, :, -1] = -coeffs[:, :-1] / lead[:, None]
    return np.linalg.eigvals(companion)


def _polish(coeffs, roots):
    for _ in range(NEWTON_STEPS):
        value, deriv = _horner(coeffs, roots)
        safe = np.abs(deriv) > 1e-8 * np.maximum(1, np.abs(value))
        step = np.where(safe, value / np.where(safe, deriv, 1), 0)
        roots = roots - step
    return roots


def _solve(phi, w):
    """Polished disk roots of phi(z) = w, as a masked (n_w, degree) array."""
    coeffs = phi.equations(w)
    roots = _polish(coeffs, _roots(coeffs))
    inside = np.abs(roots) < 1
    if np.any(inside):
        residual = np.abs(phi._value(roots[inside]) - np.repeat(w, roots.shape[1])[inside.ravel()])
        worst = float(np.max(residual))
        if worst > RESIDUAL_TOL:
            raise ConvergenceError(
                "Preimage refinement stalled at residual {:.3g} for {!r}.".format(worst, phi)
            )
    return roots, inside


def _clusters(z):
    """Merges roots within CLUSTER_TOL and returns (centers, multiplicities)."""
    if z.size == 0:
        return z, np.zeros(0, dtype=int)
    dist = np.abs(z[:, None] - z[None, :])
    n, labels = connected_components(dist < CLUSTER_TOL, directed=False)
    centers = aggregate(labels, z.real, func="mean", size=n) + 1j * aggregate(
        labels, z.imag, func="mean", size=n
    )
    mult = aggregate(labels, 1, func="sum", size=n).astype(int)
    if n > 1:
        gaps = np.abs(centers[:, None] - centers[None, :])[np.triu_indices(n, 1)]
        if np.min(gaps) < CONDITIONING_TOL:
            warnings.warn(
                "Preimages {:.3g} apart; multiplicities may be misassigned.".format(
                    float(np.min(gaps))
                ),
                ConditioningWarning,
            )
    return centers, mult


def preimages(self, w):
    """Disk preimages of w with multiplicities.

    Parameters
    ----------
    w : complex
        Target with ``|w| < 1``.

    Returns
    -------
    list of (complex, int)
        Roots z of phi(z) = w with |z| < 1, polished to residual at most
        ``RESIDUAL_TOL``, clustered at ``CLUSTER_TOL``.

    Raises
    ------
    ConvergenceError
        If polishing fails to reach ``RESIDUAL_TOL``.
    """
    w = complex(w)
    if abs(w) >= 1:
        raise DomainError("Preimages are computed for |w| < 1, got {}.".format(w))
    roots, inside = _solve(self, np.array([w]))
    centers, mult = _clusters(roots[0][inside[0]])
    order = np.lexsort((centers.imag, centers.real))
    return [(complex(centers[k]), int(mult[k])) for k in order]


def counting_values(self, w, r=None):
    """Counting function at many points, inf where 0 is a preimage.

    Parameters
    ----------
    w : numpy.array
        Points with ``|w| < 1``.
    r : float, optional
        Truncation radius of N_r; the full counting function by default.

    Returns
    -------
    numpy.array
        sum over preimages z with |z| < r of log(r / |z|).
    """
    w = as_complex(w)
    if np.any(np.abs(w) >= 1):
        raise DomainError("The counting function is evaluated at |w| < 1.")
    radius = 1.0 if r is None else float(r)
    out = np.empty(w.size)
    for start in range(0, w.size, _BATCH):
        block = w[start : start + _BATCH]
        roots, inside = _solve(self, block)
        modulus = np.abs(roots)
        counted = inside & (modulus < radius)
        with np.errstate(divide="ignore"):
            terms = np.where(counted, np.log(radius / modulus), 0.0)
        terms[counted & (modulus < ORIGIN_TOL)] = np.inf
        out[start : start + _BATCH] = np.sum(terms, axis=1)
    return out


def nevanlinna(self, w, r=None):
    """Nevanlinna counting function N(phi, w), or N_r(phi, w) for a radius r.

    Parameters
    ----------
    w : complex
        Point with ``|w| < 1``.
    r : float, optional
        Truncation radius in (0, 1], by default the full function.

    Returns
    -------
    float
        sum of multiplicity * log(r / |z|) over preimages with |z| < r.

    Raises
    ------
    InfiniteValueError
        If 0 is a preimage of w.
    """
    if r is not None and not 0 < r <= 1:
        raise ValueError("The truncation radius must lie in (0, 1].")
    radius = 1.0 if r is None else float(r)
    total = 0.0
    for z, mult in self.preimages(w):
        if abs(z) < ORIGIN_TOL:
            raise InfiniteValueError("0 is a preimage of w = {}.".format(w))
        if abs(z) < radius:
            total += mult * np.log(radius / abs(z))
    return total
