"""Möbius automorphisms of the unit disk."""

import numpy as np

from ..errors import DomainError
from .utils import as_complex, complex_pair

# Points closer than this to the boundary count as boundary points.
BOUNDARY_TOL = 1e-14


class MobiusMap:
    """The involutive disk automorphism sigma_w(z) = (w - z) / (1 - conj(w) z).

    Parameters
    ----------
    w : complex
        Parameter of the map, with ``|w| <= 1``.

    Raises
    ------
    DomainError
        If ``|w| > 1``.
    """

    def __init__(self, w):
        w = complex(w)
        if abs(w) > 1 + BOUNDARY_TOL:
            raise DomainError("Mobius parameter must satisfy |w| <= 1, got {}.".format(w))
        self.w = w

    def __repr__(self):
        return "MobiusMap(w={})".format(self.w)

    def __eq__(self, other):
        return isinstance(other, MobiusMap) and self.w == other.w

    def __hash__(self):
        return hash(("MobiusMap", self.w))

    def __call__(self, z):
        return mobius_apply(self, z)

    def derivative(self, z):
        """Derivative -(1 - |w|^2) / (1 - conj(w) z)^2."""
        z = as_complex(z)
        denom = 1 - np.conj(self.w) * z
        if np.any(denom == 0):
            raise DomainError("Mobius derivative has a vanishing denominator.")
        return -(1 - abs(self.w) ** 2) / denom ** 2

    def to_dict(self):
        return {"type": "MobiusMap", "w": complex_pair(self.w)}

    @classmethod
    def from_dict(cls, data):
        return cls(complex(*data["w"]))


def mobius_apply(m, z):
    """Applies a Möbius map to points of the closed disk.

    Parameters
    ----------
    m : MobiusMap
        The map sigma_w.
    z : complex, array-like
        Points with ``|z| <= 1``.

    Returns
    -------
    numpy.array
        sigma_w(z), with the shape of ``as_complex(z)``.

    Raises
    ------
    DomainError
        If a point lies outside the closed disk or the denominator vanishes.
    """
    z = as_complex(z)
    if np.any(np.abs(z) > 1 + BOUNDARY_TOL):
        raise DomainError("Mobius maps are applied on the closed unit disk only.")
    denom = 1 - np.conj(m.w) * z
    if np.any(denom == 0):
        raise DomainError("1 - conj(w) z vanishes for w = {}.".format(m.w))
    return (m.w - z) / denom


def pseudo_hyperbolic(z, w):
    """Pseudo-hyperbolic distance |sigma_w(z)|."""
    return np.abs(mobius_apply(MobiusMap(w), z))
