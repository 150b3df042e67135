"""Analytic self-maps of the disk with computable preimages."""

import numpy as np
from numpy.polynomial import polynomial as P

from ..analysis.functions import FunctionSpec, spec_from_dict
from ..analysis.mobius import BOUNDARY_TOL, MobiusMap
from ..analysis.utils import as_complex, complex_pair
from ..errors import DomainError

_SELFMAPS = {}

# Boundary nodes per degree used to certify |phi| <= 1.
CERTIFY_NODES = 4096


class SelfMapSpec:
    """Base class of the self-map variants.

    Every variant reduces phi(z) = w to a polynomial equation in z whose
    coefficients depend affinely on w, returned by ``equations``.
    """

    type_name = None

    # Import class methods
    from ._counting import nevanlinna, preimages, counting_values

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.type_name is not None:
            _SELFMAPS[cls.type_name] = cls

    def __call__(self, z):
        return self.evaluate(z)

    def __repr__(self):
        params = {k: v for k, v in self.to_dict().items() if k != "type"}
        return "{}({})".format(self.type_name, params)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    @property
    def origin_value(self):
        """phi(0)."""
        return complex(self._value(np.zeros(1, dtype=np.complex128))[0])

    def evaluate(self, z):
        return self._value(self._check(z))

    def derivative(self, z):
        return self._derivative(self._check(z))

    def equations(self, w):
        """Ascending coefficients of the equation phi(z) = w, one row per w.

        Parameters
        ----------
        w : numpy.array
            Complex targets.

        Returns
        -------
        numpy.array
            Array of shape (w.size, degree + 1).
        """
        num, den = self._fraction()
        w = as_complex(w)
        den = np.pad(den, (0, num.size - den.size)) if den.size < num.size else den
        num = np.pad(num, (0, den.size - num.size)) if num.size < den.size else num
        return num[None, :] - w[:, None] * den[None, :]

    def _check(self, z):
        z = as_complex(z)
        if np.any(np.abs(z) > 1 + BOUNDARY_TOL):
            raise DomainError("Self-maps are evaluated on the closed disk only.")
        return z

    def _fraction(self):
        """Numerator and denominator polynomials, ascending."""
        raise NotImplementedError

    def _value(self, z):
        num, den = self._fraction()
        return P.polyval(z, num) / P.polyval(z, den)

    def _derivative(self, z):
        num, den = self._fraction()
        n, d = P.polyval(z, num), P.polyval(z, den)
        dn = P.polyval(z, P.polyder(num)) if num.size > 1 else 0 * z
        dd = P.polyval(z, P.polyder(den)) if den.size > 1 else 0 * z
        return (dn * d - n * dd) / d ** 2

    @property
    def degree(self):
        num, den = self._fraction()
        return max(_degree(num), _degree(den))

    def to_dict(self):
        raise NotImplementedError


def _degree(coeffs):
    nonzero = np.flatnonzero(np.abs(coeffs) > 0)
    return int(nonzero[-1]) if nonzero.size else 0


class MobiusSelfMap(SelfMapSpec):
    """phi = sigma_a."""

    type_name = "MobiusSelfMap"

    def __init__(self, a):
        a = complex(a)
        if abs(a) >= 1:
            raise DomainError("A Möbius self-map needs |a| < 1, got {}.".format(a))
        self.a = a
        self.map = MobiusMap(a)

    def _fraction(self):
        return (
            np.array([self.a, -1], dtype=np.complex128),
            np.array([1, -np.conj(self.a)], dtype=np.complex128),
        )

    def _value(self, z):
        return (self.a - z) / (1 - np.conj(self.a) * z)

    def _derivative(self, z):
        return self.map.derivative(z)

    def to_dict(self):
        return {"type": self.type_name, "a": complex_pair(self.a)}

    @classmethod
    def from_dict(cls, data):
        return cls(complex(*data["a"]))


class PolynomialSelfMap(SelfMapSpec):
    """Polynomial phi with max_{|z|=1} |phi| <= 1, certified on a boundary grid.

    Attributes
    ----------
    margin : float
        1 - max |phi| over the certification grid.
    """

    type_name = "PolynomialSelfMap"

    def __init__(self, coeffs):
        coeffs = np.trim_zeros(np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)), "b")
        if coeffs.size < 2:
            raise ValueError("A polynomial self-map must have degree at least one.")
        self.coeffs = coeffs
        self.coeffs.setflags(write=False)
        n = CERTIFY_NODES * (coeffs.size - 1)
        zeta = np.exp(2j * np.pi * np.arange(n) / n)
        peak = float(np.max(np.abs(P.polyval(zeta, coeffs))))
        if peak > 1 + 1e-12:
            raise DomainError(
                "Polynomial reaches |phi| = {:.6g} on the circle, not a self-map.".format(peak)
            )
        self.margin = max(0.0, 1 - peak)

    def _fraction(self):
        return np.asarray(self.coeffs), np.ones(1, dtype=np.complex128)

    def _value(self, z):
        return P.polyval(z, self.coeffs)

    def _derivative(self, z):
        return P.polyval(z, P.polyder(self.coeffs))

    def to_dict(self):
        return {"type": self.type_name, "coeffs": [complex_pair(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data):
        return cls([complex(*c) for c in data["coeffs"]])


class FiniteBlaschke(SelfMapSpec):
    """e^{i gamma} prod_j (z - a_j) / (1 - conj(a_j) z)."""

    type_name = "FiniteBlaschke"

    def __init__(self, zeros, rotation=1.0):
        zeros = np.atleast_1d(np.asarray(zeros, dtype=np.complex128))
        if zeros.size == 0:
            raise ValueError("A Blaschke product needs at least one zero.")
        if np.any(np.abs(zeros) >= 1):
            raise DomainError("Blaschke zeros must lie in the open disk.")
        rotation = complex(rotation)
        if abs(abs(rotation) - 1) > 1e-12:
            raise ValueError("The rotation factor must be unimodular.")
        self.zeros = zeros
        self.zeros.setflags(write=False)
        self.rotation = rotation

    def _fraction(self):
        num = self.rotation * P.polyfromroots(self.zeros)
        den = np.ones(1, dtype=np.complex128)
        for a in self.zeros:
            den = P.polymul(den, [1, -np.conj(a)])
        return num.astype(np.complex128), den.astype(np.complex128)

    def to_dict(self):
        return {
            "type": self.type_name,
            "zeros": [complex_pair(a) for a in self.zeros],
            "rotation": complex_pair(self.rotation),
        }

    @classmethod
    def from_dict(cls, data):
        rotation = data.get("rotation", [1.0, 0.0])
        return cls([complex(*a) for a in data["zeros"]], complex(*rotation))


class ScaledMap(SelfMapSpec):
    """phi = c * inner with 0 < c <= 1."""

    type_name = "ScaledMap"

    def __init__(self, c, inner):
        if not 0 < c <= 1:
            raise ValueError("The scale must lie in (0, 1], got {}.".format(c))
        self.c = float(c)
        self.inner = inner

    def _fraction(self):
        num, den = self.inner._fraction()
        return self.c * num, den

    def _value(self, z):
        return self.c * self.inner._value(z)

    def _derivative(self, z):
        return self.c * self.inner._derivative(z)

    def to_dict(self):
        return {"type": self.type_name, "c": self.c, "inner": self.inner.to_dict()}

    @classmethod
    def from_dict(cls, data):
        return cls(data["c"], selfmap_from_dict(data["inner"]))


def identity_map():
    return PolynomialSelfMap([0, 1])


def selfmap_from_dict(data):
    """Builds a self-map from its JSON dictionary.

    Raises
    ------
    ValueError
        If the tag is unknown or a parameter is missing.
    """
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("A self-map needs a 'type' tag.")
    try:
        cls = _SELFMAPS[data["type"]]
    except KeyError:
        raise ValueError("Unknown self-map type '{}'.".format(data["type"]))
    try:
        return cls.from_dict(data)
    except KeyError as e:
        raise ValueError("{} self-map is missing parameter {}.".format(data["type"], e))


class ComposedSpec(FunctionSpec):
    """outer(phi(z)) for a function spec and a self-map."""

    type_name = "Composed"

    def __init__(self, outer, selfmap):
        self.outer = outer
        self.selfmap = selfmap

    def _finite_on_boundary(self, z):
        w = self.selfmap._value(z)
        finite = np.ones(z.shape, dtype=bool)
        edge = np.abs(w) >= 1 - BOUNDARY_TOL
        finite[edge] = self.outer._finite_on_boundary(w[edge])
        return finite

    def _value(self, z):
        return self.outer._value(self.selfmap._value(z))

    def _derivative(self, z):
        return self.outer._derivative(self.selfmap._value(z)) * self.selfmap._derivative(z)

    def to_dict(self):
        return {
            "type": self.type_name,
            "outer": self.outer.to_dict(),
            "selfmap": self.selfmap.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(spec_from_dict(data["outer"]), selfmap_from_dict(data["selfmap"]))
