"""Closed-form analytic functions on the unit disk."""

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import DomainError
from .mobius import BOUNDARY_TOL, MobiusMap, mobius_apply
from .utils import as_complex, complex_pair, int_power

_REGISTRY = {}

# Smallest last exponent of a Lacunary series with the default truncation.
LACUNARY_REACH = 10 ** 12


class FunctionSpec:
    """Base class of the analytic function variants.

    Subclasses implement ``_value`` and ``_derivative`` on complex arrays and
    may restrict boundary evaluation through ``_finite_on_boundary``. Specs
    are immutable and combine with ``+``, ``-`` and scalar ``*`` into
    ``Sum`` and ``Scale`` specs.
    """

    type_name = None

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.type_name is not None:
            _REGISTRY[cls.type_name] = cls

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if not isinstance(other, FunctionSpec):
            return NotImplemented
        return Sum(_terms(self) + _terms(other))

    def __sub__(self, other):
        if not isinstance(other, FunctionSpec):
            return NotImplemented
        return self + Scale(-1, other)

    def __mul__(self, c):
        if isinstance(c, FunctionSpec):
            return NotImplemented
        return Scale(c, self)

    __rmul__ = __mul__

    def __neg__(self):
        return Scale(-1, self)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def __repr__(self):
        params = {k: v for k, v in self.to_dict().items() if k != "type"}
        return "{}({})".format(self.type_name, params)

    @property
    def truncation(self):
        """Largest exponent kept from an infinite series, or None for exact specs."""
        return None

    def evaluate(self, z):
        """Values at points of the closed disk, as a complex array."""
        z = self._check_domain(z)
        return self._value(z)

    def derivative(self, z):
        """First derivative at points of the closed disk, as a complex array."""
        z = self._check_domain(z)
        return self._derivative(z)

    def finite_on_boundary(self, z):
        """Boolean mask of boundary points where value and derivative are finite."""
        return self._finite_on_boundary(as_complex(z))

    def _finite_on_boundary(self, z):
        return np.ones(z.shape, dtype=bool)

    def _check_domain(self, z):
        z = as_complex(z)
        modulus = np.abs(z)
        if np.any(modulus > 1 + BOUNDARY_TOL):
            raise DomainError("{} is evaluated on the closed disk only.".format(self.type_name))
        on_boundary = modulus >= 1 - BOUNDARY_TOL
        if np.any(on_boundary):
            finite = self._finite_on_boundary(z[on_boundary])
            if not np.all(finite):
                raise DomainError(
                    "{} is singular on the unit circle.".format(self.type_name)
                )
        return z

    def _value(self, z):
        raise NotImplementedError

    def _derivative(self, z):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError


def _terms(spec):
    return list(spec.terms) if isinstance(spec, Sum) else [spec]


def _check_b(b):
    b = complex(b)
    if abs(b) >= 1:
        raise DomainError("Cauchy kernels require |b| < 1, got {}.".format(b))
    return b


class Monomial(FunctionSpec):
    """z**n."""

    type_name = "Monomial"

    def __init__(self, n):
        if int(n) != n or n < 0:
            raise ValueError("Monomial degree must be a nonnegative integer.")
        self.n = int(n)

    def _value(self, z):
        return int_power(z, self.n)

    def _derivative(self, z):
        if self.n == 0:
            return np.zeros(z.shape, dtype=np.complex128)
        return self.n * int_power(z, self.n - 1)

    def to_dict(self):
        return {"type": self.type_name, "n": self.n}

    @classmethod
    def from_dict(cls, data):
        return cls(data["n"])


class Polynomial(FunctionSpec):
    """Sum of coeffs[k] * z**k."""

    type_name = "Polynomial"

    def __init__(self, coeffs):
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if coeffs.size == 0:
            coeffs = np.zeros(1, dtype=np.complex128)
        self.coeffs = coeffs
        self.coeffs.setflags(write=False)

    @property
    def degree(self):
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) if nonzero.size else 0

    def _value(self, z):
        return P.polyval(z, self.coeffs)

    def _derivative(self, z):
        if self.coeffs.size == 1:
            return np.zeros(z.shape, dtype=np.complex128)
        return P.polyval(z, P.polyder(self.coeffs))

    def to_dict(self):
        return {"type": self.type_name, "coeffs": [complex_pair(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data):
        return cls([_read_complex(c) for c in data["coeffs"]])


class CauchyKernel(FunctionSpec):
    """f_b(z) = 1 / (1 - conj(b) z) with |b| < 1."""

    type_name = "CauchyKernel"

    def __init__(self, b):
        self.b = _check_b(b)

    @property
    def scale(self):
        return 1.0

    def _value(self, z):
        return self.scale / (1 - np.conj(self.b) * z)

    def _derivative(self, z):
        return self.scale * np.conj(self.b) / (1 - np.conj(self.b) * z) ** 2

    def to_dict(self):
        return {"type": self.type_name, "b": complex_pair(self.b)}

    @classmethod
    def from_dict(cls, data):
        return cls(_read_complex(data["b"]))


class ScaledCauchy(CauchyKernel):
    """F_b(z) = (1 - |b|^2)^((p + eta - 1) / p) / (1 - conj(b) z).

    These are the uniformly bounded test functions of the Möbius seminorm.
    """

    type_name = "ScaledCauchy"

    def __init__(self, b, p, eta):
        super().__init__(b)
        if p < 1:
            raise ValueError("p must be at least 1.")
        self.p = float(p)
        self.eta = float(eta)

    @property
    def scale(self):
        return (1 - abs(self.b) ** 2) ** ((self.p + self.eta - 1) / self.p)

    def to_dict(self):
        return {"type": self.type_name, "b": complex_pair(self.b), "p": self.p, "eta": self.eta}

    @classmethod
    def from_dict(cls, data):
        return cls(_read_complex(data["b"]), data["p"], data["eta"])


class LogKernel(FunctionSpec):
    """log(1 / (1 - z)), singular at z = 1."""

    type_name = "LogKernel"

    def _finite_on_boundary(self, z):
        # Boundary values are taken at radius 1 - delta_min instead.
        return np.zeros(z.shape, dtype=bool)

    def _value(self, z):
        return -np.log(1 - z)

    def _derivative(self, z):
        return 1 / (1 - z)

    def to_dict(self):
        return {"type": self.type_name}

    @classmethod
    def from_dict(cls, data):
        return cls()


class Lacunary(FunctionSpec):
    """Hadamard gap series sum_k n_k**(alpha - 1) z**n_k with n_k = base**(k + shift).

    Parameters
    ----------
    base : int
        Gap ratio, an integer larger than one.
    alpha : float
        Bloch order; the series is normalized so that
        (1 - |z|^2)**alpha |f'(z)| stays bounded.
    shift : float, optional
        Phase shift of the gap sequence in [0, 1). ``base**shift`` must be an
        integer, by default 0.
    n_terms : int, optional
        Number of terms kept. By default the series runs until its last
        exponent reaches ``LACUNARY_REACH``, so 1 / LACUNARY_REACH lies below
        1 - |z| at every grid node.
    """

    type_name = "Lacunary"

    def __init__(self, base, alpha, shift=0.0, n_terms=None):
        if int(base) != base or base < 2:
            raise ValueError("Lacunary base must be an integer larger than one.")
        if alpha <= 0:
            raise ValueError("Lacunary order alpha must be positive.")
        if not 0 <= shift < 1:
            raise ValueError("Lacunary shift must lie in [0, 1).")
        self.base = int(base)
        self.alpha = float(alpha)
        self.shift = float(shift)
        first = self.base ** self.shift
        if abs(first - round(first)) > 1e-9:
            raise ValueError("base**shift must be an integer.")
        first = int(round(first))
        if n_terms is None:
            n_terms = 1
            while first * self.base ** (n_terms - 1) < LACUNARY_REACH:
                n_terms += 1
        if int(n_terms) != n_terms or n_terms < 1:
            raise ValueError("Lacunary n_terms must be a positive integer.")
        self.n_terms = int(n_terms)
        self.exponents = [first * self.base ** k for k in range(self.n_terms)]
        self.coefficients = [float(n) ** (self.alpha - 1) for n in self.exponents]

    @property
    def truncation(self):
        return self.exponents[-1]

    def _finite_on_boundary(self, z):
        return np.full(z.shape, self.alpha < 1)

    def _value(self, z):
        out = np.zeros(z.shape, dtype=np.complex128)
        for c, n in zip(self.coefficients, self.exponents):
            out += c * int_power(z, n)
        return out

    def _derivative(self, z):
        out = np.zeros(z.shape, dtype=np.complex128)
        for c, n in zip(self.coefficients, self.exponents):
            out += c * n * int_power(z, n - 1)
        return out

    def to_dict(self):
        return {
            "type": self.type_name,
            "base": self.base,
            "alpha": self.alpha,
            "shift": self.shift,
            "n_terms": self.n_terms,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["base"], data["alpha"], data.get("shift", 0.0), data.get("n_terms")
        )


class MobiusPullback(FunctionSpec):
    """outer(sigma_w(z)), evaluated by pullback."""

    type_name = "MobiusPullback"

    def __init__(self, inner, outer):
        if not isinstance(inner, MobiusMap):
            inner = MobiusMap(inner)
        self.inner = inner
        self.outer = outer

    @property
    def truncation(self):
        return self.outer.truncation

    def _finite_on_boundary(self, z):
        return self.outer._finite_on_boundary(mobius_apply(self.inner, z))

    def _value(self, z):
        return self.outer._value(mobius_apply(self.inner, z))

    def _derivative(self, z):
        return self.outer._derivative(mobius_apply(self.inner, z)) * self.inner.derivative(z)

    def to_dict(self):
        return {
            "type": self.type_name,
            "inner": self.inner.to_dict(),
            "outer": self.outer.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(MobiusMap.from_dict(data["inner"]), spec_from_dict(data["outer"]))


class Sum(FunctionSpec):
    """Finite sum of specs."""

    type_name = "Sum"

    def __init__(self, terms):
        self.terms = tuple(terms)
        if not self.terms:
            raise ValueError("Sum needs at least one term.")

    @property
    def truncation(self):
        degrees = [t.truncation for t in self.terms if t.truncation is not None]
        return min(degrees) if degrees else None

    def _finite_on_boundary(self, z):
        finite = np.ones(z.shape, dtype=bool)
        for t in self.terms:
            finite &= t._finite_on_boundary(z)
        return finite

    def _value(self, z):
        return sum(t._value(z) for t in self.terms)

    def _derivative(self, z):
        return sum(t._derivative(z) for t in self.terms)

    def to_dict(self):
        return {"type": self.type_name, "terms": [t.to_dict() for t in self.terms]}

    @classmethod
    def from_dict(cls, data):
        return cls([spec_from_dict(t) for t in data["terms"]])


class Scale(FunctionSpec):
    """c * inner."""

    type_name = "Scale"

    def __init__(self, c, inner):
        self.c = complex(c)
        self.inner = inner

    @property
    def truncation(self):
        return self.inner.truncation

    def _finite_on_boundary(self, z):
        return self.inner._finite_on_boundary(z)

    def _value(self, z):
        return self.c * self.inner._value(z)

    def _derivative(self, z):
        return self.c * self.inner._derivative(z)

    def to_dict(self):
        return {"type": self.type_name, "c": complex_pair(self.c), "inner": self.inner.to_dict()}

    @classmethod
    def from_dict(cls, data):
        return cls(_read_complex(data["c"]), spec_from_dict(data["inner"]))


def _read_complex(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("Complex numbers are serialized as [re, im].")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _restore(z, out):
    if np.ndim(z) == 0:
        return complex(out[0])
    return out


def evaluate(spec, z):
    """Evaluates a function spec.

    Parameters
    ----------
    spec : FunctionSpec
        The function.
    z : complex, array-like
        Points with ``|z| < 1``, or ``|z| = 1`` for variants finite there.

    Returns
    -------
    complex or numpy.array
        The value(s), a complex scalar for scalar input.

    Raises
    ------
    DomainError
        If a point is outside the closed disk, or on the circle for a
        variant singular there.
    """
    return _restore(z, spec.evaluate(z))


def derivative_at(spec, z):
    """Evaluates the closed-form first derivative of a function spec.

    Parameters
    ----------
    spec : FunctionSpec
        The function.
    z : complex, array-like
        Points as in ``evaluate``.

    Returns
    -------
    complex or numpy.array
        The derivative(s).
    """
    return _restore(z, spec.derivative(z))


def spec_from_dict(data):
    """Builds a function spec from its JSON dictionary.

    Parameters
    ----------
    data : dict
        Dictionary with a ``"type"`` tag and the variant parameters.

    Returns
    -------
    FunctionSpec
        The parsed spec.

    Raises
    ------
    ValueError
        If the tag is unknown or a parameter is missing or invalid.
    """
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("A function spec needs a 'type' tag.")
    try:
        cls = _REGISTRY[data["type"]]
    except KeyError:
        raise ValueError("Unknown function spec type '{}'.".format(data["type"]))
    try:
        return cls.from_dict(data)
    except KeyError as e:
        raise ValueError("{} spec is missing parameter {}.".format(data["type"], e))
