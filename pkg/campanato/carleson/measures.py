"""Area densities, Carleson norms and the T_{a,b} integral operator."""

import numpy as np
from scipy.special import hyp2f1

from ..analysis.functions import FunctionSpec, spec_from_dict
from ..analysis.grids import RESOLUTION_GUARD, GridParams
from ..analysis.utils import as_complex
from ..errors import DegenerateError, DomainError, PreconditionError, ResolutionError
from ..norms.params import SeminormReport
from ..norms.seminorms import divergence_flag

_DENSITIES = {}


class MeasureDensity:
    """Closed-form real field on the disk, read as a density against dA.

    Radial variants also expose ``profile(r)``, which lets integral
    operators reduce the angular integral in closed form.
    """

    type_name = None
    radial = False

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.type_name is not None:
            _DENSITIES[cls.type_name] = cls

    def __call__(self, z):
        return self.evaluate(z)

    def __mul__(self, c):
        return ScaledDensity(c, self)

    __rmul__ = __mul__

    def __repr__(self):
        params = {k: v for k, v in self.to_dict().items() if k != "type"}
        return "{}({})".format(self.type_name, params)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def evaluate(self, z):
        z = as_complex(z)
        if np.any(np.abs(z) >= 1):
            raise DomainError("Densities are evaluated at |z| < 1.")
        return self._evaluate(z)

    def profile(self, r):
        """Values on radii, for radial variants."""
        if not self.radial:
            raise TypeError("{} is not radial.".format(self.type_name))
        return self._evaluate(np.asarray(r, dtype=np.complex128))

    def density(self, z):
        """Values checked to be nonnegative, for use as a measure."""
        values = self.evaluate(z)
        if np.any(values < 0):
            raise ValueError("{} takes negative values.".format(self.type_name))
        return values

    def _evaluate(self, z):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError


class ConstantDensity(MeasureDensity):
    """rho(z) = c."""

    type_name = "Constant"
    radial = True

    def __init__(self, c=1.0):
        self.c = float(c)

    def _evaluate(self, z):
        return np.full(z.shape, self.c)

    def to_dict(self):
        return {"type": self.type_name, "c": self.c}

    @classmethod
    def from_dict(cls, data):
        return cls(data.get("c", 1.0))


class PowerWeight(MeasureDensity):
    """rho(z) = c (1 - |z|^2)^s."""

    type_name = "PowerWeight"
    radial = True

    def __init__(self, s, c=1.0):
        self.s = float(s)
        self.c = float(c)

    def _evaluate(self, z):
        return self.c * (1 - np.abs(z) ** 2) ** self.s

    def to_dict(self):
        return {"type": self.type_name, "s": self.s, "c": self.c}

    @classmethod
    def from_dict(cls, data):
        return cls(data["s"], data.get("c", 1.0))


class DerivativeWeight(MeasureDensity):
    """rho(z) = |f'(z)|^2 (1 - |z|^2)^s."""

    type_name = "DerivativeWeight"

    def __init__(self, f, s=1.0):
        if not isinstance(f, FunctionSpec):
            raise TypeError("DerivativeWeight needs a function spec.")
        self.f = f
        self.s = float(s)

    def _evaluate(self, z):
        return np.abs(self.f.derivative(z)) ** 2 * (1 - np.abs(z) ** 2) ** self.s

    def to_dict(self):
        return {"type": self.type_name, "f": self.f.to_dict(), "s": self.s}

    @classmethod
    def from_dict(cls, data):
        return cls(spec_from_dict(data["f"]), data.get("s", 1.0))


class LevelSetWeight(MeasureDensity):
    """rho(z) = chi_Omega(z) (1 - |z|^2)^(eta - 2) for a level set Omega."""

    type_name = "LevelSetWeight"

    def __init__(self, level_set):
        self.level_set = level_set

    def _evaluate(self, z):
        inside = self.level_set.contains(z)
        return inside * (1 - np.abs(z) ** 2) ** (self.level_set.eta - 2)

    def to_dict(self):
        return {"type": self.type_name, **self.level_set.to_dict()}

    @classmethod
    def from_dict(cls, data):
        return cls(LevelSetSpec(spec_from_dict(data["f"]), data["eta"], data["eps"]))


class ScaledDensity(MeasureDensity):
    """c * inner."""

    type_name = "Scaled"

    def __init__(self, c, inner):
        self.c = float(c)
        self.inner = inner
        self.radial = inner.radial

    def _evaluate(self, z):
        return self.c * self.inner._evaluate(z)

    def to_dict(self):
        return {"type": self.type_name, "c": self.c, "inner": self.inner.to_dict()}

    @classmethod
    def from_dict(cls, data):
        return cls(data["c"], density_from_dict(data["inner"]))


def density_from_dict(data):
    """Builds a density from its JSON dictionary.

    Raises
    ------
    ValueError
        If the tag is unknown or a parameter is missing.
    """
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("A density needs a 'type' tag.")
    try:
        cls = _DENSITIES[data["type"]]
    except KeyError:
        raise ValueError("Unknown density type '{}'.".format(data["type"]))
    try:
        return cls.from_dict(data)
    except KeyError as e:
        raise ValueError("{} density is missing parameter {}.".format(data["type"], e))


class LevelSetSpec:
    """Omega_eps(f) = {z : (1 - |z|^2)^((3 - eta) / 2) |f'(z)| >= eps}.

    Parameters
    ----------
    f : FunctionSpec
        The function.
    eta : float
        Scaling exponent.
    eps : float
        Level, eps > 0.
    """

    def __init__(self, f, eta, eps):
        if not eps > 0:
            raise ValueError("The level eps must be positive, got {}.".format(eps))
        self.f = f
        self.eta = float(eta)
        self.eps = float(eps)

    def __repr__(self):
        return "LevelSetSpec(f={!r}, eta={:g}, eps={:g})".format(self.f, self.eta, self.eps)

    def level(self, z):
        """(1 - |z|^2)^((3 - eta) / 2) |f'(z)|."""
        z = as_complex(z)
        return level_function(self.f, self.eta, z)

    def contains(self, z):
        return self.level(z) >= self.eps

    def to_dict(self):
        return {"f": self.f.to_dict(), "eta": self.eta, "eps": self.eps}


def level_function(f, eta, z):
    return (1 - np.abs(z) ** 2) ** ((3 - eta) / 2) * np.abs(f.derivative(z))


def level_set(f, eta, eps):
    """The level set Omega_eps(f) of the Bloch-(3 - eta)/2 density."""
    return LevelSetSpec(f, eta, eps)


def _samples(rho, dgrid):
    if isinstance(rho, MeasureDensity):
        return rho.density(dgrid.nodes.ravel()).reshape(dgrid.nodes.shape)
    values = np.asarray(rho, dtype=float)
    if values.shape != dgrid.nodes.shape:
        raise ValueError(
            "Density samples have shape {}, the grid {}.".format(values.shape, dgrid.nodes.shape)
        )
    if np.any(values < 0):
        raise ValueError("Density samples must be nonnegative.")
    return values


def box_mass(rho, box, dgrid=None):
    """Mass of a Carleson box.

    Parameters
    ----------
    rho : MeasureDensity or numpy.array
        Density, or its samples on the disk grid nodes.
    box : CarlesonBox
        The box S(I).
    dgrid : DiskGrid, optional
        Disk grid, by default the default grid of ``GridParams``.

    Returns
    -------
    float
        Sum of weights times rho over the nodes in S(I).

    Raises
    ------
    ResolutionError
        If the box contains fewer than 16 grid nodes.
    """
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    return float(dgrid.box_sums(_samples(rho, dgrid), [box.arc])[0])


def carleson_ratios(samples, eta, arcs, dgrid):
    """mu(S(I)) / |I|^eta for every arc of a family."""
    masses = dgrid.box_sums(samples, arcs)
    lengths = np.array([arc.length for arc in arcs])
    return masses / lengths ** eta


def carleson_norm(rho, eta, arcs=None, dgrid=None):
    """eta-Carleson norm sup_I mu(S(I)) / |I|^eta over an arc family.

    Parameters
    ----------
    rho : MeasureDensity or numpy.array
        Density, or its samples on the disk grid nodes.
    eta : float
        Scaling exponent, eta > 0.
    arcs : sequence of Arc, optional
        Generating arcs, by default the dyadic box arcs of ``GridParams``.
    dgrid : DiskGrid, optional
        Disk grid.

    Returns
    -------
    SeminormReport
        The norm, the attaining arc and per-length suprema.
    """
    if not eta > 0:
        raise ValueError("eta must be positive, got {}.".format(eta))
    defaults = GridParams()
    dgrid = dgrid if dgrid is not None else defaults.disk()
    arcs = arcs if arcs is not None else defaults.box_arcs()
    ratios = carleson_ratios(_samples(rho, dgrid), eta, arcs, dgrid)
    levels = {}
    for arc, value in zip(arcs, ratios):
        levels[arc.length] = max(levels.get(arc.length, 0.0), float(value))
    k = int(np.argmax(ratios))
    return SeminormReport(
        ratios[k],
        arcs[k],
        resolution={
            "n_radial": dgrid.radial.n_radial,
            "n_angles": dgrid.n_angles,
            "delta_min": dgrid.radial.delta_min,
        },
        flags=[divergence_flag([levels[h] for h in sorted(levels, reverse=True)])],
        levels=levels,
    )


def _check_ab(a, b):
    if not (a > 0 and b > 0):
        raise ValueError("T_{a,b} needs a, b > 0.")


def _t_ab_radial(a, b, profile, rho, rgrid):
    """T_{a,b} of a radial field at radii rho, integrating on rgrid.

    The angular integral (1 / 2 pi) int |1 - x e^{it}|^(-2c) dt equals
    2F1(c, c; 1; x^2) with c = (a + b) / 2.
    """
    c = (a + b) / 2
    r = rgrid.nodes
    radial = 2 * r * rgrid.weights * (1 - r ** 2) ** (b - 1) * profile
    x2 = (np.asarray(rho)[:, None] * r[None, :]) ** 2
    return hyp2f1(c, c, 1, x2) @ radial


def t_ab_apply(a, b, field, z, dgrid=None):
    """The integral operator T_{a,b}.

    Parameters
    ----------
    a, b : float
        Positive exponents.
    field : MeasureDensity
        Real field f on the disk.
    z : complex, array-like
        Points with 1 - |z| >= delta_min.
    dgrid : DiskGrid, optional
        Disk grid for the area integral.

    Returns
    -------
    float or numpy.array
        int (1 - |w|^2)^(b - 1) / |1 - conj(w) z|^(a + b) f(w) dA(w).
        Radial fields use an exact angular reduction; other fields use
        the tensor quadrature.

    Raises
    ------
    ResolutionError
        If 1 - |z| < delta_min, or if the angular grid is too coarse for a
        non-radial field at z.
    """
    _check_ab(a, b)
    dgrid = dgrid if dgrid is not None else GridParams().disk()
    scalar = np.ndim(z) == 0
    z = as_complex(z)
    rho = np.abs(z)
    gap = 1 - rho.max()
    if gap < dgrid.radial.delta_min:
        raise ResolutionError(
            "T_{{a,b}} needs 1 - |z| >= delta_min = {:g}, got {:.3g}.".format(
                dgrid.radial.delta_min, gap
            )
        )
    if field.radial:
        out = _t_ab_radial(a, b, field.profile(dgrid.radii).real, rho, dgrid.radial)
    else:
        if dgrid.n_angles * gap < RESOLUTION_GUARD:
            raise ResolutionError(
                "{} angles do not resolve T_{{a,b}} at 1 - |z| = {:.3g}.".format(
                    dgrid.n_angles, gap
                )
            )
        w = dgrid.nodes.ravel()
        base = dgrid.weights.ravel() * (1 - np.abs(w) ** 2) ** (b - 1) * field.evaluate(w)
        kernel = np.abs(1 - np.conj(w)[None, :] * z[:, None]) ** (-(a + b))
        out = kernel @ base
    return float(out[0]) if scalar else out


def lemma31_ratio(field, a, b, eta, arcs=None, dgrid=None):
    """Carleson norm ratio of the T_{a,b} boundedness estimate.

    carleson_norm(|T_{a,b} f|^2 (1 - |z|^2)^(eta + 2a - 2), eta) divided by
    carleson_norm(|f|^2 (1 - |z|^2)^eta, eta).

    Parameters
    ----------
    field : MeasureDensity
        Radial field f.
    a, b : float
        Exponents with a > (2 - eta) / 2 and b > (1 + eta) / 2.
    eta : float
        Scaling exponent in (0, 2).
    arcs : sequence of Arc, optional
        Generating arcs.
    dgrid : DiskGrid, optional
        Disk grid. T_{a,b} f is evaluated at its nodes with the boundary
        extended radial grid, so the nodes of the last panel are resolved.

    Returns
    -------
    float
        The ratio.

    Raises
    ------
    PreconditionError
        Outside the parameter range, or for a non-radial field.
    DegenerateError
        If the denominator vanishes.
    """
    if not 0 < eta < 2:
        raise PreconditionError("eta must lie in (0, 2), got {}.".format(eta))
    if not (a > (2 - eta) / 2 and b > (1 + eta) / 2):
        raise PreconditionError(
            "Need a > (2 - eta) / 2 and b > (1 + eta) / 2, got a={}, b={}.".format(a, b)
        )
    if not field.radial:
        raise PreconditionError("The T_{a,b} Carleson ratio is computed for radial fields.")
    defaults = GridParams()
    dgrid = dgrid if dgrid is not None else defaults.disk()
    arcs = arcs if arcs is not None else defaults.box_arcs()

    r = dgrid.radii
    fine = dgrid.radial.extended()
    t_values = _t_ab_radial(a, b, field.profile(fine.nodes).real, r, fine)
    f_values = field.profile(r).real
    one_minus = 1 - r ** 2
    numerator = np.abs(t_values) ** 2 * one_minus ** (eta + 2 * a - 2)
    denominator = np.abs(f_values) ** 2 * one_minus ** eta
    shape = dgrid.nodes.shape
    den = carleson_norm(np.broadcast_to(denominator[:, None], shape), eta, arcs, dgrid).value
    if den == 0:
        raise DegenerateError("|f|^2 (1 - |z|^2)^eta has zero Carleson norm.")
    num = carleson_norm(np.broadcast_to(numerator[:, None], shape), eta, arcs, dgrid).value
    return num / den
