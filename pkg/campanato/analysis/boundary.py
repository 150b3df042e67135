"""Boundary functions and the Poisson, Szegő and conjugation operators."""

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import DomainError
from .functions import FunctionSpec, Polynomial
from .grids import CircleGrid, circle_grid
from .utils import as_complex, complex_pair


class FourierSeries:
    """Trigonometric polynomial sum_{n=-M}^{M} c_n e^{i n theta}.

    Parameters
    ----------
    coeffs : array-like
        Coefficients c_{-M}, ..., c_M (odd length), or a dict {n: c_n}.
    """

    type_name = "FourierSeries"

    def __init__(self, coeffs):
        if isinstance(coeffs, dict):
            order = max((abs(int(n)) for n in coeffs), default=0)
            array = np.zeros(2 * order + 1, dtype=np.complex128)
            for n, c in coeffs.items():
                array[int(n) + order] += complex(c)
            coeffs = array
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if coeffs.size % 2 != 1:
            raise ValueError("Fourier coefficients need odd length 2M + 1.")
        self.coeffs = coeffs
        self.coeffs.setflags(write=False)
        self.order = (coeffs.size - 1) // 2

    def __repr__(self):
        return "FourierSeries(order={})".format(self.order)

    def coefficient(self, n):
        if abs(n) > self.order:
            return 0j
        return complex(self.coeffs[n + self.order])

    @property
    def frequencies(self):
        return np.arange(-self.order, self.order + 1)

    @property
    def analytic_coeffs(self):
        """c_0, c_1, ..., c_M."""
        return self.coeffs[self.order :]

    @property
    def antianalytic_coeffs(self):
        """0, c_{-1}, ..., c_{-M}, as coefficients of powers of conj(z)."""
        out = self.coeffs[: self.order + 1][::-1].copy()
        out[0] = 0
        return out

    def padded(self, order):
        """The same series stored with a larger order."""
        if order < self.order:
            raise ValueError("Cannot pad to a smaller order.")
        out = np.zeros(2 * order + 1, dtype=np.complex128)
        out[order - self.order : order + self.order + 1] = self.coeffs
        return FourierSeries(out)

    def __add__(self, other):
        order = max(self.order, other.order)
        return FourierSeries(self.padded(order).coeffs + other.padded(order).coeffs)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return FourierSeries(self.coeffs * complex(c))

    __rmul__ = __mul__

    def allclose(self, other, atol=1e-12):
        order = max(self.order, other.order)
        return np.allclose(
            self.padded(order).coeffs, other.padded(order).coeffs, rtol=0, atol=atol
        )

    def __call__(self, z):
        """Harmonic extension sum c_n r^|n| e^{i n theta} on the closed disk."""
        z = as_complex(z)
        if np.any(np.abs(z) > 1 + 1e-14):
            raise DomainError("Fourier series are extended to the closed disk only.")
        return P.polyval(z, self.analytic_coeffs) + P.polyval(np.conj(z), self.antianalytic_coeffs)

    def gradient_sq(self, z):
        """|grad Pf|^2 = 2 (|d_z Pf|^2 + |d_zbar Pf|^2)."""
        z = as_complex(z)
        dz = P.polyval(z, P.polyder(self.analytic_coeffs)) if self.order else 0 * z
        dzbar = P.polyval(np.conj(z), P.polyder(self.antianalytic_coeffs)) if self.order else 0 * z
        return 2 * (np.abs(dz) ** 2 + np.abs(dzbar) ** 2)

    def samples(self, grid):
        return self(grid.nodes)

    @classmethod
    def from_samples(cls, values, order=None):
        """Discrete Fourier coefficients of samples on an equispaced circle grid."""
        values = np.asarray(values, dtype=np.complex128)
        n = values.size
        if order is None:
            order = (n - 1) // 2
        if 2 * order + 1 > n:
            raise ValueError("Order {} needs at least {} samples.".format(order, 2 * order + 1))
        c = np.fft.fft(values) / n
        return cls(np.concatenate([c[n - order :], c[: order + 1]]))

    def to_dict(self):
        return {
            "type": self.type_name,
            "order": self.order,
            "coeffs": [complex_pair(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data):
        return cls([complex(*c) for c in data["coeffs"]])


def boundary_values(f, grid, fallback_radius=None):
    """Samples of a boundary function on a circle grid.

    Parameters
    ----------
    f : FunctionSpec, FourierSeries or numpy.array
        The boundary function. Arrays are taken as samples on ``grid``.
    grid : CircleGrid
        The grid.
    fallback_radius : float, optional
        Radius used for specs that are singular on the circle, by default
        None.

    Returns
    -------
    numpy.array
        Complex samples at the grid nodes.

    Raises
    ------
    DomainError
        If a spec is singular on the circle and no fallback radius is given.
    """
    if isinstance(f, FunctionSpec):
        if np.all(f.finite_on_boundary(grid.nodes)):
            return f.evaluate(grid.nodes)
        if fallback_radius is None:
            raise DomainError(
                "{} is singular on the circle and no fallback radius is configured.".format(
                    f.type_name
                )
            )
        return f.evaluate(fallback_radius * grid.nodes)
    if isinstance(f, FourierSeries):
        return f.samples(grid)
    values = np.asarray(f, dtype=np.complex128)
    if values.shape != (grid.n,):
        raise ValueError(
            "Expected {} boundary samples, got shape {}.".format(grid.n, values.shape)
        )
    return values


def poisson_extension(boundary, z, grid=None):
    """Poisson integral of boundary data.

    Parameters
    ----------
    boundary : FourierSeries or numpy.array
        Coefficients, or samples on an equispaced circle grid.
    z : complex, array-like
        Points with ``|z| < 1``.
    grid : CircleGrid, optional
        Grid of the samples; inferred from their number when omitted.

    Returns
    -------
    complex or numpy.array
        Pf(z). Exact for Fourier series, grid quadrature for samples.

    Raises
    ------
    ResolutionError
        If the grid cannot resolve the Poisson kernel at z.
    """
    scalar = np.ndim(z) == 0
    z = as_complex(z)
    if np.any(np.abs(z) >= 1):
        raise DomainError("The Poisson extension is taken at |z| < 1.")
    if isinstance(boundary, FourierSeries):
        out = boundary(z)
    else:
        values = np.asarray(boundary, dtype=np.complex128)
        grid = grid if grid is not None else circle_grid(values.size)
        values = boundary_values(values, grid)
        grid.check_resolves(z)
        kernel = (1 - np.abs(z[:, None]) ** 2) / np.abs(grid.nodes[None, :] - z[:, None]) ** 2
        out = kernel @ values / grid.n
    return complex(out[0]) if scalar else out


def szego_project(boundary):
    """Szegő projection of a trigonometric polynomial.

    Parameters
    ----------
    boundary : FourierSeries
        Boundary function with finite support.

    Returns
    -------
    Polynomial
        The analytic polynomial sum_{n >= 0} c_n z^n, without trailing zero
        coefficients. The zero polynomial keeps one coefficient.
    """
    return Polynomial(np.trim_zeros(np.asarray(boundary.analytic_coeffs), "b"))


def conjugate_function(boundary):
    """Boundary conjugate function, c_n -> -i sign(n) c_n.

    Parameters
    ----------
    boundary : FourierSeries
        Boundary function with finite support.

    Returns
    -------
    FourierSeries
        The conjugate function.
    """
    return FourierSeries(-1j * np.sign(boundary.frequencies) * boundary.coeffs)


def polynomial_series(poly):
    """A polynomial spec read as a Fourier series with nonnegative support."""
    coeffs = np.asarray(poly.coeffs)
    return FourierSeries(np.concatenate([np.zeros(coeffs.size - 1), coeffs]))


def arc_mean(f, arc, grid=None, min_nodes=8):
    """Mean of a boundary function over an arc.

    Parameters
    ----------
    f : numpy.array, FunctionSpec or FourierSeries
        Boundary samples on ``grid``, or a function sampled on it.
    arc : Arc
        The arc I.
    grid : CircleGrid, optional
        Circle grid; inferred from the number of samples when omitted.
    min_nodes : int, optional
        Minimum number of nodes inside I, by default 8.

    Returns
    -------
    complex
        f_I, the average of f over I with respect to |d zeta|.

    Raises
    ------
    ResolutionError
        If I contains fewer than ``min_nodes`` grid nodes.
    """
    if grid is None:
        if isinstance(f, (FunctionSpec, FourierSeries)):
            raise ValueError("A circle grid is required to sample f.")
        grid = circle_grid(np.asarray(f).size)
    if not isinstance(grid, CircleGrid):
        raise TypeError("grid must be a CircleGrid.")
    values = boundary_values(f, grid)
    return complex(np.mean(values[arc.indices(grid.n, min_nodes=min_nodes)]))
