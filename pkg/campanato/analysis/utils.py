"""Utilities shared by the analysis functions."""

import numpy as np


def as_complex(z):
    """Converts scalars and arrays to complex numpy arrays.

    Parameters
    ----------
    z : complex, array-like
        Input point(s).

    Returns
    -------
    numpy.array
        Complex array of at least one dimension.
    """
    return np.atleast_1d(np.asarray(z, dtype=np.complex128))


def complex_pair(z):
    """Serializes a complex number as ``[re, im]``."""
    z = complex(z)
    return [z.real, z.imag]


def int_power(z, n):
    """Computes z**n for a nonnegative integer n, with 0**0 = 1.

    Large exponents are evaluated in polar form, which avoids overflow in
    the squaring chain and underflows cleanly to zero inside the disk.

    Parameters
    ----------
    z : numpy.array
        Complex points.
    n : int
        Exponent.

    Returns
    -------
    numpy.array
        z raised to n.
    """
    if n < 0:
        raise ValueError("Exponent must be nonnegative.")
    if n <= 64:
        return z ** n
    out = np.zeros(z.shape, dtype=np.complex128)
    nz = z != 0
    modulus = np.abs(z[nz])
    angle = np.angle(z[nz])
    with np.errstate(under="ignore"):
        out[nz] = np.exp(n * np.log(modulus)) * np.exp(1j * np.mod(n * angle, 2 * np.pi))
    return out
