import numpy as np
import pytest

from campanato.analysis.functions import (
    LACUNARY_REACH,
    CauchyKernel,
    Lacunary,
    LogKernel,
    Monomial,
    MobiusPullback,
    Polynomial,
    Scale,
    ScaledCauchy,
    Sum,
    derivative_at,
    evaluate,
    spec_from_dict,
)
from campanato.analysis.mobius import MobiusMap
from campanato.errors import DomainError

from .testutil import disk_points, finite_difference

SPECS = [
    Monomial(0),
    Monomial(3),
    Polynomial([1, -2j, 0.5]),
    CauchyKernel(0.5 + 0.2j),
    ScaledCauchy(-0.3j, 2, 1),
    LogKernel(),
    Lacunary(2, 0.5, n_terms=6),
    Lacunary(16, 1, shift=0.5, n_terms=3),
    MobiusPullback(0.3 - 0.1j, Monomial(2)),
    Monomial(1) + CauchyKernel(0.4),
    Scale(2 - 1j, LogKernel()),
]


def test_01():
    # closed form derivatives against central differences, |z| <= 0.8
    z = disk_points(25, seed=4, radius=0.8)
    for spec in SPECS:
        assert np.allclose(spec.derivative(z), finite_difference(spec, z), atol=1e-5), spec


def test_02():
    # scalar in, scalar out; arrays keep their shape
    f = Monomial(2)
    assert isinstance(evaluate(f, 0.5), complex)
    assert evaluate(f, 0.5) == 0.25
    assert derivative_at(f, 0.5) == 1.0
    z = np.array([[0.1, 0.2], [0.3j, -0.4]])
    assert evaluate(f, z).shape == (2, 2)


def test_03():
    # points outside the closed disk
    for spec in SPECS:
        with pytest.raises(DomainError):
            evaluate(spec, 1.2j)


def test_04():
    # boundary evaluation is allowed only where the variant is finite
    circle = np.exp(2j * np.pi * np.arange(16) / 16)
    assert np.allclose(np.abs(evaluate(Monomial(5), circle)), 1)
    evaluate(Lacunary(2, 0.5, n_terms=5), circle)
    with pytest.raises(DomainError):
        evaluate(LogKernel(), circle)
    with pytest.raises(DomainError):
        evaluate(Lacunary(2, 1, n_terms=5), circle)
    with pytest.raises(DomainError):
        evaluate(Monomial(1) + LogKernel(), circle)


def test_05():
    # arithmetic builds Sum and Scale specs
    z = disk_points(10, seed=5)
    f = Monomial(1) + Monomial(2)
    assert isinstance(f, Sum)
    assert np.allclose(evaluate(f, z), z + z ** 2)
    assert np.allclose(evaluate(3 * Monomial(1), z), 3 * z)
    assert np.allclose(evaluate(Monomial(4) - Monomial(4), z), 0)
    assert np.allclose(evaluate(-CauchyKernel(0.5), z), -1 / (1 - 0.5 * z))


def test_06():
    # F_b(b) = (1 - |b|^2)^((p + eta - 1) / p - 1)
    b = 0.5
    assert np.allclose(evaluate(ScaledCauchy(b, 2, 1), b), 1)
    assert np.allclose(evaluate(ScaledCauchy(b, 2, 2), b), 0.75 ** 0.5)
    with pytest.raises(DomainError):
        CauchyKernel(1)


def test_07():
    # gap sequences n_k = base^(k + shift)
    assert Lacunary(2, 1, n_terms=5).exponents == [1, 2, 4, 8, 16]
    assert Lacunary(16, 1, shift=0.5, n_terms=3).exponents == [4, 64, 1024]
    assert Lacunary(2, 0.5, n_terms=3).coefficients == [1.0, 2 ** -0.5, 0.5]
    with pytest.raises(ValueError):
        Lacunary(2, 1, shift=0.5)
    with pytest.raises(ValueError):
        Lacunary(1, 1)
    with pytest.raises(ValueError):
        Lacunary(2, 1, n_terms=0)
    # the default truncation reaches LACUNARY_REACH
    f = Lacunary(2, 1)
    assert f.truncation >= LACUNARY_REACH > f.exponents[-2]
    assert spec_from_dict(f.to_dict()).exponents == f.exponents
    assert Monomial(3).truncation is None
    assert (Monomial(1) + 2 * f).truncation == f.truncation


def test_08():
    # pullback by sigma_w
    m = MobiusMap(0.3)
    f = MobiusPullback(m, Monomial(1))
    z = disk_points(10, seed=6)
    assert np.allclose(evaluate(f, z), m(z))
    assert np.allclose(derivative_at(f, z), m.derivative(z))


def test_09():
    # serialized specs come back equal
    nested = Scale(0.5, Sum([MobiusPullback(0.2j, Polynomial([0, 1, 1j])), LogKernel()]))
    for spec in SPECS + [nested]:
        assert spec_from_dict(spec.to_dict()) == spec


def test_10():
    # malformed spec dictionaries
    with pytest.raises(ValueError):
        spec_from_dict({"type": "Bessel"})
    with pytest.raises(ValueError):
        spec_from_dict({"type": "Monomial"})
    with pytest.raises(ValueError):
        spec_from_dict({"n": 2})
    with pytest.raises(ValueError):
        Monomial(-1)


def test_11():
    assert Polynomial([1, 0, 2, 0]).degree == 2
    assert Polynomial([]).degree == 0
