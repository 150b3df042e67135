import numpy as np
import pytest

from campanato.analysis.functions import CauchyKernel, LogKernel, Monomial
from campanato.composition import _counting, selfmaps
from campanato.composition.selfmaps import (
    ComposedSpec,
    FiniteBlaschke,
    MobiusSelfMap,
    PolynomialSelfMap,
    ScaledMap,
    identity_map,
    selfmap_from_dict,
)
from campanato.errors import ConditioningWarning, DomainError, InfiniteValueError

from .testutil import disk_points, finite_difference

SELFMAPS = [
    identity_map(),
    PolynomialSelfMap([0, 0.5, 0.25]),
    MobiusSelfMap(0.3 - 0.4j),
    FiniteBlaschke([0, 0.5j, -0.3]),
    FiniteBlaschke([0.2], rotation=1j),
    ScaledMap(0.5, MobiusSelfMap(0.6)),
]


def test_01():
    # every preimage maps back onto w
    for phi in SELFMAPS:
        for w in [0.1, -0.3 + 0.2j, 0.45j]:
            for z, mult in phi.preimages(w):
                assert abs(z) < 1 and mult >= 1
                assert np.isclose(phi.evaluate(z)[0], w, atol=1e-10)


def test_02():
    # z^2 = 1/4 has the roots -1/2 and 1/2
    phi = PolynomialSelfMap([0, 0, 1])
    assert np.allclose(phi.preimages(0.25), [(-0.5, 1), (0.5, 1)])
    # a double root at the origin
    [(z, mult)] = phi.preimages(0)
    assert abs(z) < 1e-12 and mult == 2
    assert np.isinf(phi.counting_values([0])[0])
    with pytest.raises(InfiniteValueError):
        phi.nevanlinna(0)


def test_03():
    # roots 5e-7 apart are kept apart with a warning
    phi = PolynomialSelfMap(0.5 * np.polynomial.polynomial.polyfromroots([0.3, 0.3 + 5e-7]))
    with pytest.warns(ConditioningWarning):
        roots = phi.preimages(0)
    assert [m for _, m in roots] == [1, 1]


def test_04():
    # Mobius self-maps are involutions: N(sigma_a, w) = log(1 / |sigma_a(w)|)
    phi = MobiusSelfMap(0.5)
    for w in [0.1, 0.7j, -0.2 - 0.2j]:
        z = phi.evaluate(w)[0]
        assert np.isclose(phi.nevanlinna(w), np.log(1 / abs(z)))


def test_05():
    # inner functions with phi(0) = 0 have N(phi, w) = log(1 / |w|)
    phi = FiniteBlaschke([0, 0.5j, -0.3])
    for w in [0.1, 0.6j, -0.4 + 0.3j]:
        assert np.isclose(phi.nevanlinna(w), np.log(1 / abs(w)))
    # Littlewood: N(z / 2, w) = log(1 / |2w|) <= log(1 / |w|)
    half = PolynomialSelfMap([0, 0.5])
    assert np.isclose(half.nevanlinna(0.25), np.log(2))
    assert half.nevanlinna(0.75) == 0


def test_06():
    # truncated counting functions and batched values
    phi = PolynomialSelfMap([0, 0, 1])
    w = 0.09
    assert np.isclose(phi.nevanlinna(w), 2 * np.log(1 / 0.3))
    assert np.isclose(phi.nevanlinna(w, r=0.5), 2 * np.log(0.5 / 0.3))
    assert phi.nevanlinna(w, r=0.2) == 0
    points = disk_points(50, seed=10, radius=0.9)
    batch = phi.counting_values(points)
    single = [phi.nevanlinna(p) for p in points]
    assert np.allclose(batch, single)
    with pytest.raises(ValueError):
        phi.nevanlinna(w, r=1.5)
    with pytest.raises(DomainError):
        phi.preimages(1.0)


def test_07():
    # closed form derivatives
    z = disk_points(20, seed=11, radius=0.8)
    for phi in SELFMAPS:
        assert np.allclose(phi.derivative(z), finite_difference(phi, z), atol=1e-6), phi


def test_08():
    # self-map certification and parameters
    with pytest.raises(DomainError):
        PolynomialSelfMap([0, 1.1])
    with pytest.raises(ValueError):
        PolynomialSelfMap([0.5])
    assert PolynomialSelfMap([0, 0.5]).margin == pytest.approx(0.5)
    with pytest.raises(DomainError):
        MobiusSelfMap(1)
    with pytest.raises(DomainError):
        FiniteBlaschke([1.0])
    with pytest.raises(ValueError):
        FiniteBlaschke([0.5], rotation=2)
    with pytest.raises(ValueError):
        ScaledMap(1.5, identity_map())
    assert FiniteBlaschke([0, 0.5]).degree == 2
    assert MobiusSelfMap(0.5).origin_value == 0.5


def test_09():
    # serialized self-maps come back equal
    for phi in SELFMAPS:
        assert selfmap_from_dict(phi.to_dict()) == phi
    with pytest.raises(ValueError):
        selfmap_from_dict({"type": "Exponential"})
    with pytest.raises(ValueError):
        selfmap_from_dict({"type": "MobiusSelfMap"})


def test_10():
    # composition f o phi and its chain rule
    phi = MobiusSelfMap(0.3)
    f = ComposedSpec(CauchyKernel(0.5), phi)
    z = disk_points(10, seed=12)
    assert np.allclose(f.evaluate(z), CauchyKernel(0.5).evaluate(phi.evaluate(z)))
    assert np.allclose(f.derivative(z), finite_difference(f, z), atol=1e-6)
    # a singular outer function is finite where phi stays inside
    inner = ComposedSpec(LogKernel(), PolynomialSelfMap([0, 0.5]))
    circle = np.exp(2j * np.pi * np.arange(8) / 8)
    assert np.allclose(inner.evaluate(circle), -np.log(1 - 0.5 * circle))
    with pytest.raises(DomainError):
        ComposedSpec(LogKernel(), identity_map()).evaluate(circle)
    assert isinstance(ComposedSpec(Monomial(2), phi).to_dict()["selfmap"], dict)


def test_11():
    # the private counting module is documented like the public one
    for module in [_counting, selfmaps]:
        assert module.__doc__ and module.__doc__.strip()
