import numpy as np
import pytest

from campanato.analysis.functions import CauchyKernel, Monomial
from campanato.analysis.grids import Arc, CarlesonBox
from campanato.carleson.measures import (
    ConstantDensity,
    DerivativeWeight,
    LevelSetWeight,
    PowerWeight,
    box_mass,
    carleson_norm,
    density_from_dict,
    lemma31_ratio,
    level_set,
    t_ab_apply,
)
from campanato.errors import DomainError, PreconditionError, ResolutionError


def test_01(small_grid):
    # mass of a box is h (2h - h^2) for dA, for any arc position
    disk = small_grid.disk()
    for arc in [Arc(0, 0.25), Arc(1.0, 0.25), Arc(4.0, 0.125)]:
        h = arc.length
        assert np.isclose(box_mass(ConstantDensity(), CarlesonBox(arc), disk), 2 * h ** 2 - h ** 3)
    samples = np.ones(disk.nodes.shape)
    assert np.isclose(box_mass(samples, CarlesonBox(Arc(0, 0.5)), disk), 0.375)


def test_02(small_grid):
    # the eta = 2 norm of dA is 2 - h_min, attained on the shortest arcs
    arcs = small_grid.box_arcs()
    h_min = min(a.length for a in arcs)
    report = carleson_norm(ConstantDensity(), 2, arcs, small_grid.disk())
    assert np.isclose(report.value, 2 - h_min)
    assert report.witness.length == h_min
    assert report.flags == ("BOUNDED",)
    # eta = 1: the whole disk
    report = carleson_norm(ConstantDensity(), 1, arcs, small_grid.disk())
    assert np.isclose(report.value, 1)
    assert report.witness.length == 1


def test_03(small_grid):
    # dA is not 3-Carleson
    report = carleson_norm(ConstantDensity(), 3, small_grid.box_arcs(), small_grid.disk())
    assert report.flags == ("DIVERGENT",)


def test_04(small_grid):
    # monotone and homogeneous in the density
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    low = carleson_norm(PowerWeight(1), 1, arcs, disk).value
    high = carleson_norm(ConstantDensity(), 1, arcs, disk).value
    assert low <= high
    assert np.isclose(carleson_norm(3 * PowerWeight(1), 1, arcs, disk).value, 3 * low)
    with pytest.raises(ValueError):
        carleson_norm(ConstantDensity(), 0, arcs, disk)


def test_05(small_grid):
    # invalid density samples
    disk = small_grid.disk()
    with pytest.raises(ValueError):
        carleson_norm(-np.ones(disk.nodes.shape), 1, small_grid.box_arcs(), disk)
    with pytest.raises(ValueError):
        carleson_norm(np.ones(10), 1, small_grid.box_arcs(), disk)
    with pytest.raises(ValueError):
        carleson_norm(ConstantDensity(-1), 1, small_grid.box_arcs(), disk)
    with pytest.raises(ResolutionError):
        box_mass(ConstantDensity(), CarlesonBox(Arc(0, 1e-4)), disk)


def test_06():
    # pointwise values of the density variants
    z = np.array([0, 0.5, 0.3j])
    assert np.allclose(PowerWeight(2, c=3).evaluate(z), 3 * (1 - np.abs(z) ** 2) ** 2)
    assert np.allclose(DerivativeWeight(Monomial(2), 1).evaluate(z), 4 * np.abs(z) ** 2 * (1 - np.abs(z) ** 2))
    assert np.allclose(PowerWeight(1).profile([0.0, 0.5]), [1, 0.75])
    with pytest.raises(TypeError):
        DerivativeWeight(Monomial(1)).profile([0.5])
    with pytest.raises(DomainError):
        ConstantDensity().evaluate(1.0)


def test_07():
    # level sets of (1 - |z|^2)^((3 - eta) / 2) |f'|
    omega = level_set(Monomial(1), 1, 0.5)
    assert list(omega.contains([0, 0.5, 0.9])) == [True, True, False]
    weight = LevelSetWeight(omega)
    assert np.allclose(weight.evaluate([0, 0.5, 0.9]), [1, 1 / 0.75, 0])
    with pytest.raises(ValueError):
        level_set(Monomial(1), 1, 0)


def test_08():
    # serialized densities come back equal
    densities = [
        ConstantDensity(2),
        PowerWeight(0.5, c=4),
        DerivativeWeight(CauchyKernel(0.3j), 2),
        LevelSetWeight(level_set(Monomial(2), 1.5, 0.25)),
        2 * PowerWeight(1),
    ]
    for rho in densities:
        assert density_from_dict(rho.to_dict()) == rho
    with pytest.raises(ValueError):
        density_from_dict({"type": "Gaussian"})
    with pytest.raises(ValueError):
        density_from_dict({"type": "PowerWeight"})


def test_09(small_grid):
    # T_{a,b} 1 (0) = int (1 - |w|^2)^(b - 1) dA = 1 / b
    disk = small_grid.disk()
    for b in [1, 2, 3.5]:
        assert np.isclose(t_ab_apply(1, b, ConstantDensity(), 0, disk), 1 / b)
    assert isinstance(t_ab_apply(1, 2, ConstantDensity(), 0, disk), float)


def test_10(small_grid):
    # the radial reduction agrees with the tensor quadrature
    disk = small_grid.disk()
    z = np.array([0.5, 0.3j, -0.2 + 0.4j])
    radial = t_ab_apply(1, 2, ConstantDensity(), z, disk)
    tensor = t_ab_apply(1, 2, DerivativeWeight(Monomial(1), 0), z, disk)
    assert np.allclose(radial, tensor, rtol=1e-8)


def test_11(small_grid):
    disk = small_grid.disk()
    with pytest.raises(ResolutionError):
        t_ab_apply(1, 2, ConstantDensity(), 1 - 1e-4, disk)
    # 128 angles do not resolve a non-radial field at 1 - |z| = 0.1
    with pytest.raises(ResolutionError):
        t_ab_apply(1, 2, DerivativeWeight(Monomial(1), 0), 0.9, disk)
    with pytest.raises(ValueError):
        t_ab_apply(0, 2, ConstantDensity(), 0.5, disk)


def test_12(small_grid):
    # the T_{a,b} Carleson ratio is finite and scale invariant
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    ratio = lemma31_ratio(ConstantDensity(), 1, 2, 1, arcs, disk)
    assert 0 < ratio < np.inf
    assert np.isclose(lemma31_ratio(3 * ConstantDensity(), 1, 2, 1, arcs, disk), ratio)
    with pytest.raises(PreconditionError):
        lemma31_ratio(ConstantDensity(), 1, 2, 2, arcs, disk)
    with pytest.raises(PreconditionError):
        lemma31_ratio(ConstantDensity(), 0.1, 2, 1, arcs, disk)
    with pytest.raises(PreconditionError):
        lemma31_ratio(DerivativeWeight(Monomial(1)), 1, 2, 1, arcs, disk)


def test_13(default_grid):
    # a singular radial weight keeps its T_{a,b} ratio when the grids are doubled
    field = PowerWeight(-0.5)
    coarse = lemma31_ratio(field, 1, 2, 1, default_grid.box_arcs(), default_grid.disk())
    fine = default_grid.refined()
    refined = lemma31_ratio(field, 1, 2, 1, fine.box_arcs(), fine.disk())
    assert 0 < coarse < np.inf
    assert abs(refined - coarse) <= 0.2 * coarse
