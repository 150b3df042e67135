import warnings

import numpy as np
import pytest

from campanato.analysis.grids import (
    Arc,
    CarlesonBox,
    CircleGrid,
    GridParams,
    RadialGrid,
    circle_grid,
    disk_grid,
    dyadic_arcs,
    group_by_length,
    w_grid,
)
from campanato.errors import ResolutionError


def test_01():
    # arcs reduce their center to [0, 2 pi) and reject lengths outside (0, 1]
    arc = Arc(-np.pi / 2, 0.25)
    assert np.isclose(arc.center_angle, 3 * np.pi / 2)
    for length in [0, -0.1, 1.5]:
        with pytest.raises(ValueError):
            Arc(0, length)


def test_02():
    # an arc of length h covers round(h N) consecutive nodes
    arc = Arc(np.pi, 1 / 8)
    idx = arc.indices(256)
    assert idx.size == 32
    assert np.all(np.diff(idx) == 1)
    angles = 2 * np.pi * idx / 256
    assert np.all(np.abs(angles - np.pi) <= np.pi / 8 + 1e-12)
    # wrap-around at angle 0
    idx = Arc(0, 1 / 8).indices(256)
    assert idx.size == 32 and 0 in idx and 255 in idx
    with pytest.raises(ResolutionError):
        Arc(0, 1 / 256).indices(256)


def test_03():
    # 1 + sum_k 2 * 2^k arcs, ordered from long to short
    for depth in [0, 1, 4]:
        arcs = dyadic_arcs(depth)
        assert len(arcs) == 1 + sum(2 * 2 ** k for k in range(1, depth + 1))
        lengths = [a.length for a in arcs]
        assert lengths == sorted(lengths, reverse=True)
    groups = group_by_length(dyadic_arcs(3))
    assert sorted(groups) == [1 / 8, 1 / 4, 1 / 2, 1.0]
    assert len(groups[1 / 8]) == 16


def test_04():
    # the trapezoid rule integrates z^n exactly for 0 < |n| < N
    grid = CircleGrid(64)
    for n in range(1, 64):
        assert abs(grid.mean(grid.nodes ** n)) < 1e-12
    assert np.isclose(grid.mean(np.ones(64)), 1)
    with pytest.raises(ValueError):
        CircleGrid(4)


def test_05():
    # adapted grids double until N (1 - |w|) reaches the guard
    grid = circle_grid(512)
    assert grid.adapted(0.5) is grid
    assert grid.adapted(0.99).n == 4096
    with pytest.raises(ResolutionError):
        grid.adapted(1 - 1e-12)
    with pytest.raises(ResolutionError):
        grid.check_resolves(0.999)
    grid.check_resolves(0.5)


def test_06():
    # Gauss panels integrate polynomials in r exactly
    radial = RadialGrid(8, 1e-3)
    for k in range(7):
        assert np.isclose(radial.integrate(radial.nodes ** k), 1 / (k + 1))
    # dyadic Carleson radii are panel breakpoints
    for k in range(1, 10):
        assert np.any(np.isclose(radial.breakpoints, 1 - 2.0 ** -k))
    assert radial.breakpoints[-2] == pytest.approx(1 - 1e-3)


def test_07():
    radial = RadialGrid(8, 1e-3)
    j = radial.first_index(0.25)
    assert radial.nodes[j] >= 0.75 and radial.nodes[j - 1] < 0.75
    with pytest.raises(ResolutionError):
        radial.first_index(1e-4)
    # refinement doubles the panels, extension squares delta_min
    assert radial.refined().n_radial == 16
    extended = radial.extended()
    assert extended.delta_min == pytest.approx(1e-6)
    shared = radial.nodes[radial.nodes < 1 - 1e-3]
    assert np.allclose(shared, extended.nodes[: shared.size])


def test_08():
    # dA is normalized: area 1 and int |z|^2 dA = 1/2
    disk = disk_grid(16, 1e-3, 64)
    assert np.isclose(disk.integrate(np.ones(disk.nodes.shape)), 1)
    assert np.isclose(disk.integrate(np.abs(disk.nodes) ** 2), 0.5)
    assert np.isclose(disk.integrate(disk.nodes ** 3), 0)
    # complex samples keep their imaginary part
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        total = disk.integrate(1j * np.abs(disk.nodes) ** 2)
    assert isinstance(total, complex)
    assert np.isclose(total, 0.5j)


def test_09():
    # recentering keeps the total mass
    disk = disk_grid(16, 1e-3, 128)
    for c in [0, 0.5, 0.3 - 0.6j]:
        moved = disk.recentered(c)
        assert np.isclose(moved.integrate(np.ones(moved.nodes.shape)), 1, atol=1e-5)
        assert np.all(np.abs(moved.nodes) < 1)


def test_10():
    # Carleson boxes of dA have mass h (2h - h^2)
    disk = disk_grid(16, 1e-3, 128)
    arcs = dyadic_arcs(5)
    masses = disk.box_sums(np.ones(disk.nodes.shape), arcs)
    h = np.array([a.length for a in arcs])
    assert np.allclose(masses, h * (2 * h - h ** 2))
    with pytest.raises(ResolutionError):
        disk.box_sums(np.ones(disk.nodes.shape), [Arc(0, 1 / 64)], min_nodes=10 ** 6)


def test_11():
    box = CarlesonBox(Arc(0, 0.25))
    assert box.inner_radius == 0.75
    assert list(box.contains([0.8, 0.5, -0.8, 0.8j])) == [True, False, False, False]


def test_12():
    w = w_grid(depth=3, n_angles=8)
    assert w.size == 1 + 3 * 8
    assert w[0] == 0
    assert np.allclose(np.abs(w[1:9]), 0.5)


def test_13(small_grid):
    # grid parameters
    assert GridParams.from_dict(small_grid.to_dict()) == small_grid
    assert small_grid.replace(n_circle=None, n_radial=32).n_radial == 32
    assert small_grid.replace(n_circle=None).n_circle == small_grid.n_circle
    fine = small_grid.refined()
    assert fine.n_circle == 1024 and fine.n_angles == 256 and fine.n_radial == 32
    assert fine.delta_min == small_grid.delta_min
    assert len(small_grid.boundary_arcs()) == len(dyadic_arcs(6))
    with pytest.raises(ValueError):
        GridParams.from_dict({"n_circles": 10})
    with pytest.raises(ValueError):
        GridParams(delta_min=2)
    with pytest.raises(ValueError):
        GridParams(n_radial=0)
