import numpy as np
import pytest

from campanato.analysis.functions import Lacunary, Monomial, Polynomial
from campanato.carleson.distance import distance_estimate, distance_profile, in_closure
from campanato.errors import PreconditionError, ResolutionError

# Bloch function with unit gaps 2^k, truncated far past every grid.
GAP_SERIES = Lacunary(2, 1)


def test_01(small_grid):
    # polynomials have bounded level-set measures at every level
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    for f in [Monomial(1), Polynomial([1, 0.5, 0, -0.25])]:
        assert distance_estimate(f, 1, arcs, disk) == 0
        assert in_closure(f, 1, arcs, disk)
    # constants have an empty level set
    assert distance_estimate(Monomial(0), 1, arcs, disk) == 0


def test_02(small_grid):
    # the profile table
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    table = distance_profile(Monomial(1), 1, [0.1, 0.5], arcs, disk)
    assert list(table.columns) == ["eps", "norm", "refined_norm", "slope", "flag"]
    assert list(table["eps"]) == [0.1, 0.5]
    assert list(table["flag"]) == ["BOUNDED", "BOUNDED"]
    assert np.allclose(table["norm"], table["refined_norm"])


def test_03(small_grid):
    # norms do not increase with the level
    eps = [0.05, 0.1, 0.2, 0.4, 0.8]
    table = distance_profile(GAP_SERIES, 1, eps, small_grid.box_arcs(), small_grid.disk())
    assert np.all(np.diff(table["norm"].to_numpy()) <= 1e-12)
    assert np.all(np.diff(table["refined_norm"].to_numpy()) <= 1e-12)


def test_04(small_grid):
    # the gap series keeps a positive distance; low levels grow under extension
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    table = distance_profile(GAP_SERIES, 1, [0.02], arcs, disk)
    assert table["flag"][0] == "DIVERGENT"
    distance = distance_estimate(GAP_SERIES, 1, arcs, disk)
    assert distance > 0
    assert not in_closure(GAP_SERIES, 1, arcs, disk)


def test_05(small_grid):
    arcs, disk = small_grid.box_arcs(), small_grid.disk()
    for eta in [0, 2, 3]:
        with pytest.raises(PreconditionError):
            distance_profile(Monomial(1), eta, [0.1], arcs, disk)
        with pytest.raises(PreconditionError):
            distance_estimate(Monomial(1), eta, arcs, disk)


def test_06(default_grid):
    # the gap series at eta = 1 keeps a positive distance on the default grids
    arcs, disk = default_grid.box_arcs(), default_grid.disk()
    assert distance_estimate(GAP_SERIES, 1, arcs, disk) > 0
    assert not in_closure(GAP_SERIES, 1, arcs, disk)


def test_07(default_grid):
    # a short truncation is a polynomial on the extended grid and is refused
    arcs, disk = default_grid.box_arcs(), default_grid.disk()
    short = Lacunary(2, 1, n_terms=12)
    with pytest.raises(ResolutionError):
        distance_estimate(short, 1, arcs, disk)
    with pytest.raises(ResolutionError):
        distance_profile(2 * short + Monomial(1), 1, [0.1], arcs, disk)
    # exact specs never trip the check
    assert distance_estimate(Polynomial([0, 1, 0.5]), 1, arcs, disk) == 0
