"""Quadrature grids on the circle, the radius and the disk."""

from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from ..errors import ResolutionError
from .mobius import MobiusMap, mobius_apply

# Minimum of N * (1 - |z|) for circle quadratures near an interior point z.
RESOLUTION_GUARD = 32

# Largest circle grid an adapted quadrature may request.
MAX_CIRCLE_NODES = 2 ** 21


class Arc:
    """A subarc of the unit circle.

    Parameters
    ----------
    center_angle : float
        Center of the arc in radians, reduced to [0, 2 pi).
    length : float
        Normalized length h = arclength / (2 pi), in (0, 1].
    """

    def __init__(self, center_angle, length):
        if not 0 < length <= 1:
            raise ValueError("Arc length must lie in (0, 1], got {}.".format(length))
        self.center_angle = float(np.mod(center_angle, 2 * np.pi))
        self.length = float(length)

    def __repr__(self):
        return "Arc(center_angle={:.6f}, length={:.6g})".format(self.center_angle, self.length)

    def __eq__(self, other):
        return (
            isinstance(other, Arc)
            and self.center_angle == other.center_angle
            and self.length == other.length
        )

    def __hash__(self):
        return hash((self.center_angle, self.length))

    def to_dict(self):
        return {"center_angle": self.center_angle, "length": self.length}

    def indices(self, n, min_nodes=8):
        """Indices of the nodes e^{2 pi i k / n} that fall in the arc.

        Parameters
        ----------
        n : int
            Number of equispaced nodes on the circle.
        min_nodes : int, optional
            Minimum number of nodes the arc must contain, by default 8.

        Returns
        -------
        numpy.array
            Node indices, ordered along the arc.

        Raises
        ------
        ResolutionError
            If the arc contains fewer than ``min_nodes`` nodes.
        """
        start, count = self._start_count(n)
        if count < min_nodes:
            raise ResolutionError(
                "{} contains {} of {} circle nodes, at least {} are needed.".format(
                    self, count, n, min_nodes
                )
            )
        return np.mod(start + np.arange(count), n)

    def _start_count(self, n):
        start = int(np.floor((self.center_angle / (2 * np.pi) - self.length / 2) * n + 0.5))
        count = int(round(self.length * n))
        return start, min(count, n)


class CarlesonBox:
    """The region S(I) = {r e^{i theta}: 1 - h <= r < 1, e^{i theta} in I}."""

    def __init__(self, arc):
        self.arc = arc

    @property
    def inner_radius(self):
        return 1 - self.arc.length

    def __repr__(self):
        return "CarlesonBox({!r})".format(self.arc)

    def contains(self, z):
        """Membership of points in the box."""
        z = np.asarray(z)
        r = np.abs(z)
        offset = np.angle(z * np.exp(-1j * self.arc.center_angle))
        return (r >= self.inner_radius) & (r < 1) & (np.abs(offset) <= np.pi * self.arc.length)


def dyadic_arcs(depth, overlap=2):
    """Dyadic arc family with lengths 2^-k, k = 0..depth.

    Arcs of length h are centered every h / overlap radians-fraction, so
    consecutive arcs overlap.

    Parameters
    ----------
    depth : int
        Finest dyadic level.
    overlap : int, optional
        Number of centers per arc length, by default 2.

    Returns
    -------
    tuple of Arc
        The family, ordered from long to short arcs.
    """
    arcs = [Arc(0.0, 1.0)]
    for k in range(1, depth + 1):
        h = 2.0 ** -k
        n_centers = overlap * 2 ** k
        arcs.extend(Arc(2 * np.pi * j / n_centers, h) for j in range(n_centers))
    return tuple(arcs)


def group_by_length(arcs):
    """Splits an arc family into {length: [positions]} preserving order."""
    groups = {}
    for i, arc in enumerate(arcs):
        groups.setdefault(arc.length, []).append(i)
    return groups


class CircleGrid:
    """Equispaced nodes e^{2 pi i k / N} with weights 1 / N."""

    def __init__(self, n):
        if n < 8:
            raise ValueError("A circle grid needs at least 8 nodes.")
        self.n = int(n)
        self.angles = 2 * np.pi * np.arange(self.n) / self.n
        self.nodes = np.exp(1j * self.angles)
        self.weights = np.full(self.n, 1.0 / self.n)

    def __repr__(self):
        return "CircleGrid(n={})".format(self.n)

    def mean(self, values, axis=-1):
        """Trapezoid average of samples over the circle."""
        return np.mean(values, axis=axis)

    def adapted(self, w, guard=RESOLUTION_GUARD):
        """A grid fine enough to resolve integrands concentrated at scale 1 - |w|.

        The node count is doubled until ``n * (1 - |w|) >= guard``.

        Raises
        ------
        ResolutionError
            If more than ``MAX_CIRCLE_NODES`` nodes would be needed.
        """
        gap = 1 - np.max(np.abs(np.atleast_1d(w)))
        n = self.n
        while n * gap < guard:
            n *= 2
            if n > MAX_CIRCLE_NODES:
                raise ResolutionError(
                    "Circle quadrature cannot resolve 1 - |w| = {:.3g}.".format(gap)
                )
        return self if n == self.n else circle_grid(n)

    def check_resolves(self, z):
        """Raises ResolutionError unless the grid resolves the Poisson kernel at z."""
        gap = 1 - np.max(np.abs(np.atleast_1d(z)))
        if self.n * gap < RESOLUTION_GUARD:
            raise ResolutionError(
                "{} nodes do not resolve the Poisson kernel at 1 - |z| = {:.3g}.".format(
                    self.n, gap
                )
            )


class RadialGrid:
    """Composite Gauss-Legendre rule on [0, 1], graded toward r = 1.

    The panel breakpoints are the geometric radii 1 - delta_min**(j / J),
    the dyadic radii 1 - 2^-k above 1 - delta_min, and a dyadic refinement
    of the first panel toward the origin. The last panel is [1 - delta_min, 1].
    Every dyadic Carleson radius 1 - 2^-k is a breakpoint, so box
    integrals are exact for polynomial integrands.

    Parameters
    ----------
    n_radial : int
        Number J of geometric panels between 0 and 1 - delta_min.
    delta_min : float
        Smallest graded distance to the boundary.
    order : int, optional
        Gauss points per panel, by default 4.
    inner_levels : int, optional
        Dyadic subdivisions of the innermost panel, by default 8.
    """

    def __init__(self, n_radial, delta_min, order=4, inner_levels=8):
        if n_radial < 1:
            raise ValueError("n_radial must be positive.")
        if not 0 < delta_min < 1:
            raise ValueError("delta_min must lie in (0, 1).")
        self.n_radial = int(n_radial)
        self.delta_min = float(delta_min)
        self.order = int(order)
        self.inner_levels = int(inner_levels)

        geometric = 1 - self.delta_min ** (np.arange(self.n_radial + 1) / self.n_radial)
        k_max = int(np.floor(-np.log2(self.delta_min)))
        dyadic = 1 - 2.0 ** -np.arange(1, k_max + 1)
        dyadic = dyadic[1 - dyadic > self.delta_min]
        inner = geometric[1] * 2.0 ** -np.arange(1, self.inner_levels + 1)
        breaks = np.unique(np.concatenate([geometric, dyadic, inner, [1.0]]))
        keep = np.concatenate([[True], np.diff(breaks) > 1e-15])
        self.breakpoints = breaks[keep]

        x, wx = roots_legendre(self.order)
        left = self.breakpoints[:-1, None]
        width = np.diff(self.breakpoints)[:, None]
        self.nodes = (left + width * (x[None, :] + 1) / 2).ravel()
        self.weights = (width * wx[None, :] / 2).ravel()

    def __repr__(self):
        return "RadialGrid(n_radial={}, delta_min={:g}, order={})".format(
            self.n_radial, self.delta_min, self.order
        )

    def integrate(self, values, axis=0):
        """Integral over dr of samples taken at the nodes."""
        values = np.moveaxis(np.asarray(values), axis, 0)
        return np.tensordot(self.weights, values, axes=(0, 0))

    def first_index(self, h):
        """Index of the first node with r >= 1 - h.

        Raises
        ------
        ResolutionError
            If fewer than ``order`` nodes lie in [1 - h, 1], or h <= delta_min.
        """
        if h <= self.delta_min:
            raise ResolutionError(
                "Radial grid with delta_min = {:g} cannot resolve h = {:g}.".format(
                    self.delta_min, h
                )
            )
        j = int(np.searchsorted(self.nodes, 1 - h, side="left"))
        if self.nodes.size - j < self.order:
            raise ResolutionError("Radial grid has too few nodes above 1 - h = {:g}.".format(1 - h))
        return j

    def refined(self):
        """Same reach, twice as many geometric panels."""
        return radial_grid(2 * self.n_radial, self.delta_min, self.order, self.inner_levels)

    def extended(self):
        """Same panel spacing, reaching delta_min**2.

        All panels below 1 - delta_min are shared with this grid, so sums
        over interior nodes coincide exactly.
        """
        return radial_grid(2 * self.n_radial, self.delta_min ** 2, self.order, self.inner_levels)


class AreaQuadrature:
    """Nodes and weights for the normalized area measure dA on the disk."""

    def __init__(self, nodes, weights):
        self.nodes = nodes
        self.weights = weights

    def integrate(self, values):
        """Sum of weights times values, in a fixed order.

        Real samples give a float and complex samples a complex.
        """
        total = np.sum(self.weights * values)
        return complex(total) if np.iscomplexobj(total) else float(total)


class DiskGrid(AreaQuadrature):
    """Tensor polar grid: radial Gauss panels times equispaced angles.

    Node ``[j, k]`` is ``r_j e^{2 pi i k / M}`` with weight
    ``2 r_j w_j / M``; the weights integrate dA = r dr dtheta / pi.
    """

    def __init__(self, radial, n_angles):
        if n_angles < 8:
            raise ValueError("A disk grid needs at least 8 angles.")
        self.radial = radial
        self.n_angles = int(n_angles)
        self.angles = 2 * np.pi * np.arange(self.n_angles) / self.n_angles
        nodes = radial.nodes[:, None] * np.exp(1j * self.angles)[None, :]
        weights = np.repeat(
            (2 * radial.nodes * radial.weights / self.n_angles)[:, None], self.n_angles, axis=1
        )
        super().__init__(nodes, weights)

    def __repr__(self):
        return "DiskGrid({!r}, n_angles={})".format(self.radial, self.n_angles)

    @property
    def radii(self):
        return self.radial.nodes

    def recentered(self, c):
        """Pulls the grid back through sigma_c, grading it toward c instead of 0.

        Returns
        -------
        AreaQuadrature
            Nodes sigma_c(u) with weights multiplied by |sigma_c'(u)|^2.
        """
        m = MobiusMap(c)
        if c == 0:
            return AreaQuadrature(-self.nodes, self.weights)
        nodes = mobius_apply(m, self.nodes.ravel()).reshape(self.nodes.shape)
        jac = np.abs(m.derivative(self.nodes.ravel())).reshape(self.nodes.shape) ** 2
        return AreaQuadrature(nodes, self.weights * jac)

    def box_sums(self, values, arcs, min_nodes=16):
        """Sums of weights times values over the Carleson boxes of an arc family.

        Parameters
        ----------
        values : numpy.array
            Samples of shape (radial nodes, angles).
        arcs : sequence of Arc
            Generating arcs.
        min_nodes : int, optional
            Minimum number of grid nodes per box, by default 16.

        Returns
        -------
        numpy.array
            One mass per arc, in the order of ``arcs``.

        Raises
        ------
        ResolutionError
            If a box contains fewer than ``min_nodes`` nodes.
        """
        weighted = self.weights * values
        tail = np.cumsum(weighted[::-1], axis=0)[::-1]
        masses = np.empty(len(arcs))
        for h, positions in group_by_length(arcs).items():
            group = [arcs[i] for i in positions]
            j = self.radial.first_index(h)
            n_rad = self.radii.size - j
            idx = np.stack([a.indices(self.n_angles, min_nodes=1) for a in group])
            if idx.shape[1] * n_rad < min_nodes:
                raise ResolutionError(
                    "Boxes of length {:g} contain {} nodes, at least {} are needed.".format(
                        h, idx.shape[1] * n_rad, min_nodes
                    )
                )
            masses[positions] = np.sum(tail[j][idx], axis=1)
        return masses


@lru_cache(maxsize=32)
def circle_grid(n):
    return CircleGrid(n)


@lru_cache(maxsize=32)
def radial_grid(n_radial, delta_min, order=4, inner_levels=8):
    return RadialGrid(n_radial, delta_min, order, inner_levels)


@lru_cache(maxsize=16)
def disk_grid(n_radial, delta_min, n_angles, order=4):
    return DiskGrid(radial_grid(n_radial, delta_min, order), n_angles)


def w_grid(depth=10, n_angles=64):
    """Points for suprema over w in the disk.

    The origin plus radii 1 - 2^-k, k = 1..depth, times ``n_angles`` angles.

    Returns
    -------
    numpy.array
        Complex points, the origin first and then radius by radius.
    """
    radii = 1 - 2.0 ** -np.arange(1, depth + 1)
    angles = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    return np.concatenate([[0j], (radii[:, None] * angles[None, :]).ravel()])


class GridParams:
    """Resolution settings shared by every computation.

    Parameters
    ----------
    n_circle : int, optional
        Circle nodes N, by default 2048.
    n_angles : int, optional
        Angles M of the disk grid, by default 1024.
    n_radial : int, optional
        Geometric radial panels J, by default 64.
    delta_min : float, optional
        Smallest graded distance to the boundary, by default 1e-4.
    arc_depth : int, optional
        Finest dyadic arc level K, by default 10.
    w_depth : int, optional
        Finest dyadic radius of the w grid, by default 10.
    w_angles : int, optional
        Angles of the w grid, by default 64.
    order : int, optional
        Gauss points per radial panel, by default 4.
    """

    _fields = (
        "n_circle",
        "n_angles",
        "n_radial",
        "delta_min",
        "arc_depth",
        "w_depth",
        "w_angles",
        "order",
    )

    def __init__(
        self,
        *,
        n_circle=2048,
        n_angles=1024,
        n_radial=64,
        delta_min=1e-4,
        arc_depth=10,
        w_depth=10,
        w_angles=64,
        order=4,
    ):
        self.n_circle = int(n_circle)
        self.n_angles = int(n_angles)
        self.n_radial = int(n_radial)
        self.delta_min = float(delta_min)
        self.arc_depth = int(arc_depth)
        self.w_depth = int(w_depth)
        self.w_angles = int(w_angles)
        self.order = int(order)

        # Error check
        for name in ("n_circle", "n_angles", "n_radial", "arc_depth", "w_depth", "w_angles", "order"):
            if getattr(self, name) <= 0:
                raise ValueError("{} must be positive.".format(name))
        if not 0 < self.delta_min < 1:
            raise ValueError("delta_min must lie in (0, 1).")

    def __repr__(self):
        return "GridParams({})".format(
            ", ".join("{}={}".format(k, getattr(self, k)) for k in self._fields)
        )

    def __eq__(self, other):
        return isinstance(other, GridParams) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(self.to_dict().items()))

    def to_dict(self):
        return {k: getattr(self, k) for k in self._fields}

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls._fields)
        if unknown:
            raise ValueError("Unknown grid parameters: {}.".format(sorted(unknown)))
        return cls(**data)

    def replace(self, **changes):
        params = self.to_dict()
        params.update({k: v for k, v in changes.items() if v is not None})
        return GridParams(**params)

    def refined(self):
        """Doubles the circle, disk-angle and radial resolutions."""
        return self.replace(
            n_circle=2 * self.n_circle, n_angles=2 * self.n_angles, n_radial=2 * self.n_radial
        )

    def circle(self):
        return circle_grid(self.n_circle)

    def radial(self):
        return radial_grid(self.n_radial, self.delta_min, self.order)

    def disk(self):
        return disk_grid(self.n_radial, self.delta_min, self.n_angles, self.order)

    def wgrid(self):
        return w_grid(self.w_depth, self.w_angles)

    def boundary_arcs(self, min_nodes=8):
        """Dyadic arcs down to the finest level the circle grid resolves."""
        depth = min(self.arc_depth, int(np.floor(np.log2(self.n_circle / min_nodes))))
        return dyadic_arcs(depth)

    def box_arcs(self):
        """Dyadic arcs down to the finest level the disk grid has an angle for."""
        depth = min(self.arc_depth, int(np.floor(np.log2(self.n_angles))))
        return dyadic_arcs(depth)
