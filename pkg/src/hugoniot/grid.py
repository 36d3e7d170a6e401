"""Structured cell-centered meshes and boundary-condition descriptors.

A StructuredGrid is a single logically rectangular block of quadrilateral
cells defined by its node coordinates. Builders below cover every grid
family the benchmark suite needs: uniform boxes, wall-stretched boxes,
ramp- and bump-fitted channels, the polar half-cylinder grid, a 1D line
(as an nx-by-1 block), and the parity-perturbed duct. L-shaped domains
(forward step, corner diffraction) are assembled from several blocks
linked edge to edge; see solver.Domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DegenerateCell

NG = 2  # ghost-layer depth; order-1 runs simply ignore the outer layer


class StructuredGrid:
    """Geometry of one structured block.

    Node coordinates are (ni+1, nj+1); derived metrics are cell volumes and
    centroids, and per-face unit normals and areas. i-face normals point in
    the +i direction and j-face normals in +j, so interior face fluxes can
    be differenced directly.
    """

    def __init__(self, nodes_x: np.ndarray, nodes_y: np.ndarray):
        nodes_x = np.asarray(nodes_x, dtype=float)
        nodes_y = np.asarray(nodes_y, dtype=float)
        if nodes_x.shape != nodes_y.shape or nodes_x.ndim != 2:
            raise ValueError("node arrays must be matching 2D arrays")
        self.nodes_x = nodes_x
        self.nodes_y = nodes_y
        self.ni = nodes_x.shape[0] - 1
        self.nj = nodes_x.shape[1] - 1

        x00 = nodes_x[:-1, :-1]
        x10 = nodes_x[1:, :-1]
        x11 = nodes_x[1:, 1:]
        x01 = nodes_x[:-1, 1:]
        y00 = nodes_y[:-1, :-1]
        y10 = nodes_y[1:, :-1]
        y11 = nodes_y[1:, 1:]
        y01 = nodes_y[:-1, 1:]

        # Signed shoelace area of each quad; orientation must be positive.
        self.volume = 0.5 * (
            x00 * (y10 - y01) + x10 * (y11 - y00)
            + x11 * (y01 - y10) + x01 * (y00 - y11)
        )
        if np.any(self.volume <= 0.0):
            idx = tuple(int(k) for k in np.argwhere(self.volume <= 0.0)[0])
            raise DegenerateCell(f"non-positive cell volume at {idx}")
        self.xc = 0.25 * (x00 + x10 + x11 + x01)
        self.yc = 0.25 * (y00 + y10 + y11 + y01)

        # i-faces: between nodes (f, j) and (f, j+1), normal toward +i.
        dx = nodes_x[:, 1:] - nodes_x[:, :-1]
        dy = nodes_y[:, 1:] - nodes_y[:, :-1]
        self.iface_area = np.hypot(dx, dy)
        self.iface_nx = dy / self.iface_area
        self.iface_ny = -dx / self.iface_area

        # j-faces: between nodes (i, f) and (i+1, f), normal toward +j.
        dx = nodes_x[1:, :] - nodes_x[:-1, :]
        dy = nodes_y[1:, :] - nodes_y[:-1, :]
        self.jface_area = np.hypot(dx, dy)
        self.jface_nx = -dy / self.jface_area
        self.jface_ny = dx / self.jface_area

        self.xc_g, self.yc_g = self._ghost_centroids()

    def _ghost_centroids(self):
        """Centroid arrays extended by NG mirrored ghost layers per side."""
        ni, nj = self.ni, self.nj
        xc = np.full((ni + 2 * NG, nj + 2 * NG), np.nan)
        yc = np.full((ni + 2 * NG, nj + 2 * NG), np.nan)
        xc[NG:NG + ni, NG:NG + nj] = self.xc
        yc[NG:NG + ni, NG:NG + nj] = self.yc

        def reflect(px, py, ax, ay, bx, by):
            # Reflect points (px, py) across the line through (ax, ay)-(bx, by).
            dx, dy = bx - ax, by - ay
            inv = 1.0 / (dx * dx + dy * dy)
            t = ((px - ax) * dx + (py - ay) * dy) * inv
            fx, fy = ax + t * dx, ay + t * dy
            return 2.0 * fx - px, 2.0 * fy - py

        nxs, nys = self.nodes_x, self.nodes_y
        # i-direction sides first (interior j rows), then j-direction sides
        # over all columns so the corner ghosts get consistent values.
        for g in range(1, NG + 1):
            s = NG + nj
            xc[NG - g, NG:s], yc[NG - g, NG:s] = reflect(
                xc[NG + g - 1, NG:s], yc[NG + g - 1, NG:s],
                nxs[0, :-1], nys[0, :-1], nxs[0, 1:], nys[0, 1:])
            xc[NG + ni + g - 1, NG:s], yc[NG + ni + g - 1, NG:s] = reflect(
                xc[NG + ni - g, NG:s], yc[NG + ni - g, NG:s],
                nxs[ni, :-1], nys[ni, :-1], nxs[ni, 1:], nys[ni, 1:])
        for g in range(1, NG + 1):
            s = slice(NG, NG + ni)
            xc[s, NG - g], yc[s, NG - g] = reflect(
                xc[s, NG + g - 1], yc[s, NG + g - 1],
                nxs[:-1, 0], nys[:-1, 0], nxs[1:, 0], nys[1:, 0])
            xc[s, NG + nj + g - 1], yc[s, NG + nj + g - 1] = reflect(
                xc[s, NG + nj - g], yc[s, NG + nj - g],
                nxs[:-1, nj], nys[:-1, nj], nxs[1:, nj], nys[1:, nj])
        # Corner ghosts: extrapolate along i using the two nearest columns.
        for block in (slice(0, NG), slice(NG + nj, NG + nj + 2)):
            for g in range(1, NG + 1):
                xc[NG - g, block] = 2.0 * xc[NG - g + 1, block] - xc[NG - g + 2, block]
                yc[NG - g, block] = 2.0 * yc[NG - g + 1, block] - yc[NG - g + 2, block]
                xc[NG + ni + g - 1, block] = (2.0 * xc[NG + ni + g - 2, block]
                                              - xc[NG + ni + g - 3, block])
                yc[NG + ni + g - 1, block] = (2.0 * yc[NG + ni + g - 2, block]
                                              - yc[NG + ni + g - 3, block])
        return xc, yc

    def face_vector_closure(self) -> float:
        """Max |sum of outward face vectors| over cells; ~0 for valid quads."""
        sx = (self.iface_nx[1:, :] * self.iface_area[1:, :]
              - self.iface_nx[:-1, :] * self.iface_area[:-1, :]
              + self.jface_nx[:, 1:] * self.jface_area[:, 1:]
              - self.jface_nx[:, :-1] * self.jface_area[:, :-1])
        sy = (self.iface_ny[1:, :] * self.iface_area[1:, :]
              - self.iface_ny[:-1, :] * self.iface_area[:-1, :]
              + self.jface_ny[:, 1:] * self.jface_area[:, 1:]
              - self.jface_ny[:, :-1] * self.jface_area[:, :-1])
        return float(np.max(np.hypot(sx, sy)))

    def characteristic_length(self) -> np.ndarray:
        """Per-cell volume over largest face area; the CFL length scale."""
        amax = np.maximum.reduce([
            self.iface_area[1:, :], self.iface_area[:-1, :],
            self.jface_area[:, 1:], self.jface_area[:, :-1],
        ])
        return self.volume / amax


# ---------------------------------------------------------------------------
# Boundary conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Inflow:
    """Fixed (supersonic) inflow state, primitives (rho, u, v, p)."""

    state: tuple


@dataclass(frozen=True)
class Outflow:
    """Zero-gradient (supersonic) outflow: ghosts copy the interior."""


@dataclass(frozen=True)
class SlipWall:
    """Flow tangency: normal velocity mirrored, everything else copied."""


@dataclass(frozen=True)
class Symmetry(SlipWall):
    """Symmetry plane; identical treatment to a slip wall."""


@dataclass(frozen=True)
class NoSlipWall:
    """No-slip wall; full velocity mirror. Adiabatic unless a wall
    temperature is given, in which case the ghost temperature is reflected
    about it (isothermal wall)."""

    wall_temperature: float | None = None


@dataclass(frozen=True)
class TimeDependent:
    """Dirichlet state from a callable (x, y, t) -> (rho, u, v, p)."""

    fn: Callable


@dataclass(frozen=True)
class Segment:
    """Half-open cell-index range [lo, hi) along an edge with one BC."""

    lo: int
    hi: int
    bc: object


SIDES = ("imin", "imax", "jmin", "jmax")


@dataclass
class BlockBoundaries:
    """Per-side boundary segments of one block. Sides covered by a block
    link are left empty here and handled by the Domain."""

    imin: list = field(default_factory=list)
    imax: list = field(default_factory=list)
    jmin: list = field(default_factory=list)
    jmax: list = field(default_factory=list)

    @classmethod
    def uniform(cls, grid: StructuredGrid, imin=None, imax=None, jmin=None, jmax=None):
        """One BC per side (None leaves the side to a block link)."""
        def seg(bc, n):
            return [Segment(0, n, bc)] if bc is not None else []
        return cls(seg(imin, grid.nj), seg(imax, grid.nj),
                   seg(jmin, grid.ni), seg(jmax, grid.ni))

    def side(self, name):
        return getattr(self, name)


@dataclass(frozen=True)
class Link:
    """Edge-to-edge connection between two blocks (or one block to itself
    for periodic wrap). Edges must match in length, spacing and orientation."""

    block_a: int
    side_a: str
    block_b: int
    side_b: str


# ---------------------------------------------------------------------------
# Grid builders
# ---------------------------------------------------------------------------


def uniform_box(x0, x1, y0, y1, nx, ny) -> StructuredGrid:
    x = np.linspace(x0, x1, nx + 1)
    y = np.linspace(y0, y1, ny + 1)
    return StructuredGrid(*np.meshgrid(x, y, indexing="ij"))


def line_1d(x0, x1, nx) -> StructuredGrid:
    """1D line as an nx-by-1 block of square cells."""
    dx = (x1 - x0) / nx
    return uniform_box(x0, x1, 0.0, dx, nx, 1)


def geometric_ratio(first: float, total: float, n: int) -> float:
    """Ratio r with first*(r^n - 1)/(r - 1) = total, solved by bisection."""
    if not 0.0 < first < total:
        raise ValueError("first cell height must lie in (0, total)")
    if abs(first * n - total) < 1e-14 * total:
        return 1.0

    def length(r):
        if abs(r - 1.0) < 1e-14:
            return first * n
        return first * (r ** n - 1.0) / (r - 1.0)

    if first * n < total:
        lo, hi = 1.0 + 1e-12, 2.0
        while length(hi) < total:
            hi *= 2.0
    else:
        lo, hi = 1e-6, 1.0 - 1e-12
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if length(mid) < total:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def stretched_coords(total: float, n: int, first: float) -> np.ndarray:
    """One-sided geometric point distribution on [0, total], clustering at 0."""
    r = geometric_ratio(first, total, n)
    steps = first * r ** np.arange(n)
    y = np.concatenate(([0.0], np.cumsum(steps)))
    y[-1] = total
    return y


def double_stretched_coords(total: float, n: int, first: float) -> np.ndarray:
    """Symmetric distribution clustering at both ends of [0, total]."""
    if n % 2 == 0:
        half = stretched_coords(total / 2.0, n // 2, first)
        return np.concatenate((half, total - half[-2::-1]))
    # Odd count: mirror around a slightly larger half and merge mid points.
    half = stretched_coords(total / 2.0, (n + 1) // 2, first)
    upper = total - half[-2::-1]
    return np.concatenate((half[:-1], [0.5 * (half[-1] + upper[0])], upper[1:]))


def stretched_box(x0, x1, y0, y1, nx, ny, first_cell, both_walls=False) -> StructuredGrid:
    """Box with y-stretching toward the bottom wall (or both walls)."""
    x = np.linspace(x0, x1, nx + 1)
    h = y1 - y0
    if both_walls:
        y = y0 + double_stretched_coords(h, ny, first_cell)
    else:
        y = y0 + stretched_coords(h, ny, first_cell)
    return StructuredGrid(*np.meshgrid(x, y, indexing="ij"))


def channel_with_floor(x0, x1, nx, ny, floor: Callable, top=1.0,
                       first_cell=None) -> StructuredGrid:
    """Channel whose bottom wall is y = floor(x); algebraic shearing to the
    flat top wall, optionally with geometric wall clustering in y."""
    x = np.linspace(x0, x1, nx + 1)
    yb = np.asarray([floor(xi) for xi in x])
    if first_cell is None:
        eta = np.linspace(0.0, 1.0, ny + 1)
    else:
        eta = stretched_coords(1.0, ny, first_cell)
    nodes_x = np.repeat(x[:, None], ny + 1, axis=1)
    nodes_y = yb[:, None] + (top - yb)[:, None] * eta[None, :]
    return StructuredGrid(nodes_x, nodes_y)


def ramp_channel(nx, ny, angle_deg=15.0, ramp_start=0.5, ramp_end=1.5,
                 length=3.0, height=1.0) -> StructuredGrid:
    """Wind-tunnel channel with a compression ramp rising at `angle_deg`
    between ramp_start and ramp_end, then a flat plateau."""
    slope = math.tan(math.radians(angle_deg))

    def floor(x):
        if x <= ramp_start:
            return 0.0
        if x >= ramp_end:
            return (ramp_end - ramp_start) * slope
        return (x - ramp_start) * slope

    return channel_with_floor(0.0, length, nx, ny, floor, top=height)


def bump_channel(nx, ny, thickness=0.04, chord=1.0, bump_start=1.0,
                 length=3.0, height=1.0, first_cell=None) -> StructuredGrid:
    """Channel with a circular-arc bump of given thickness/chord on the floor."""
    radius = (chord * chord / 4.0 + thickness * thickness) / (2.0 * thickness)
    xm = bump_start + 0.5 * chord

    def floor(x):
        if bump_start < x < bump_start + chord:
            return math.sqrt(radius * radius - (x - xm) ** 2) - (radius - thickness)
        return 0.0

    return channel_with_floor(0.0, length, nx, ny, floor, top=height,
                              first_cell=first_cell)


def polar_half_cylinder(n_theta, n_r, r_wall=1.0, r_far=4.0) -> StructuredGrid:
    """Polar grid on the windward half of a cylinder at the origin.

    The flow comes along +x; i runs circumferentially from the bottom cut
    plane (0, -r) through the stagnation direction (-r, 0) to the top cut
    plane, j runs radially from the cylinder surface to the far field.
    (This i direction keeps the cell orientation positive.)
    """
    theta = np.linspace(1.5 * math.pi, 0.5 * math.pi, n_theta + 1)
    r = np.linspace(r_wall, r_far, n_r + 1)
    tt, rr = np.meshgrid(theta, r, indexing="ij")
    return StructuredGrid(rr * np.cos(tt), rr * np.sin(tt))


def odd_even_duct(nx=800, ny=20, perturbation=1e-3) -> StructuredGrid:
    """Long duct of unit cells with the centerline node row displaced by
    +-perturbation depending on the parity of the node index."""
    x = np.arange(nx + 1, dtype=float)
    y = np.arange(ny + 1, dtype=float)
    nodes_x, nodes_y = np.meshgrid(x, y, indexing="ij")
    jmid = ny // 2
    shift = np.where(np.arange(nx + 1) % 2 == 0, perturbation, -perturbation)
    nodes_y[:, jmid] += shift
    return StructuredGrid(nodes_x, nodes_y)
