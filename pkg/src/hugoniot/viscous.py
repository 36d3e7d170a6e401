"""Viscous stress and heat-conduction face fluxes.

Face gradients come from the divergence theorem on a diamond co-volume
(two adjacent cell centroids plus the two face nodes), which is exact for
linear fields. The bulk versions used in the solver live in the kernel
backends; this module holds the per-face reference implementations and
Sutherland's viscosity law.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCell
from .gas import GasModel


def sutherland_mu(T: float, g: GasModel) -> float:
    """mu = T^(3/2) (1 + S) / (T + S) with S the Sutherland ratio; mu(1) = 1."""
    if not T > 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    s = g.sutherland_ratio
    return T ** 1.5 * (1.0 + s) / (T + s)


def sutherland_mu_array(T: np.ndarray, sutherland_ratio: float) -> np.ndarray:
    return T ** 1.5 * (1.0 + sutherland_ratio) / (T + sutherland_ratio)


@dataclass(frozen=True)
class FaceGradient:
    """Velocity and temperature gradients at one face."""

    du_dx: float
    du_dy: float
    dv_dx: float
    dv_dy: float
    dt_dx: float
    dt_dy: float


def green_gauss_gradient(points, values):
    """Gradient of scalars over a polygonal co-volume.

    `points` is a sequence of (x, y) vertices (any consistent winding);
    `values` the matching scalar values. Returns (gx, gy). Exact for
    fields linear in x and y. Raises DegenerateCell when the polygon has
    (near-)zero area.
    """
    pts = [np.asarray(p, dtype=float) for p in points]
    vals = [float(v) for v in values]
    n = len(pts)
    area2 = 0.0
    for k in range(n):
        xa, ya = pts[k]
        xb, yb = pts[(k + 1) % n]
        area2 += xa * yb - xb * ya
    scale = max(abs(xa) + abs(ya) for xa, ya in pts) or 1.0
    if abs(area2) < 1e-14 * scale * scale:
        raise DegenerateCell("co-volume has zero area")
    gx = 0.0
    gy = 0.0
    for k in range(n):
        xa, ya = pts[k]
        xb, yb = pts[(k + 1) % n]
        m = vals[k] + vals[(k + 1) % n]
        gx += m * (yb - ya)
        gy -= m * (xb - xa)
    return gx / area2, gy / area2


def face_gradient(points, u_values, v_values, t_values) -> FaceGradient:
    """Green-Gauss gradients of u, v, T over one diamond co-volume."""
    du = green_gauss_gradient(points, u_values)
    dv = green_gauss_gradient(points, v_values)
    dt = green_gauss_gradient(points, t_values)
    return FaceGradient(du[0], du[1], dv[0], dv[1], dt[0], dt[1])


def stress_tensor(grad: FaceGradient, mu: float):
    """Deviatoric Newtonian stress with the 2/3 dilatation term."""
    div = grad.du_dx + grad.dv_dy
    txx = mu * (2.0 * grad.du_dx - (2.0 / 3.0) * div)
    tyy = mu * (2.0 * grad.dv_dy - (2.0 / 3.0) * div)
    txy = mu * (grad.du_dy + grad.dv_dx)
    return txx, txy, tyy


def viscous_face_flux(grad: FaceGradient, face_state, n, g: GasModel) -> np.ndarray:
    """Viscous flux through a face with unit normal n.

    `face_state` is (u, v, mu) at the face (arithmetic means of the two
    adjacent cells). Momentum rows carry tau.n/Re, the energy row carries
    (tau.V).n/Re plus heat conduction mu/((gamma-1) Re M_ref^2 Pr) dT/dn.
    Zero gradients give an exactly zero flux.
    """
    if g.reynolds is None:
        raise ValueError("viscous flux requested on an inviscid gas model")
    u, v, mu = face_state
    nx, ny = n
    txx, txy, tyy = stress_tensor(grad, mu)
    inv_re = 1.0 / g.reynolds
    fx = (txx * nx + txy * ny) * inv_re
    fy = (txy * nx + tyy * ny) * inv_re
    k_cond = mu / ((g.gamma - 1.0) * g.reynolds * g.mach_ref ** 2 * g.prandtl)
    fe = u * fx + v * fy + k_cond * (grad.dt_dx * nx + grad.dt_dy * ny)
    return np.array([0.0, fx, fy, fe])
