"""Pure-numpy face-flux sweeps: the fallback backend.

Semantics are identical to kernels_numba; keep the two in sync. Both
consume a primitive array W of shape (ni+4, nj+4, 4) (two ghost layers per
side) and face geometry, and return flux arrays already multiplied by the
face areas, so the residual is a plain difference divided by cell volume.

Face/stencil indexing, for face f between interior cells f-1 and f along
the sweep axis: the four stencil cells are W[f .. f+3] in ghost-inclusive
coordinates.
"""

from __future__ import annotations

import numpy as np

from .reconstruction import LIMITER_IDS
from .schemes import DELTA_REL, SCHEME_IDS


def _stencil(W, axis):
    if axis == 0:
        return (W[0:-3, 2:-2], W[1:-2, 2:-2], W[2:-1, 2:-2], W[3:, 2:-2])
    return (W[2:-2, 0:-3], W[2:-2, 1:-2], W[2:-2, 2:-1], W[2:-2, 3:])


def _limited_slope(a, b, limiter_id):
    if limiter_id == LIMITER_IDS["minmod"]:
        return np.where(a * b <= 0.0, 0.0, np.where(np.abs(a) < np.abs(b), a, b))
    denom = np.where(a + b == 0.0, 1.0, a + b)
    return np.where(a * b <= 0.0, 0.0, 2.0 * a * b / denom)


def _face_states(W, axis, order, limiter_id):
    """Reconstructed left/right primitive face states and the fallback count."""
    c0, c1, c2, c3 = _stencil(W, axis)
    if order == 1:
        return c1, c2, 0
    s_l = _limited_slope(c1 - c0, c2 - c1, limiter_id)
    s_r = _limited_slope(c2 - c1, c3 - c2, limiter_id)

    def guard(center, slope):
        lo = center - 0.5 * slope
        hi = center + 0.5 * slope
        bad = ((lo[..., 0] <= 0.0) | (hi[..., 0] <= 0.0)
               | (lo[..., 3] <= 0.0) | (hi[..., 3] <= 0.0))
        return np.where(bad[..., None], 0.0, slope), int(bad.sum())

    s_l, n_l = guard(c1, s_l)
    s_r, n_r = guard(c2, s_r)
    return c1 + 0.5 * s_l, c2 - 0.5 * s_r, n_l + n_r


def _rotated(w, nx, ny, gamma):
    """Rotated conserved state and normal flux of a primitive face array."""
    rho = w[..., 0]
    u = w[..., 1]
    v = w[..., 2]
    p = w[..., 3]
    vn = u * nx + v * ny
    vt = -u * ny + v * nx
    rho_e = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    U = np.stack([rho, rho * vn, rho * vt, rho_e], axis=-1)
    F = np.stack([rho * vn, rho * vn * vn + p, rho * vn * vt,
                  (rho_e + p) * vn], axis=-1)
    return vn, U, F


def _diffusion(scheme_id, zero_min, gamma, wl, wr, vnl, vnr, UL, UR, FL, FR):
    dU = UR - UL
    dF = FR - FL
    if scheme_id == SCHEME_IDS["central"]:
        return np.zeros_like(dU)

    al = np.sqrt(gamma * wl[..., 3] / wl[..., 0])
    ar = np.sqrt(gamma * wr[..., 3] / wr[..., 0])
    if scheme_id == SCHEME_IDS["llf"]:
        alpha = np.maximum(np.abs(vnl) + al, np.abs(vnr) + ar)
        return 0.5 * alpha[..., None] * dU

    if scheme_id == SCHEME_IDS["ricca"]:
        delta = DELTA_REL * np.maximum(
            1.0, np.maximum(np.abs(UL).max(axis=-1), np.abs(UR).max(axis=-1)))
        smooth = ((np.abs(dF).max(axis=-1) < delta)
                  & (np.abs(dU).max(axis=-1) < delta))
        rho_i = 0.5 * (wl[..., 0] + wr[..., 0])
        p_i = 0.5 * (wl[..., 3] + wr[..., 3])
        a_i = np.sqrt(gamma * p_i / rho_i)
        sgn = np.where(wr[..., 3] != wl[..., 3], 1.0, 0.0)
        alpha = np.where(smooth,
                         0.5 * (np.abs(vnl) + np.abs(vnr)),
                         np.maximum(np.abs(vnl), np.abs(vnr)) + sgn * a_i)
        return 0.5 * alpha[..., None] * dU

    if scheme_id == SCHEME_IDS["movers-n"]:
        delta = DELTA_REL * np.maximum(
            1.0, np.maximum(np.abs(UL).max(axis=-1), np.abs(UR).max(axis=-1)))
        lmax = np.maximum(np.abs(vnl) + al, np.abs(vnr) + ar)[..., None]
        if zero_min:
            lmin = np.zeros_like(lmax)
        else:
            lmin = np.minimum(np.abs(vnl), np.abs(vnr))[..., None]
        small = np.abs(dU) < delta[..., None]
        ratio = np.abs(dF) / np.where(small, 1.0, np.abs(dU))
        alpha = np.where(small, lmax, np.clip(ratio, lmin, lmax))
        return 0.5 * alpha * dU

    # movers-plus (transfer-sign convention: sign(0) = +1)
    p_i = 0.5 * (wl[..., 3] + wr[..., 3])
    phi = np.abs(wr[..., 3] - wl[..., 3]) / (2.0 * p_i)
    vbar = 0.5 * (np.abs(vnl) + np.abs(vnr))
    sgn = np.where(dU >= 0.0, 1.0, -1.0)
    return 0.5 * (phi[..., None] * sgn * np.abs(dF)
                  + vbar[..., None] * dU)


def convective_fluxes(W, nxs, nys, areas, axis, gamma, order, limiter_id,
                      scheme_id, zero_min):
    """Scheme flux times face area on every face of one sweep direction."""
    wl, wr, fallbacks = _face_states(W, axis, order, limiter_id)
    vnl, UL, FL = _rotated(wl, nxs, nys, gamma)
    vnr, UR, FR = _rotated(wr, nxs, nys, gamma)
    d = _diffusion(scheme_id, zero_min, gamma, wl, wr, vnl, vnr, UL, UR, FL, FR)
    f_rot = 0.5 * (FL + FR) - d
    F = np.empty_like(f_rot)
    F[..., 0] = f_rot[..., 0]
    F[..., 1] = f_rot[..., 1] * nxs - f_rot[..., 2] * nys
    F[..., 2] = f_rot[..., 1] * nys + f_rot[..., 2] * nxs
    F[..., 3] = f_rot[..., 3]
    F *= areas[..., None]
    return F, fallbacks


def _node_average(A, axis):
    """Node values from the four surrounding cells, for faces of one axis.

    Returns (phi_a, phi_b), the values at the two nodes of each face.
    A has ghost-inclusive shape (ni+4, nj+4).
    """
    nodes = 0.25 * (A[1:-2, 1:-2] + A[2:-1, 1:-2] + A[1:-2, 2:-1] + A[2:-1, 2:-1])
    if axis == 0:
        return nodes[:, :-1], nodes[:, 1:]
    return nodes[:-1, :], nodes[1:, :]


def _face_cells(A, axis):
    if axis == 0:
        return A[1:-2, 2:-2], A[2:-1, 2:-2]
    return A[2:-2, 1:-2], A[2:-2, 2:-1]


def viscous_fluxes(W, T, MU, xc, yc, nodes_x, nodes_y, nxs, nys, areas, axis,
                   gamma, mach_ref, reynolds, prandtl):
    """Viscous flux times face area: stress work plus heat conduction.

    Gradients of u, v, T at each face come from the divergence theorem
    applied to the diamond co-volume spanned by the two adjacent cell
    centroids and the two face nodes (exact for linear fields).
    """
    if axis == 0:
        node_a_x, node_b_x = nodes_x[:, :-1], nodes_x[:, 1:]
        node_a_y, node_b_y = nodes_y[:, :-1], nodes_y[:, 1:]
    else:
        node_a_x, node_b_x = nodes_x[:-1, :], nodes_x[1:, :]
        node_a_y, node_b_y = nodes_y[:-1, :], nodes_y[1:, :]
    xl, xr = _face_cells(xc, axis)
    yl, yr = _face_cells(yc, axis)

    # Diamond vertices in order: left centroid, node a, right centroid, node b.
    px = (xl, node_a_x, xr, node_b_x)
    py = (yl, node_a_y, yr, node_b_y)
    area2 = np.zeros_like(xl)
    for k in range(4):
        k2 = (k + 1) % 4
        area2 += px[k] * py[k2] - px[k2] * py[k]
    inv_area = 1.0 / area2  # 2/area; edge sums below carry the matching 1/2

    def gradient(values):
        va, vb = values
        gx = np.zeros_like(xl)
        gy = np.zeros_like(xl)
        vals = (va[0], vb[0], va[1], vb[1])
        # vals order must match vertex order: (cell_l, node_a, cell_r, node_b)
        for k in range(4):
            k2 = (k + 1) % 4
            m = vals[k] + vals[k2]
            gx += m * (py[k2] - py[k])
            gy -= m * (px[k2] - px[k])
        return gx * inv_area, gy * inv_area

    def point_values(A):
        cl, cr = _face_cells(A, axis)
        na, nb = _node_average(A, axis)
        return ((cl, cr), (na, nb))

    u_x, u_y = gradient(point_values(W[..., 1]))
    v_x, v_y = gradient(point_values(W[..., 2]))
    t_x, t_y = gradient(point_values(T))

    mu_l, mu_r = _face_cells(MU, axis)
    mu = 0.5 * (mu_l + mu_r)
    ul, ur = _face_cells(W[..., 1], axis)
    vl, vr = _face_cells(W[..., 2], axis)
    ubar = 0.5 * (ul + ur)
    vbar = 0.5 * (vl + vr)

    div = u_x + v_y
    txx = mu * (2.0 * u_x - (2.0 / 3.0) * div)
    tyy = mu * (2.0 * v_y - (2.0 / 3.0) * div)
    txy = mu * (u_y + v_x)

    inv_re = 1.0 / reynolds
    k_cond = mu / ((gamma - 1.0) * reynolds * mach_ref * mach_ref * prandtl)
    fx = (txx * nxs + txy * nys) * inv_re
    fy = (txy * nxs + tyy * nys) * inv_re

    F = np.empty(xl.shape + (4,))
    F[..., 0] = 0.0
    F[..., 1] = fx
    F[..., 2] = fy
    F[..., 3] = ubar * fx + vbar * fy + k_cond * (t_x * nxs + t_y * nys)
    F *= areas[..., None]
    return F
