"""Numba-compiled face-flux sweeps: the default backend.

Same contracts as kernels_numpy (see that module for the indexing
conventions); these are explicit per-face loops compiled with @njit.
fastmath stays off so results are reproducible run to run.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Scheme and limiter ids are baked in as literals to keep the jitted code
# free of dict lookups; they must match schemes.SCHEME_IDS and
# reconstruction.LIMITER_IDS.
_CENTRAL, _LLF, _RICCA, _MOVERS_N, _MOVERS_PLUS = 0, 1, 2, 3, 4
_MINMOD, _VANLEER = 0, 1
_DELTA_REL = 1.0e-8


@njit(cache=True)
def _slope(a, b, limiter_id):
    if a * b <= 0.0:
        return 0.0
    if limiter_id == _MINMOD:
        if abs(a) < abs(b):
            return a
        return b
    return 2.0 * a * b / (a + b)


@njit(cache=True)
def _face_flux(rl, ul, vl, pl, rr, ur, vr, pr, nx, ny, gamma, scheme_id,
               zero_min, out):
    gm1 = gamma - 1.0
    vnl = ul * nx + vl * ny
    vtl = -ul * ny + vl * nx
    vnr = ur * nx + vr * ny
    vtr = -ur * ny + vr * nx
    rel_ = pl / gm1 + 0.5 * rl * (ul * ul + vl * vl)
    rer = pr / gm1 + 0.5 * rr * (ur * ur + vr * vr)

    ul0 = rl
    ul1 = rl * vnl
    ul2 = rl * vtl
    ul3 = rel_
    ur0 = rr
    ur1 = rr * vnr
    ur2 = rr * vtr
    ur3 = rer

    fl0 = rl * vnl
    fl1 = rl * vnl * vnl + pl
    fl2 = rl * vnl * vtl
    fl3 = (rel_ + pl) * vnl
    fr0 = rr * vnr
    fr1 = rr * vnr * vnr + pr
    fr2 = rr * vnr * vtr
    fr3 = (rer + pr) * vnr

    du0 = ur0 - ul0
    du1 = ur1 - ul1
    du2 = ur2 - ul2
    du3 = ur3 - ul3
    df0 = fr0 - fl0
    df1 = fr1 - fl1
    df2 = fr2 - fl2
    df3 = fr3 - fl3

    d0 = 0.0
    d1 = 0.0
    d2 = 0.0
    d3 = 0.0
    if scheme_id != _CENTRAL:
        al = np.sqrt(gamma * pl / rl)
        ar_ = np.sqrt(gamma * pr / rr)
        if scheme_id == _LLF:
            alpha = max(abs(vnl) + al, abs(vnr) + ar_)
            d0 = 0.5 * alpha * du0
            d1 = 0.5 * alpha * du1
            d2 = 0.5 * alpha * du2
            d3 = 0.5 * alpha * du3
        elif scheme_id == _RICCA:
            umax = max(max(abs(ul0), abs(ul1)), max(abs(ul2), abs(ul3)))
            umax = max(umax, max(max(abs(ur0), abs(ur1)), max(abs(ur2), abs(ur3))))
            delta = _DELTA_REL * max(1.0, umax)
            dfmax = max(max(abs(df0), abs(df1)), max(abs(df2), abs(df3)))
            dumax = max(max(abs(du0), abs(du1)), max(abs(du2), abs(du3)))
            if dfmax < delta and dumax < delta:
                alpha = 0.5 * (abs(vnl) + abs(vnr))
            else:
                rho_i = 0.5 * (rl + rr)
                p_i = 0.5 * (pl + pr)
                a_i = np.sqrt(gamma * p_i / rho_i)
                sgn = 1.0 if pr != pl else 0.0
                alpha = max(abs(vnl), abs(vnr)) + sgn * a_i
            d0 = 0.5 * alpha * du0
            d1 = 0.5 * alpha * du1
            d2 = 0.5 * alpha * du2
            d3 = 0.5 * alpha * du3
        elif scheme_id == _MOVERS_N:
            umax = max(max(abs(ul0), abs(ul1)), max(abs(ul2), abs(ul3)))
            umax = max(umax, max(max(abs(ur0), abs(ur1)), max(abs(ur2), abs(ur3))))
            delta = _DELTA_REL * max(1.0, umax)
            lmax = max(abs(vnl) + al, abs(vnr) + ar_)
            if zero_min:
                lmin = 0.0
            else:
                lmin = min(abs(vnl), abs(vnr))
            a0 = lmax if abs(du0) < delta else min(max(abs(df0 / du0), lmin), lmax)
            a1 = lmax if abs(du1) < delta else min(max(abs(df1 / du1), lmin), lmax)
            a2 = lmax if abs(du2) < delta else min(max(abs(df2 / du2), lmin), lmax)
            a3 = lmax if abs(du3) < delta else min(max(abs(df3 / du3), lmin), lmax)
            d0 = 0.5 * a0 * du0
            d1 = 0.5 * a1 * du1
            d2 = 0.5 * a2 * du2
            d3 = 0.5 * a3 * du3
        else:
            # movers-plus (transfer-sign convention: sign(0) = +1)
            p_i = 0.5 * (pl + pr)
            phi = abs(pr - pl) / (2.0 * p_i)
            vbar = 0.5 * (abs(vnl) + abs(vnr))
            s0 = 1.0 if du0 >= 0.0 else -1.0
            s1 = 1.0 if du1 >= 0.0 else -1.0
            s2 = 1.0 if du2 >= 0.0 else -1.0
            s3 = 1.0 if du3 >= 0.0 else -1.0
            d0 = 0.5 * (phi * s0 * abs(df0) + vbar * du0)
            d1 = 0.5 * (phi * s1 * abs(df1) + vbar * du1)
            d2 = 0.5 * (phi * s2 * abs(df2) + vbar * du2)
            d3 = 0.5 * (phi * s3 * abs(df3) + vbar * du3)

    f0 = 0.5 * (fl0 + fr0) - d0
    f1 = 0.5 * (fl1 + fr1) - d1
    f2 = 0.5 * (fl2 + fr2) - d2
    f3 = 0.5 * (fl3 + fr3) - d3

    out[0] = f0
    out[1] = f1 * nx - f2 * ny
    out[2] = f1 * ny + f2 * nx
    out[3] = f3


@njit(cache=True)
def _sweep(W, nxs, nys, areas, axis, gamma, order, limiter_id, scheme_id,
           zero_min, F):
    nf0 = F.shape[0]
    nf1 = F.shape[1]
    wl = np.empty(4)
    wr = np.empty(4)
    face = np.empty(4)
    fallbacks = 0
    for f0 in range(nf0):
        for f1 in range(nf1):
            if axis == 0:
                i = f0
                j = f1 + 2
                w0 = W[i, j]
                w1 = W[i + 1, j]
                w2 = W[i + 2, j]
                w3 = W[i + 3, j]
            else:
                i = f0 + 2
                j = f1
                w0 = W[i, j]
                w1 = W[i, j + 1]
                w2 = W[i, j + 2]
                w3 = W[i, j + 3]
            if order == 1:
                for c in range(4):
                    wl[c] = w1[c]
                    wr[c] = w2[c]
            else:
                bad_l = False
                bad_r = False
                for c in range(4):
                    sl = _slope(w1[c] - w0[c], w2[c] - w1[c], limiter_id)
                    sr = _slope(w2[c] - w1[c], w3[c] - w2[c], limiter_id)
                    wl[c] = w1[c] + 0.5 * sl
                    wr[c] = w2[c] - 0.5 * sr
                    if c == 0 or c == 3:
                        if wl[c] <= 0.0 or 2.0 * w1[c] - wl[c] <= 0.0:
                            bad_l = True
                        if wr[c] <= 0.0 or 2.0 * w2[c] - wr[c] <= 0.0:
                            bad_r = True
                if bad_l:
                    fallbacks += 1
                    for c in range(4):
                        wl[c] = w1[c]
                if bad_r:
                    fallbacks += 1
                    for c in range(4):
                        wr[c] = w2[c]
            _face_flux(wl[0], wl[1], wl[2], wl[3], wr[0], wr[1], wr[2], wr[3],
                       nxs[f0, f1], nys[f0, f1], gamma, scheme_id, zero_min,
                       face)
            ar = areas[f0, f1]
            F[f0, f1, 0] = face[0] * ar
            F[f0, f1, 1] = face[1] * ar
            F[f0, f1, 2] = face[2] * ar
            F[f0, f1, 3] = face[3] * ar
    return fallbacks


def convective_fluxes(W, nxs, nys, areas, axis, gamma, order, limiter_id,
                      scheme_id, zero_min):
    if axis == 0:
        shape = (W.shape[0] - 3, W.shape[1] - 4, 4)
    else:
        shape = (W.shape[0] - 4, W.shape[1] - 3, 4)
    F = np.empty(shape)
    fallbacks = _sweep(W, nxs, nys, areas, axis, gamma, order, limiter_id,
                       scheme_id, 1 if zero_min else 0, F)
    return F, fallbacks


@njit(cache=True)
def _viscous_sweep(U_, V_, T_, MU_, xc, yc, nodes_x, nodes_y, nxs, nys, areas,
                   axis, gamma, mach_ref, reynolds, prandtl, F):
    nf0 = F.shape[0]
    nf1 = F.shape[1]
    inv_re = 1.0 / reynolds
    cond = 1.0 / ((gamma - 1.0) * reynolds * mach_ref * mach_ref * prandtl)
    for f0 in range(nf0):
        for f1 in range(nf1):
            if axis == 0:
                il = f0 + 1
                jl = f1 + 2
                ir = f0 + 2
                jr = f1 + 2
                na_i = f0
                na_j = f1
                nb_i = f0
                nb_j = f1 + 1
            else:
                il = f0 + 2
                jl = f1 + 1
                ir = f0 + 2
                jr = f1 + 2
                na_i = f0
                na_j = f1
                nb_i = f0 + 1
                nb_j = f1

            # Diamond vertices: left centroid, node a, right centroid, node b.
            x0 = xc[il, jl]
            y0 = yc[il, jl]
            x1 = nodes_x[na_i, na_j]
            y1 = nodes_y[na_i, na_j]
            x2 = xc[ir, jr]
            y2 = yc[ir, jr]
            x3 = nodes_x[nb_i, nb_j]
            y3 = nodes_y[nb_i, nb_j]
            area2 = (x0 * y1 - x1 * y0 + x1 * y2 - x2 * y1
                     + x2 * y3 - x3 * y2 + x3 * y0 - x0 * y3)
            inv_area = 1.0 / area2

            # Node values: mean of the four cells around each node.
            ua = 0.25 * (U_[na_i + 1, na_j + 1] + U_[na_i + 2, na_j + 1]
                         + U_[na_i + 1, na_j + 2] + U_[na_i + 2, na_j + 2])
            ub = 0.25 * (U_[nb_i + 1, nb_j + 1] + U_[nb_i + 2, nb_j + 1]
                         + U_[nb_i + 1, nb_j + 2] + U_[nb_i + 2, nb_j + 2])
            va = 0.25 * (V_[na_i + 1, na_j + 1] + V_[na_i + 2, na_j + 1]
                         + V_[na_i + 1, na_j + 2] + V_[na_i + 2, na_j + 2])
            vb = 0.25 * (V_[nb_i + 1, nb_j + 1] + V_[nb_i + 2, nb_j + 1]
                         + V_[nb_i + 1, nb_j + 2] + V_[nb_i + 2, nb_j + 2])
            ta = 0.25 * (T_[na_i + 1, na_j + 1] + T_[na_i + 2, na_j + 1]
                         + T_[na_i + 1, na_j + 2] + T_[na_i + 2, na_j + 2])
            tb = 0.25 * (T_[nb_i + 1, nb_j + 1] + T_[nb_i + 2, nb_j + 1]
                         + T_[nb_i + 1, nb_j + 2] + T_[nb_i + 2, nb_j + 2])

            ql = (U_[il, jl], V_[il, jl], T_[il, jl])
            qr = (U_[ir, jr], V_[ir, jr], T_[ir, jr])
            qa = (ua, va, ta)
            qb = (ub, vb, tb)

            dy01 = y1 - y0
            dy12 = y2 - y1
            dy23 = y3 - y2
            dy30 = y0 - y3
            dx01 = x1 - x0
            dx12 = x2 - x1
            dx23 = x3 - x2
            dx30 = x0 - x3

            gx = np.empty(3)
            gy = np.empty(3)
            for c in range(3):
                m01 = ql[c] + qa[c]
                m12 = qa[c] + qr[c]
                m23 = qr[c] + qb[c]
                m30 = qb[c] + ql[c]
                gx[c] = (m01 * dy01 + m12 * dy12 + m23 * dy23 + m30 * dy30) * inv_area
                gy[c] = -(m01 * dx01 + m12 * dx12 + m23 * dx23 + m30 * dx30) * inv_area
            ux = gx[0]
            uy = gy[0]
            vx = gx[1]
            vy = gy[1]
            tx = gx[2]
            ty = gy[2]

            mu = 0.5 * (MU_[il, jl] + MU_[ir, jr])
            ubar = 0.5 * (U_[il, jl] + U_[ir, jr])
            vbar = 0.5 * (V_[il, jl] + V_[ir, jr])

            div = ux + vy
            txx = mu * (2.0 * ux - (2.0 / 3.0) * div)
            tyy = mu * (2.0 * vy - (2.0 / 3.0) * div)
            txy = mu * (uy + vx)

            nx = nxs[f0, f1]
            ny = nys[f0, f1]
            ar = areas[f0, f1]
            fx = (txx * nx + txy * ny) * inv_re
            fy = (txy * nx + tyy * ny) * inv_re
            F[f0, f1, 0] = 0.0
            F[f0, f1, 1] = fx * ar
            F[f0, f1, 2] = fy * ar
            F[f0, f1, 3] = (ubar * fx + vbar * fy
                            + mu * cond * (tx * nx + ty * ny)) * ar


def viscous_fluxes(W, T, MU, xc, yc, nodes_x, nodes_y, nxs, nys, areas, axis,
                   gamma, mach_ref, reynolds, prandtl):
    if axis == 0:
        shape = (W.shape[0] - 3, W.shape[1] - 4, 4)
    else:
        shape = (W.shape[0] - 4, W.shape[1] - 3, 4)
    F = np.empty(shape)
    _viscous_sweep(np.ascontiguousarray(W[..., 1]), np.ascontiguousarray(W[..., 2]),
                   T, MU, xc, yc, nodes_x, nodes_y, nxs, nys, areas, axis,
                   gamma, mach_ref, reynolds, prandtl, F)
    return F
