"""Agreement between the numba kernels, the numpy kernels, and the
per-face reference implementations in schemes.py / viscous.py."""

import math

import numpy as np
import pytest

from hugoniot import backend, kernels_numba, kernels_numpy
from hugoniot.gas import GasModel, PrimitiveState
from hugoniot.grid import (BlockBoundaries, Inflow, polar_half_cylinder,
                           uniform_box)
from hugoniot.reconstruction import LIMITER_IDS
from hugoniot.schemes import SCHEME_IDS, SchemeConfig, interface_flux, InterfaceInput
from hugoniot.solver import Block, Domain
from hugoniot.viscous import sutherland_mu_array

GAMMA = 1.4


def random_field(rng, ni, nj):
    W = np.empty((ni + 4, nj + 4, 4))
    W[..., 0] = rng.uniform(0.1, 4.0, (ni + 4, nj + 4))
    W[..., 1] = rng.uniform(-2.5, 2.5, (ni + 4, nj + 4))
    W[..., 2] = rng.uniform(-2.5, 2.5, (ni + 4, nj + 4))
    W[..., 3] = rng.uniform(0.1, 4.0, (ni + 4, nj + 4))
    return W


def face_geometry(rng, shape):
    ang = rng.uniform(-0.4, 0.4, shape)
    return np.cos(ang), np.sin(ang), rng.uniform(0.5, 1.5, shape)


@pytest.mark.parametrize("scheme", sorted(SCHEME_IDS))
@pytest.mark.parametrize("order", [1, 2])
@pytest.mark.parametrize("axis", [0, 1])
def test_convective_backends_agree(scheme, order, axis):
    rng = np.random.default_rng(SCHEME_IDS[scheme] * 10 + order + axis)
    ni, nj = 17, 9
    W = random_field(rng, ni, nj)
    shape = (ni + 1, nj) if axis == 0 else (ni, nj + 1)
    nxs, nys, areas = face_geometry(rng, shape)
    args = (W, nxs, nys, areas, axis, GAMMA, order, LIMITER_IDS["minmod"],
            SCHEME_IDS[scheme], False)
    f_np, n_np = kernels_numpy.convective_fluxes(*args)
    f_nb, n_nb = kernels_numba.convective_fluxes(*args)
    assert n_np == n_nb
    scale = np.abs(f_np).max()
    assert np.allclose(f_nb, f_np, rtol=0, atol=1e-12 * max(1.0, scale))


@pytest.mark.parametrize("scheme", ["llf", "ricca", "movers-n", "movers-plus"])
def test_kernels_match_per_face_reference(scheme):
    # Order-1 kernel fluxes equal the per-face API applied to cell states.
    rng = np.random.default_rng(101)
    ni, nj = 8, 5
    W = random_field(rng, ni, nj)
    nxs, nys, areas = face_geometry(rng, (ni + 1, nj))
    F, _ = kernels_numpy.convective_fluxes(
        W, nxs, nys, areas, 0, GAMMA, 1, 0, SCHEME_IDS[scheme], False)
    cfg = SchemeConfig(scheme)
    gas = GasModel()
    for f0 in range(ni + 1):
        for f1 in range(nj):
            wl = W[f0 + 1, f1 + 2]
            wr = W[f0 + 2, f1 + 2]
            inp = InterfaceInput(PrimitiveState(*wl), PrimitiveState(*wr),
                                 (nxs[f0, f1], nys[f0, f1]), gas)
            expected = interface_flux(cfg, inp) * areas[f0, f1]
            scale = max(1.0, np.abs(expected).max())
            assert np.allclose(F[f0, f1], expected, rtol=0, atol=1e-12 * scale)


@pytest.mark.parametrize("axis", [0, 1])
def test_viscous_backends_agree(axis):
    rng = np.random.default_rng(7 + axis)
    grid = uniform_box(0.0, 2.0, 0.0, 1.0, 12, 7)
    ni, nj = grid.ni, grid.nj
    W = random_field(rng, ni, nj)
    T = GAMMA * W[..., 3] / W[..., 0]
    MU = sutherland_mu_array(T, 0.38)
    if axis == 0:
        nxs, nys, areas = grid.iface_nx, grid.iface_ny, grid.iface_area
    else:
        nxs, nys, areas = grid.jface_nx, grid.jface_ny, grid.jface_area
    args = (W, T, MU, grid.xc_g, grid.yc_g, grid.nodes_x, grid.nodes_y,
            nxs, nys, areas, axis, GAMMA, 2.0, 1000.0, 0.72)
    f_np = kernels_numpy.viscous_fluxes(*args)
    f_nb = kernels_numba.viscous_fluxes(*args)
    scale = np.abs(f_np).max()
    assert np.allclose(f_nb, f_np, rtol=0, atol=1e-12 * max(1.0, scale))


def test_viscous_kernel_linear_field_exact():
    # A globally linear velocity/temperature field has constant gradients;
    # with arithmetic-mean node values the diamond gradients are exact on
    # parallelogram cells, so use a uniformly sheared grid.
    x = np.linspace(0.0, 2.0, 13)
    y = np.linspace(0.0, 1.0, 8)
    nx_, ny_ = np.meshgrid(x, y, indexing="ij")
    nx_ = nx_ + 0.3 * ny_
    from hugoniot.grid import StructuredGrid
    grid = StructuredGrid(nx_, ny_)
    ni, nj = grid.ni, grid.nj
    a_u, b_u, c_u = 0.3, 0.7, -0.4
    W = np.empty((ni + 4, nj + 4, 4))
    W[..., 0] = 1.0
    W[..., 1] = a_u + b_u * grid.xc_g + c_u * grid.yc_g
    W[..., 2] = 0.1 - 0.2 * grid.xc_g + 0.5 * grid.yc_g
    W[..., 3] = 1.0 / GAMMA  # T = 1 everywhere at mach_ref = 1
    T = GAMMA * W[..., 3] / W[..., 0]
    MU = sutherland_mu_array(T, 0.38)
    F = kernels_numpy.viscous_fluxes(
        W, T, MU, grid.xc_g, grid.yc_g, grid.nodes_x, grid.nodes_y,
        grid.iface_nx, grid.iface_ny, grid.iface_area, 0, GAMMA, 1.0, 50.0, 0.72)
    # Expected stresses from the constant gradients (mu = 1 at T = 1).
    div = b_u + 0.5
    txx = 2.0 * b_u - (2.0 / 3.0) * div
    txy = c_u + (-0.2)
    fx = (txx * grid.iface_nx + txy * grid.iface_ny) / 50.0 * grid.iface_area
    # Interior faces are exact; the boundary ring sees the mirrored ghost
    # centroids (off the sheared lattice) and is merely consistent.
    assert np.allclose(F[1:-1, 1:-1, 1], fx[1:-1, 1:-1], rtol=0, atol=1e-14)
    assert np.abs(F[..., 1] - fx).max() < 1e-3
    assert np.allclose(F[..., 0], 0.0)


def test_backend_env_selection(monkeypatch):
    monkeypatch.setenv("HUGONIOT_BACKEND", "numpy")
    assert backend.backend_name() == "numpy"
    assert backend.get_kernels() is kernels_numpy
    monkeypatch.setenv("HUGONIOT_BACKEND", "numba")
    assert backend.get_kernels() is kernels_numba
    monkeypatch.setenv("HUGONIOT_BACKEND", "fortran")
    with pytest.raises(RuntimeError):
        backend.backend_name()
    monkeypatch.delenv("HUGONIOT_BACKEND")
    assert backend.backend_name() == "numba"


def test_full_residual_backend_agreement(monkeypatch):
    # End to end: a curved-grid domain evaluated under both backends.
    grid = polar_half_cylinder(20, 8)
    state0 = (1.4, 6.0, 0.0, 1.0)
    bcs = BlockBoundaries.uniform(grid, imin=Inflow(state0), imax=Inflow(state0),
                                  jmin=Inflow(state0), jmax=Inflow(state0))
    domain = Domain([Block(grid, bcs)], scheme=SchemeConfig("ricca"))
    rng = np.random.default_rng(5)

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return (1.0 + rng.random(shp), rng.random(shp), rng.random(shp),
                1.0 + rng.random(shp))

    state = domain.initialize(init)
    monkeypatch.setenv("HUGONIOT_BACKEND", "numpy")
    r_np = domain.residual(state, 0.0)[0].copy()
    monkeypatch.setenv("HUGONIOT_BACKEND", "numba")
    r_nb = domain.residual(state, 0.0)[0]
    scale = np.abs(r_np).max()
    assert np.allclose(r_nb, r_np, rtol=0, atol=1e-11 * max(1.0, scale))


def test_benchmark_harness_runs():
    from hugoniot.benchmark import run_benchmark
    lines = run_benchmark(case="toro1", nx=64, order=2, evals=2)
    assert any("speedup" in ln for ln in lines)
