import math

import numpy as np
import pytest

from hugoniot.errors import Diverged
from hugoniot.grid import BlockBoundaries, Outflow, SlipWall, line_1d
from hugoniot.schemes import SchemeConfig
from hugoniot.solver import Block, Domain
from hugoniot.timestepping import (DIVERGENCE_RATIO, MarchConfig, drive,
                                   step_euler, step_rk3)


class LinearDecay:
    """Synthetic residual R = U so that dU/dt = -U."""

    def __call__(self, state, t):
        return [U.copy() for U in state]


def test_march_config_validation():
    with pytest.raises(ValueError):
        MarchConfig(integrator="rk4", final_time=1.0)
    with pytest.raises(ValueError):
        MarchConfig(final_time=1.0, residual_tol=1e-8)
    with pytest.raises(ValueError):
        MarchConfig()  # no termination rule
    assert MarchConfig(residual_tol=1e-8).steady


def test_euler_fixed_point():
    state = [np.random.default_rng(0).random((5, 4, 4))]
    out, _ = step_euler(state, 0.1, lambda s, t: [np.zeros_like(U) for U in s])
    assert np.array_equal(out[0], state[0])


def test_euler_single_cell_update():
    state = [np.ones((1, 1, 4))]

    def evaluate(s, t):
        R = [np.zeros_like(U) for U in s]
        R[0][0, 0, 0] = 1.0
        return R

    out, _ = step_euler(state, 0.1, evaluate)
    assert out[0][0, 0, 0] == pytest.approx(0.9)
    assert np.all(out[0][0, 0, 1:] == 1.0)


def test_rk3_fixed_point_bit_identical():
    state = [np.random.default_rng(1).random((6, 3, 4))]
    out, _ = step_rk3(state, 0.25, lambda s, t: [np.zeros_like(U) for U in s])
    assert np.array_equal(out[0], state[0])


def test_rk3_matches_third_order_taylor():
    # One step of u' = -u from u=1 lands exactly on the cubic Taylor
    # truncation of exp(-dt), so the defect from exp(-dt) is O(dt^4).
    dt = 0.1
    state = [np.ones((1, 1, 4))]
    out, _ = step_rk3(state, dt, LinearDecay())
    taylor3 = 1.0 - dt + dt ** 2 / 2.0 - dt ** 3 / 6.0
    assert out[0][0, 0, 0] == pytest.approx(taylor3, abs=1e-15)
    assert abs(out[0][0, 0, 0] - math.exp(-dt)) < dt ** 4 / 24.0 * 1.01


def test_rk3_temporal_order_on_decay():
    # Self-convergence on u' = -u: halving dt cuts the error ~16x (3rd order
    # plus one extra order from measuring at fixed final time).
    def solve(dt, n):
        state = [np.ones((1, 1, 4))]
        for _ in range(n):
            state, _ = step_rk3(state, dt, LinearDecay())
        return state[0][0, 0, 0]

    err1 = abs(solve(0.1, 10) - math.exp(-1.0))
    err2 = abs(solve(0.05, 20) - math.exp(-1.0))
    order = math.log2(err1 / err2)
    assert order > 2.7


def _sod_domain(scheme="movers-plus", nx=50):
    grid = line_1d(0.0, 1.0, nx)
    bcs = BlockBoundaries.uniform(grid, imin=Outflow(), imax=Outflow(),
                                  jmin=SlipWall(), jmax=SlipWall())
    domain = Domain([Block(grid, bcs)], scheme=SchemeConfig(scheme))

    def init(x, y):
        sel = x < 0.5
        shp = np.broadcast(x, y).shape
        return (np.where(sel, 1.0, 0.125), np.zeros(shp), np.zeros(shp),
                np.where(sel, 1.0, 0.1))

    return domain, domain.initialize(init)


def test_drive_lands_exactly_on_final_time():
    domain, state = _sod_domain()
    cfg = MarchConfig(integrator="euler1", cfl=0.3, final_time=0.2)
    res = drive(domain, state, cfg)
    assert res.time == 0.2
    assert res.converged


def test_drive_output_schedule_hits_times():
    domain, state = _sod_domain()
    seen = []
    cfg = MarchConfig(integrator="euler1", cfl=0.3, final_time=0.2,
                      output_times=(0.05, 0.1))
    drive(domain, state, cfg, on_output=lambda s, t: seen.append(t))
    assert seen == [0.05, 0.1, 0.2]


def test_drive_steady_contact_stops_immediately():
    grid = line_1d(0.0, 1.0, 40)
    bcs = BlockBoundaries.uniform(grid, imin=Outflow(), imax=Outflow(),
                                  jmin=SlipWall(), jmax=SlipWall())
    domain = Domain([Block(grid, bcs)], scheme=SchemeConfig("ricca"))

    def init(x, y):
        sel = x < 0.5
        shp = np.broadcast(x, y).shape
        return (np.where(sel, 1.4, 1.0), np.zeros(shp), np.zeros(shp),
                np.full(shp, 0.4))

    state = domain.initialize(init)
    res = drive(domain, state, MarchConfig(residual_tol=1e-12, max_iters=100))
    assert res.steps == 1 and res.converged
    assert res.history[0][1] == 0.0


def test_drive_divergence_guard():
    # The zero-diffusion central scheme blows up on Sod; the driver must
    # report it rather than march on.
    domain, state = _sod_domain(scheme="central")
    cfg = MarchConfig(integrator="euler1", cfl=0.5, residual_tol=1e-30,
                      max_iters=20000)
    from hugoniot.errors import NonPhysicalState
    with pytest.raises((Diverged, NonPhysicalState)):
        drive(domain, state, cfg)


def test_drive_records_monotone_history_keys():
    domain, state = _sod_domain()
    res = drive(domain, state, MarchConfig(residual_tol=0.9, max_iters=50))
    its = [h[0] for h in res.history]
    assert its == list(range(len(its)))
