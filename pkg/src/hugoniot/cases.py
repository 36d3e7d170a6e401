"""Benchmark case registry.

Each CaseSpec is declarative: gas model, grid sizing, marching defaults
and a `build` function that materializes blocks, links and the initial
condition at the requested resolution. `registry_lookup` resolves a name;
`case_names` lists everything. 1D cases carry their Riemann data so the
exact-solution oracle can be attached by the runner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import UnknownCase
from .gas import GasModel, PrimitiveState
from .grid import (BlockBoundaries, Inflow, Link, NoSlipWall, Outflow,
                   Segment, SlipWall, Symmetry, TimeDependent,
                   bump_channel, line_1d, odd_even_duct, polar_half_cylinder,
                   ramp_channel, stretched_box, uniform_box)
from .riemann import solve_star
from .shock_relations import (moving_shock_post_state, oblique_shock_post_state,
                              steady_shock_pair)
from .solver import Block


@dataclass(frozen=True)
class CaseSpec:
    """Declarative description of one benchmark case."""

    name: str
    description: str
    dim: int
    build: Callable  # (spec) -> (blocks, links, init_fn)
    gas: GasModel = GasModel()
    scheme: str = "movers-plus"
    order: int = 1
    cfl: float = 0.5
    nx: int = 100
    ny: int = 1
    final_time: float | None = None  # None marks a steady case
    residual_tol: float = 1e-12
    max_iters: int = 100000
    output_times: tuple = ()
    viscous: bool = False
    # 1D Riemann data (None for 2D cases).
    left: PrimitiveState | None = None
    right: PrimitiveState | None = None
    x0: float | None = None
    domain_length: float = 1.0

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)

    def riemann_fan(self):
        if self.left is None or self.right is None:
            return None
        return solve_star(self.left, self.right, self.gas)


# ---------------------------------------------------------------------------
# 1D shock-tube family
# ---------------------------------------------------------------------------


def _build_1d(spec: CaseSpec):
    grid = line_1d(0.0, spec.domain_length, spec.nx)
    sup = _supersonic_in(spec.left, spec.gas.gamma)
    imin = Inflow(tuple(spec.left.as_array())) if sup else Outflow()
    bcs = BlockBoundaries.uniform(grid, imin=imin, imax=Outflow(),
                                  jmin=SlipWall(), jmax=SlipWall())
    left, right, x0 = spec.left, spec.right, spec.x0

    def init(x, y):
        sel = x < x0
        return (np.where(sel, left.rho, right.rho),
                np.where(sel, left.u, right.u),
                np.where(sel, left.v, right.v),
                np.where(sel, left.p, right.p))

    return [Block(grid, bcs)], [], init


def _supersonic_in(s: PrimitiveState, gamma: float) -> bool:
    return s.u > math.sqrt(gamma * s.p / s.rho)


def _toro_case(name, desc, left, right, x0, tmax, steady=False,
               max_iters=2000):
    return CaseSpec(
        name=name, description=desc, dim=1, build=_build_1d,
        cfl=0.1, order=1, nx=100,
        final_time=None if steady else tmax,
        residual_tol=1e-14 if steady else 1e-12,
        max_iters=max_iters if steady else 100000,
        left=PrimitiveState.one_d(*left), right=PrimitiveState.one_d(*right),
        x0=x0,
    )


_GAMMA = 1.4
_STEADY_SHOCK_MACH = 2.0
_SHOCK_L, _SHOCK_R = steady_shock_pair(_STEADY_SHOCK_MACH, GasModel())

_TORO_CASES = [
    _toro_case("toro1", "shock tube with sonic point in the left fan",
               (1.0, 0.0, 1.0), (0.125, 0.0, 0.1), 0.5, 0.2),
    _toro_case("toro2", "double rarefaction pulling near-vacuum",
               (1.0, -2.0, 0.4), (1.0, 2.0, 0.4), 0.5, 0.15),
    _toro_case("toro3", "severe left blast wave, very strong right shock",
               (1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 0.5, 0.012),
    _toro_case("toro4", "right blast wave, strong left shock",
               (1.0, 0.0, 0.01), (1.0, 0.0, 100.0), 0.5, 0.035),
    _toro_case("toro5", "colliding strong shocks, slowly moving left shock",
               (5.99924, 19.5975, 460.894), (5.99242, -6.19633, 46.0950),
               0.4, 0.035),
    _toro_case("toro6", "stationary normal shock (upstream Mach 2)",
               (_SHOCK_L.rho, _SHOCK_L.u, _SHOCK_L.p),
               (_SHOCK_R.rho, _SHOCK_R.u, _SHOCK_R.p), 0.5, None,
               steady=True),
    _toro_case("toro7", "stationary contact discontinuity",
               (1.4, 0.0, 0.4), (1.0, 0.0, 0.4), 0.5, None, steady=True),
    _toro_case("toro8", "slowly moving contact discontinuity",
               (1.4, 0.1, 1.0), (1.0, 0.1, 1.0), 0.5, 2.0),
    _toro_case("toro9", "slowly moving shock with trailing waves",
               (3.86, -0.81, 10.33), (1.0, -3.44, 1.0), 0.5, 0.5),
]


# ---------------------------------------------------------------------------
# 2D Euler cases
# ---------------------------------------------------------------------------

_REFLECTION_INFLOW = (1.0, 2.9, 0.0, 1.0 / 1.4)
_REFLECTION_TOP = (1.69997, 2.61934, -0.50633, 1.52819)


def _build_reflection(spec: CaseSpec):
    grid = uniform_box(0.0, 3.0, 0.0, 1.0, spec.nx, spec.ny)
    bcs = BlockBoundaries.uniform(
        grid,
        imin=Inflow(_REFLECTION_INFLOW), imax=Outflow(),
        jmin=SlipWall(), jmax=Inflow(_REFLECTION_TOP))
    state = _REFLECTION_INFLOW

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return tuple(np.full(shp, c) for c in state)

    return [Block(grid, bcs)], [], init


def _build_ramp(spec: CaseSpec):
    grid = ramp_channel(spec.nx, spec.ny)
    state = (1.4, 2.0, 0.0, 1.0)
    bcs = BlockBoundaries.uniform(grid, imin=Inflow(state), imax=Outflow(),
                                  jmin=SlipWall(), jmax=SlipWall())

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return tuple(np.full(shp, c) for c in state)

    return [Block(grid, bcs)], [], init


_SLIP_LOW = (1.4, 2.0, 0.0, 1.0)
_SLIP_HIGH = (1.4, 3.0, 0.0, 1.0)


def _build_slip_flow(spec: CaseSpec):
    grid = uniform_box(0.0, 1.0, 0.0, 1.0, spec.nx, spec.ny)
    j_split = int(np.searchsorted(grid.yc[0, :], 0.5))
    bcs = BlockBoundaries.uniform(grid, imax=Outflow(),
                                  jmin=SlipWall(), jmax=SlipWall())
    bcs.imin = [Segment(0, j_split, Inflow(_SLIP_LOW)),
                Segment(j_split, grid.nj, Inflow(_SLIP_HIGH))]

    def init(x, y):
        sel = y < 0.5
        return (np.where(sel, _SLIP_LOW[0], _SLIP_HIGH[0]),
                np.where(sel, _SLIP_LOW[1], _SLIP_HIGH[1]),
                np.full(np.broadcast(x, y).shape, 0.0),
                np.where(sel, _SLIP_LOW[3], _SLIP_HIGH[3]))

    return [Block(grid, bcs)], [], init


_CYL_FREESTREAM = (1.4, 6.0, 0.0, 1.0)


def _build_half_cylinder(spec: CaseSpec):
    grid = polar_half_cylinder(spec.nx, spec.ny)
    bcs = BlockBoundaries.uniform(grid, imin=Outflow(), imax=Outflow(),
                                  jmin=SlipWall(),
                                  jmax=Inflow(_CYL_FREESTREAM))

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return tuple(np.full(shp, c) for c in _CYL_FREESTREAM)

    return [Block(grid, bcs)], [], init


_STEP_INFLOW = (1.4, 3.0, 0.0, 1.0)


def _build_forward_step(spec: CaseSpec):
    nx, ny = spec.nx, spec.ny
    if nx % 5 or ny % 5:
        raise ValueError("forward-step grid sizes must be multiples of 5")
    nxa, nya = nx // 5, ny // 5  # step corner at (0.6, 0.2) of [0,3]x[0,1]
    ga = uniform_box(0.0, 0.6, 0.0, 0.2, nxa, nya)
    gb = uniform_box(0.0, 0.6, 0.2, 1.0, nxa, ny - nya)
    gc = uniform_box(0.6, 3.0, 0.2, 1.0, nx - nxa, ny - nya)
    ba = BlockBoundaries.uniform(ga, imin=Inflow(_STEP_INFLOW),
                                 imax=SlipWall(), jmin=SlipWall(), jmax=None)
    bb = BlockBoundaries.uniform(gb, imin=Inflow(_STEP_INFLOW), imax=None,
                                 jmin=None, jmax=SlipWall())
    bc = BlockBoundaries.uniform(gc, imin=None, imax=Outflow(),
                                 jmin=SlipWall(), jmax=SlipWall())
    links = [Link(0, "jmax", 1, "jmin"), Link(1, "imax", 2, "imin")]

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return tuple(np.full(shp, c) for c in _STEP_INFLOW)

    return [Block(ga, ba), Block(gb, bb), Block(gc, bc)], links, init


_ODD_EVEN_PRE = PrimitiveState(1.4, 0.0, 0.0, 1.0)
_ODD_EVEN_POST, _ODD_EVEN_SPEED = moving_shock_post_state(
    _ODD_EVEN_PRE, 6.0, GasModel())
_ODD_EVEN_X0 = 20.0


def _build_odd_even(spec: CaseSpec):
    grid = odd_even_duct(spec.nx, spec.ny)
    post, pre = _ODD_EVEN_POST, _ODD_EVEN_PRE
    bcs = BlockBoundaries.uniform(
        grid, imin=Inflow((post.rho, post.u, post.v, post.p)),
        imax=Outflow(), jmin=SlipWall(), jmax=SlipWall())

    def init(x, y):
        sel = x < _ODD_EVEN_X0
        return (np.where(sel, post.rho, pre.rho),
                np.where(sel, post.u, pre.u),
                np.full(np.broadcast(x, y).shape, 0.0),
                np.where(sel, post.p, pre.p))

    return [Block(grid, bcs)], [], init


_DMR_PRE = PrimitiveState(1.4, 0.0, 0.0, 1.0)


def _dmr_post_state():
    """Post-shock state of the Mach-10 shock inclined 60 deg to the wall."""
    post_n, _ = moving_shock_post_state(_DMR_PRE, 10.0, GasModel())
    speed = post_n.u  # velocity along the shock normal, lab frame
    nx, ny = math.sin(math.radians(60.0)), -math.cos(math.radians(60.0))
    return PrimitiveState(post_n.rho, speed * nx, speed * ny, post_n.p)


_DMR_POST = _dmr_post_state()


def _build_dmr(spec: CaseSpec):
    grid = uniform_box(0.0, 4.0, 0.0, 1.0, spec.nx, spec.ny)
    post, pre = _DMR_POST, _DMR_PRE
    i_foot = int(np.searchsorted(grid.xc[:, 0], 1.0 / 6.0))

    def top(x, y, t):
        xs = 1.0 / 6.0 + (1.0 + 20.0 * t) / math.sqrt(3.0)
        sel = x < xs
        return (np.where(sel, post.rho, pre.rho),
                np.where(sel, post.u, pre.u),
                np.where(sel, post.v, pre.v),
                np.where(sel, post.p, pre.p))

    bcs = BlockBoundaries.uniform(
        grid, imin=Inflow((post.rho, post.u, post.v, post.p)),
        imax=Outflow(), jmax=TimeDependent(top))
    bcs.jmin = [Segment(0, i_foot, Inflow((post.rho, post.u, post.v, post.p))),
                Segment(i_foot, grid.ni, SlipWall())]

    def init(x, y):
        sel = x < 1.0 / 6.0 + y / math.sqrt(3.0)
        return (np.where(sel, post.rho, pre.rho),
                np.where(sel, post.u, pre.u),
                np.where(sel, post.v, pre.v),
                np.where(sel, post.p, pre.p))

    return [Block(grid, bcs)], [], init


_DIFFR_PRE = PrimitiveState(1.4, 0.0, 0.0, 1.0)
_DIFFR_POST, _ = moving_shock_post_state(_DIFFR_PRE, 5.09, GasModel())


def _build_diffraction(spec: CaseSpec):
    nx, ny = spec.nx, spec.ny
    if nx % 20 or ny % 8:
        raise ValueError("diffraction grid needs nx % 20 == 0 and ny % 8 == 0")
    n_col = nx // 20          # columns left of the corner (x < 0.05)
    n_top = (3 * ny) // 8     # rows above the corner (y > 0.625)
    g1 = uniform_box(0.0, 0.05, 0.625, 1.0, n_col, n_top)
    g2 = uniform_box(0.05, 1.0, 0.625, 1.0, nx - n_col, n_top)
    g3 = uniform_box(0.05, 1.0, 0.0, 0.625, nx - n_col, ny - n_top)
    post, pre = _DIFFR_POST, _DIFFR_PRE
    b1 = BlockBoundaries.uniform(
        g1, imin=Inflow((post.rho, post.u, post.v, post.p)), imax=None,
        jmin=SlipWall(), jmax=SlipWall())
    b2 = BlockBoundaries.uniform(g2, imin=None, imax=Outflow(),
                                 jmin=None, jmax=SlipWall())
    b3 = BlockBoundaries.uniform(g3, imin=SlipWall(), imax=Outflow(),
                                 jmin=Outflow(), jmax=None)
    links = [Link(0, "imax", 1, "imin"), Link(1, "jmin", 2, "jmax")]

    def init(x, y):
        sel = x < 0.05
        return (np.where(sel, post.rho, pre.rho),
                np.where(sel, post.u, pre.u),
                np.full(np.broadcast(x, y).shape, 0.0),
                np.where(sel, post.p, pre.p))

    return [Block(g1, b1), Block(g2, b2), Block(g3, b3)], links, init


# ---------------------------------------------------------------------------
# Viscous cases
# ---------------------------------------------------------------------------

_TUBE_GAS = GasModel(gamma=1.4, prandtl=0.72, reynolds=25000.0,
                     mach_ref=1.0 / math.sqrt(1.4))


def _build_viscous_tube(spec: CaseSpec):
    height = 0.3
    grid = stretched_box(0.0, 1.0, 0.0, height, spec.nx, spec.ny,
                         first_cell=1e-3 * height, both_walls=True)
    bcs = BlockBoundaries.uniform(grid, imin=Outflow(), imax=Outflow(),
                                  jmin=NoSlipWall(), jmax=NoSlipWall())

    def init(x, y):
        sel = x < 0.5
        return (np.where(sel, 1.0, 0.125),
                np.zeros(np.broadcast(x, y).shape),
                np.zeros(np.broadcast(x, y).shape),
                np.where(sel, 1.0, 0.1))

    return [Block(grid, bcs)], [], init


_SWBLI_GAS = GasModel(gamma=1.4, prandtl=0.72, reynolds=1e5, mach_ref=2.0)
_SWBLI_FREE = PrimitiveState(1.0, 1.0, 0.0, 1.0 / (1.4 * 4.0))
# Incident-shock angle sized for the classic separated interaction
# (incident pressure ratio ~1.18, reflected ~1.4). A literal Mach-wave
# angle (30 deg at Mach 2) would carry zero strength.
_SWBLI_BETA = math.radians(32.585)
_SWBLI_POST = oblique_shock_post_state(_SWBLI_FREE, _SWBLI_BETA, _SWBLI_GAS)
_SWBLI_ANCHOR = (-0.2, 0.765)


def _build_swbli(spec: CaseSpec):
    grid = stretched_box(-0.2, 1.8, 0.0, 1.0, spec.nx, spec.ny,
                         first_cell=0.04 / spec.ny)
    free, post = _SWBLI_FREE, _SWBLI_POST
    tan_b = math.tan(_SWBLI_BETA)
    xa, ya = _SWBLI_ANCHOR

    def shock_y(x):
        return ya - (x - xa) * tan_b

    j_split = int(np.searchsorted(grid.yc[0, :], ya))
    i_plate = int(np.searchsorted(grid.xc[:, 0], 0.0))
    bcs = BlockBoundaries.uniform(grid, imax=Outflow(),
                                  jmax=Inflow((post.rho, post.u, post.v, post.p)))
    bcs.imin = [Segment(0, j_split, Inflow((free.rho, free.u, free.v, free.p))),
                Segment(j_split, grid.nj,
                        Inflow((post.rho, post.u, post.v, post.p)))]
    bcs.jmin = [Segment(0, i_plate, Symmetry()),
                Segment(i_plate, grid.ni, NoSlipWall())]

    def init(x, y):
        sel = y < shock_y(x)
        return (np.where(sel, free.rho, post.rho),
                np.where(sel, free.u, post.u),
                np.where(sel, free.v, post.v),
                np.where(sel, free.p, post.p))

    return [Block(grid, bcs)], [], init


_BUMP_GAS = GasModel(gamma=1.4, prandtl=0.72, reynolds=8000.0, mach_ref=1.4)
_BUMP_FREE = (1.0, 1.0, 0.0, 1.0 / (1.4 * 1.4 ** 2))


def _build_bump(spec: CaseSpec):
    grid = bump_channel(spec.nx, spec.ny, first_cell=0.2 / spec.ny)
    i_le = int(np.searchsorted(grid.xc[:, 0], 1.0))
    bcs = BlockBoundaries.uniform(grid, imin=Inflow(_BUMP_FREE),
                                  imax=Outflow(), jmax=SlipWall())
    bcs.jmin = [Segment(0, i_le, Symmetry()),
                Segment(i_le, grid.ni, NoSlipWall())]

    def init(x, y):
        shp = np.broadcast(x, y).shape
        return tuple(np.full(shp, c) for c in _BUMP_FREE)

    return [Block(grid, bcs)], [], init


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


_CASES_2D = [
    CaseSpec(name="oblique-reflection",
             description="Mach 2.9 oblique shock reflecting off a flat wall",
             dim=2, build=_build_reflection, scheme="movers-plus", order=2,
             cfl=0.4, nx=120, ny=40, residual_tol=1e-12, max_iters=100000),
    CaseSpec(name="ramp",
             description="Mach 2 flow over a 15 deg compression ramp in a channel",
             dim=2, build=_build_ramp, order=2, cfl=0.4, nx=120, ny=40,
             residual_tol=1e-12, max_iters=100000),
    CaseSpec(name="slip-flow",
             description="Mach 3 stream slipping over a Mach 2 stream",
             dim=2, build=_build_slip_flow, order=2, cfl=0.4, nx=100, ny=100,
             residual_tol=1e-12, max_iters=100000),
    CaseSpec(name="half-cylinder",
             description="Mach 6 bow shock on a half cylinder (carbuncle test)",
             dim=2, build=_build_half_cylinder, order=1, cfl=0.4,
             nx=240, ny=80, residual_tol=1e-9, max_iters=30000),
    CaseSpec(name="forward-step",
             description="Mach 3 wind tunnel with a forward-facing step",
             dim=2, build=_build_forward_step, order=2, cfl=0.4,
             nx=240, ny=80, final_time=4.0),
    CaseSpec(name="odd-even",
             description="Mach 6 planar shock in a parity-perturbed duct",
             dim=2, build=_build_odd_even, order=2, cfl=0.4, nx=800, ny=20,
             final_time=100.0),
    CaseSpec(name="dmr",
             description="Mach 10 double Mach reflection over a 30 deg wedge",
             dim=2, build=_build_dmr, order=2, cfl=0.4, nx=240, ny=60,
             final_time=0.3),
    CaseSpec(name="shock-diffraction",
             description="Mach 5.09 shock diffracting around a 90 deg corner",
             dim=2, build=_build_diffraction, order=2, cfl=0.4,
             nx=400, ny=400, final_time=0.1561),
]

_CASES_VISCOUS = [
    CaseSpec(name="viscous-shock-tube",
             description="shock tube with no-slip walls at Re 25000",
             dim=2, build=_build_viscous_tube, gas=_TUBE_GAS, order=2,
             cfl=0.4, nx=141, ny=141, final_time=1.0, viscous=True),
    CaseSpec(name="swbli",
             description="oblique shock impinging on a laminar boundary layer",
             dim=2, build=_build_swbli, gas=_SWBLI_GAS, order=2, cfl=0.4,
             nx=141, ny=201, final_time=10.0, viscous=True),
    CaseSpec(name="bump",
             description="Mach 1.4 viscous flow over a 4 percent circular bump",
             dim=2, build=_build_bump, gas=_BUMP_GAS, order=2, cfl=0.4,
             nx=160, ny=160, residual_tol=1e-8, max_iters=20000,
             viscous=True),
]

REGISTRY = {c.name: c for c in _TORO_CASES + _CASES_2D + _CASES_VISCOUS}


def registry_lookup(name: str) -> CaseSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownCase(
            f"unknown case {name!r}; available: {', '.join(sorted(REGISTRY))}"
        ) from None


def case_names():
    return list(REGISTRY)
