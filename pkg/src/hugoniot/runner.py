"""Run orchestration: materialize a case, march it, measure, emit files."""

from __future__ import annotations

import os
import time as _time
from dataclasses import dataclass, field

import numpy as np

from .cases import CaseSpec, registry_lookup
from .errors import Diverged, GridMismatch, NonPhysicalState
from .gas import cons_to_prim_array
from .output import write_field_1d, write_field_2d, write_history
from .reconstruction import ReconstructionConfig
from .riemann import sample_profile
from .schemes import SchemeConfig
from .solver import Domain
from .timestepping import MarchConfig, drive

PRIM_VARS = ("rho", "u", "v", "p")


@dataclass
class ErrorReport:
    """Error norms of a run against the exact-solution oracle."""

    l1: dict = field(default_factory=dict)
    l2: dict = field(default_factory=dict)
    linf: dict = field(default_factory=dict)
    shock_position_error: float | None = None  # in cells
    wall_time: float = 0.0

    def format(self):
        lines = ["var l1 l2 linf"]
        for v in self.l1:
            lines.append(f"{v} {self.l1[v]:.6e} {self.l2[v]:.6e} {self.linf[v]:.6e}")
        if self.shock_position_error is not None:
            lines.append(f"shock_position_error_cells {self.shock_position_error:.3f}")
        lines.append(f"wall_time_s {self.wall_time:.3f}")
        return "\n".join(lines) + "\n"


def error_norms(numerical: np.ndarray, oracle: np.ndarray,
                volumes: np.ndarray, variables=("rho", "u", "p")) -> ErrorReport:
    """Volume-weighted L1/L2/Linf of numerical minus oracle primitives.

    Both fields are (n, 4) primitive arrays on the same grid; volume
    weights normalize by the total volume.
    """
    if numerical.shape != oracle.shape or len(volumes) != len(numerical):
        raise GridMismatch("fields are not on the same grid")
    rep = ErrorReport()
    vtot = float(volumes.sum())
    for var in variables:
        k = PRIM_VARS.index(var)
        diff = np.abs(numerical[:, k] - oracle[:, k])
        rep.l1[var] = float((diff * volumes).sum() / vtot)
        rep.l2[var] = float(np.sqrt((diff ** 2 * volumes).sum() / vtot))
        rep.linf[var] = float(diff.max())
    return rep


def shock_position_error(x: np.ndarray, rho: np.ndarray, fan, x0: float,
                         t: float, window: int = 10) -> float | None:
    """Cell distance between the steepest density gradient near each oracle
    shock and the oracle shock position; None when the fan has no shock."""
    speeds = fan.shock_speeds()
    if not speeds or t <= 0.0:
        return None
    dx = float(np.mean(np.diff(x)))
    xf = 0.5 * (x[:-1] + x[1:])
    grad = np.abs(np.diff(rho))
    worst = 0.0
    for s in speeds:
        xs = x0 + s * t
        mask = np.abs(xf - xs) <= window * dx
        if not mask.any():
            return None
        k = np.argmax(np.where(mask, grad, -1.0))
        worst = max(worst, abs(xf[k] - xs) / dx)
    return worst


@dataclass
class RunResult:
    spec: CaseSpec
    status: str            # completed | diverged | non-physical
    message: str
    domain: Domain
    state: list
    time: float
    steps: int
    history: list
    converged: bool
    report: ErrorReport | None
    out_dir: str | None
    wall_time: float

    @property
    def exit_code(self) -> int:
        return {"completed": 0, "diverged": 2, "non-physical": 3}[self.status]


def build_domain(spec: CaseSpec, movers_lambda_min="interface",
                 limiter="minmod"):
    blocks, links, init = spec.build(spec)
    domain = Domain(
        blocks, links, gas=spec.gas,
        scheme=SchemeConfig(spec.scheme, movers_lambda_min=movers_lambda_min),
        recon=ReconstructionConfig(order=spec.order, limiter=limiter))
    return domain, domain.initialize(init)


def march_config(spec: CaseSpec, integrator=None, output_times=None) -> MarchConfig:
    if integrator is None:
        integrator = "rk3" if spec.order == 2 else "euler1"
    if spec.final_time is not None:
        return MarchConfig(integrator=integrator, cfl=spec.cfl,
                           final_time=spec.final_time,
                           output_times=tuple(output_times or spec.output_times))
    return MarchConfig(integrator=integrator, cfl=spec.cfl,
                       residual_tol=spec.residual_tol, max_iters=spec.max_iters)


def run_case(spec_or_name, out_dir=None, integrator=None,
             movers_lambda_min="interface", limiter="minmod",
             write_outputs=True, **overrides) -> RunResult:
    """Materialize, march and post-process one case.

    Keyword overrides (nx, ny, scheme, order, cfl, final_time, ...) patch
    the registered spec. Outputs land in out_dir/<case>_<scheme>_<order>O/.
    """
    spec = (registry_lookup(spec_or_name) if isinstance(spec_or_name, str)
            else spec_or_name)
    spec = spec.with_overrides(**overrides)
    domain, state = build_domain(spec, movers_lambda_min, limiter)
    cfg = march_config(spec, integrator)

    run_dir = None
    if write_outputs and out_dir is not None:
        run_dir = os.path.join(
            out_dir, f"{spec.name}_{spec.scheme}_{spec.order}O_{spec.nx}x{spec.ny}")
        os.makedirs(run_dir, exist_ok=True)

    def dump(st, t, tag="final"):
        if run_dir is None:
            return
        name = f"field_{tag}.dat" if tag == "final" else f"field_t{t:.6f}.dat"
        path = os.path.join(run_dir, name)
        gamma = spec.gas.gamma
        if spec.dim == 1:
            W = cons_to_prim_array(st[0], gamma, check=False)[:, 0, :]
            x = domain.blocks[0].grid.xc[:, 0]
            write_field_1d(path, spec.name, spec.scheme, spec.order, t, x, W, gamma)
        else:
            blocks = []
            for k, b in enumerate(domain.blocks):
                W = cons_to_prim_array(st[k], gamma, check=False)
                blocks.append((b.grid.xc, b.grid.yc, W))
            write_field_2d(path, spec.name, spec.scheme, spec.order, t, blocks, gamma)

    t_start = _time.perf_counter()
    status, message = "completed", ""
    result = None
    try:
        result = drive(domain, state, cfg,
                       on_output=(lambda st, t: dump(st, t, tag=f"{t:.6f}"))
                       if cfg.output_times else None)
    except Diverged as err:
        status, message = "diverged", str(err)
    except NonPhysicalState as err:
        status, message = "non-physical", str(err)
    wall = _time.perf_counter() - t_start

    if result is None:
        return RunResult(spec, status, message, domain, state, 0.0, 0, [],
                         False, None, run_dir, wall)

    report = None
    if spec.dim == 1:
        W = cons_to_prim_array(result.state[0], spec.gas.gamma, check=False)[:, 0, :]
        assert np.all(W[:, 2] == 0.0), "1D run developed transverse velocity"
        fan = spec.riemann_fan()
        if fan is not None and not cfg.steady and result.time > 0.0:
            x = domain.blocks[0].grid.xc[:, 0]
            oracle = sample_profile(fan, x, result.time, spec.x0)
            vols = domain.blocks[0].grid.volume[:, 0]
            report = error_norms(W, oracle, vols)
            report.shock_position_error = shock_position_error(
                x, W[:, 0], fan, spec.x0, result.time)
            report.wall_time = wall

    dump(result.state, result.time)
    if run_dir is not None:
        if cfg.steady:
            write_history(os.path.join(run_dir, "residual_history.dat"),
                          result.history)
        with open(os.path.join(run_dir, "report.txt"), "w") as fh:
            fh.write(f"case={spec.name} scheme={spec.scheme} order={spec.order}\n")
            fh.write(f"status={status} steps={result.steps} "
                     f"time={result.time:.8e} converged={result.converged}\n")
            if report is not None:
                fh.write(report.format())

    return RunResult(spec, status, message, domain, result.state, result.time,
                     result.steps, result.history, result.converged, report,
                     run_dir, wall)


def sweep(case_names, schemes, orders, grids=None, out_dir=None,
          **overrides):
    """Cross product of cases x schemes x orders (x grid sizes).

    Individual failures are recorded in the rows and the sweep continues.
    Returns the row list; a text summary is written when out_dir is given.
    """
    rows = []
    for name in case_names:
        base = registry_lookup(name)
        sizes = grids if grids else [(base.nx, base.ny)]
        for nx, ny in sizes:
            for scheme in schemes:
                for order in orders:
                    try:
                        res = run_case(name, out_dir=out_dir, nx=nx, ny=ny,
                                       scheme=scheme, order=order, **overrides)
                        status = res.status
                        l1 = (res.report.l1.get("rho") if res.report else None)
                        wall = res.wall_time
                    except Exception as err:  # config errors etc.
                        status, l1, wall = f"error: {err}", None, 0.0
                    rows.append({"case": name, "scheme": scheme, "order": order,
                                 "nx": nx, "ny": ny, "status": status,
                                 "l1_rho": l1, "wall_time": wall})
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "sweep_summary.txt"), "w") as fh:
            fh.write("case scheme order nx ny status l1_rho wall_time_s\n")
            for r in rows:
                l1 = "-" if r["l1_rho"] is None else f"{r['l1_rho']:.6e}"
                fh.write(f"{r['case']} {r['scheme']} {r['order']} {r['nx']} "
                         f"{r['ny']} {r['status']} {l1} {r['wall_time']:.2f}\n")
    return rows
