"""Command-line surface: run, sweep, oracle, list, bench.

Exit codes: 0 clean, 2 diverged, 3 non-physical state, 4 configuration
error (including unknown cases and bad flags).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .cases import case_names, registry_lookup
from .errors import ConfigError, SolverError, UnknownCase
from .output import output_root, write_field_1d
from .riemann import sample_profile
from .schemes import SCHEME_IDS

EXIT_CONFIG = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; 2 means "diverged" here, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _build_parser():
    p = _Parser(prog="hugoniot",
                description="finite-volume compressible-flow benchmark kit")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one benchmark case")
    run.add_argument("--case", required=True)
    run.add_argument("--scheme", default=None, choices=sorted(SCHEME_IDS))
    run.add_argument("--order", type=int, default=None, choices=(1, 2))
    run.add_argument("--nx", type=int, default=None)
    run.add_argument("--ny", type=int, default=None)
    run.add_argument("--cfl", type=float, default=None)
    run.add_argument("--tmax", type=float, default=None)
    run.add_argument("--max-iters", type=int, default=None)
    run.add_argument("--tol", type=float, default=None,
                     help="steady-mode relative residual tolerance")
    run.add_argument("--integrator", default=None, choices=("euler1", "rk3"))
    run.add_argument("--limiter", default=None, choices=("minmod", "vanleer"))
    run.add_argument("--movers-lambda-min", default="interface",
                     choices=("interface", "zero"))
    run.add_argument("--out", default=None, help="output directory root")

    sw = sub.add_parser("sweep", help="run a cross product from a config file")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", default=None)

    orc = sub.add_parser("oracle", help="write the exact 1D solution")
    orc.add_argument("--case", required=True)
    orc.add_argument("--time", type=float, required=True)
    orc.add_argument("--out", required=True, help="output file")
    orc.add_argument("--nx", type=int, default=100)

    sub.add_parser("list", help="list the registered benchmark cases")

    be = sub.add_parser("bench", help="compare numba and numpy backends")
    be.add_argument("--case", default="toro3")
    be.add_argument("--nx", type=int, default=400)
    be.add_argument("--ny", type=int, default=None)
    be.add_argument("--order", type=int, default=2, choices=(1, 2))
    be.add_argument("--evals", type=int, default=20)
    return p


def _cmd_run(args) -> int:
    from .runner import run_case

    overrides = {}
    for key, val in (("scheme", args.scheme), ("order", args.order),
                     ("nx", args.nx), ("ny", args.ny), ("cfl", args.cfl),
                     ("max_iters", args.max_iters)):
        if val is not None:
            overrides[key] = val
    if args.tmax is not None:
        overrides["final_time"] = args.tmax
    if args.tol is not None:
        overrides["residual_tol"] = args.tol
    out_dir = output_root(args.out)
    res = run_case(args.case, out_dir=out_dir, integrator=args.integrator,
                   movers_lambda_min=args.movers_lambda_min,
                   limiter=args.limiter or "minmod", **overrides)
    spec = res.spec
    print(f"{spec.name} scheme={spec.scheme} order={spec.order} "
          f"grid={spec.nx}x{spec.ny}: {res.status} "
          f"steps={res.steps} t={res.time:.6g} wall={res.wall_time:.2f}s")
    if res.message:
        print(f"  {res.message}")
    if res.report is not None:
        print("  L1(rho) = %.6e  Linf(rho) = %.6e"
              % (res.report.l1["rho"], res.report.linf["rho"]))
    if res.out_dir:
        print(f"  outputs in {res.out_dir}")
    return res.exit_code


def _cmd_sweep(args) -> int:
    from .config import load_sweep_config
    from .runner import sweep

    kwargs, overrides = load_sweep_config(args.config)
    out_dir = output_root(args.out)
    rows = sweep(out_dir=out_dir, **kwargs, **overrides)
    width = max(len(r["case"]) for r in rows) + 2
    for r in rows:
        l1 = "-" if r["l1_rho"] is None else f"{r['l1_rho']:.4e}"
        print(f"{r['case']:<{width}} {r['scheme']:<12} {r['order']}O "
              f"{r['nx']}x{r['ny']:<6} {r['status']:<14} L1(rho)={l1}")
    print(f"summary in {os.path.join(out_dir, 'sweep_summary.txt')}")
    return 0


def _cmd_oracle(args) -> int:
    spec = registry_lookup(args.case)
    fan = spec.riemann_fan()
    if fan is None:
        raise ConfigError(f"case {args.case!r} has no 1D exact solution")
    x = np.linspace(0.0, spec.domain_length, 2 * args.nx + 1)[1::2]
    W = sample_profile(fan, x, args.time, spec.x0)
    write_field_1d(args.out, f"{args.case}-oracle", "exact", 0, args.time,
                   x, W, spec.gas.gamma)
    print(f"wrote {args.out}")
    return 0


def _cmd_list(_args) -> int:
    width = max(len(n) for n in case_names()) + 2
    for name in case_names():
        spec = registry_lookup(name)
        kind = "steady" if spec.final_time is None else f"t={spec.final_time:g}"
        visc = " viscous" if spec.gas.viscous else ""
        print(f"{name:<{width}} {spec.nx}x{spec.ny:<5} {kind:<10}{visc} "
              f"- {spec.description}")
    return 0


def _cmd_bench(args) -> int:
    from .benchmark import run_benchmark

    rows = run_benchmark(case=args.case, nx=args.nx, ny=args.ny,
                         order=args.order, evals=args.evals)
    for line in rows:
        print(line)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "sweep": _cmd_sweep, "oracle": _cmd_oracle,
                "list": _cmd_list, "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except (ConfigError, UnknownCase, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
