"""Timing comparison of the numba and numpy kernel backends.

Runs repeated residual evaluations of one case on each backend, checks
that they agree, and reports the per-evaluation cost and speedup.
"""

from __future__ import annotations

import os
import time

import numpy as np

from . import backend
from .runner import build_domain
from .cases import registry_lookup

_ENV = "HUGONIOT_BACKEND"


def _time_backend(name, domain, state, evals):
    old = os.environ.get(_ENV)
    os.environ[_ENV] = name
    try:
        domain.residual(state, 0.0)  # warm-up / JIT compile
        t0 = time.perf_counter()
        for _ in range(evals):
            R = domain.residual(state, 0.0)
        elapsed = (time.perf_counter() - t0) / evals
    finally:
        if old is None:
            os.environ.pop(_ENV, None)
        else:
            os.environ[_ENV] = old
    return elapsed, R


def run_benchmark(case="toro3", nx=400, ny=None, order=2, evals=20):
    """Returns printable report lines; asserts backend agreement."""
    spec = registry_lookup(case)
    overrides = {"nx": nx}
    if ny is not None:
        overrides["ny"] = ny
    spec = spec.with_overrides(**overrides)
    domain, state = build_domain(spec)

    cells = sum(b.grid.ni * b.grid.nj for b in domain.blocks)
    lines = [f"case={spec.name} grid={spec.nx}x{spec.ny} ({cells} cells) "
             f"order={order} scheme={spec.scheme} evals={evals}"]

    results = {}
    for name in ("numpy", "numba") if backend.HAS_NUMBA else ("numpy",):
        sec, R = _time_backend(name, domain, state, evals)
        results[name] = (sec, R)
        lines.append(f"{name:>6}: {sec * 1e3:9.3f} ms/residual "
                     f"({sec / cells * 1e9:7.1f} ns/cell)")

    if len(results) == 2:
        diff = max(float(np.max(np.abs(ra - rb)))
                   for ra, rb in zip(results["numpy"][1], results["numba"][1]))
        scale = max(float(np.max(np.abs(r))) for r in results["numpy"][1])
        lines.append(f"speedup numba vs numpy: "
                     f"{results['numpy'][0] / results['numba'][0]:.1f}x")
        lines.append(f"max |R_numpy - R_numba| = {diff:.3e} "
                     f"(field scale {scale:.3e})")
        if diff > 1e-10 * max(1.0, scale):
            raise AssertionError("backends disagree beyond tolerance")
    return lines
