"""Piecewise-linear MUSCL reconstruction of face states from cell averages.

Reconstruction acts on primitive variables, dimension by dimension along
grid lines. Order 1 returns the cell value on both faces; order 2 adds a
limited slope. Cells whose reconstructed density or pressure would turn
non-positive silently fall back to the flat value (the solver kernels
count those events in their diagnostics).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LIMITER_IDS = {"minmod": 0, "vanleer": 1}


@dataclass(frozen=True)
class ReconstructionConfig:
    order: int = 1
    limiter: str = "minmod"
    variable_set: str = "primitive"

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {self.order}")
        if self.limiter not in LIMITER_IDS:
            raise ValueError(
                f"unknown limiter {self.limiter!r}; expected one of {sorted(LIMITER_IDS)}"
            )
        if self.variable_set != "primitive":
            raise ValueError("only primitive-variable reconstruction is supported")

    @property
    def limiter_id(self) -> int:
        return LIMITER_IDS[self.limiter]


def minmod(a, b):
    """0 when the slopes disagree in sign, else the smaller-magnitude one."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.where(a * b <= 0.0, 0.0, np.where(np.abs(a) < np.abs(b), a, b))
    if out.ndim == 0:
        return float(out)
    return out


def vanleer(a, b):
    """Harmonic-mean slope 2ab/(a+b) when the signs agree, else 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    prod = a * b
    denom = np.where(a + b == 0.0, 1.0, a + b)
    out = np.where(prod <= 0.0, 0.0, 2.0 * prod / denom)
    if out.ndim == 0:
        return float(out)
    return out


def limited_slope(a, b, limiter: str = "minmod"):
    if limiter == "minmod":
        return minmod(a, b)
    return vanleer(a, b)


def reconstruct_faces(stencil, cfg: ReconstructionConfig):
    """Face values of the middle cell of a three-cell stencil.

    `stencil` is a (3, nvar) array (or a sequence of three state arrays);
    returns (left_face, right_face) for the middle cell, i.e. the values at
    cell - dx/2 and cell + dx/2. Slopes that would make density or
    pressure non-positive are zeroed.
    """
    scalar = np.ndim(stencil[0]) == 0
    w0, w1, w2 = (np.atleast_1d(np.asarray(s, dtype=float)) for s in stencil)
    if cfg.order == 1:
        lo, hi = w1.copy(), w1.copy()
    else:
        slope = limited_slope(w1 - w0, w2 - w1, cfg.limiter)
        lo = w1 - 0.5 * slope
        hi = w1 + 0.5 * slope
        if lo[0] <= 0.0 or hi[0] <= 0.0 or lo[-1] <= 0.0 or hi[-1] <= 0.0:
            lo, hi = w1.copy(), w1.copy()
    if scalar:
        return float(lo[0]), float(hi[0])
    return lo, hi
