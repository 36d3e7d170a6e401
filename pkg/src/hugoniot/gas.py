"""Perfect-gas state algebra, Euler fluxes and wave speeds.

Everything in this module is a pure function of its inputs; the array
variants at the bottom are the bulk versions used by the solver loops.
All quantities are non-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysicalState

# Sea-level Sutherland constant over reference temperature (110.4 K / 288.15 K).
DEFAULT_SUTHERLAND_RATIO = 110.4 / 288.15


@dataclass(frozen=True)
class GasModel:
    """Non-dimensional gas parameters shared by every kernel.

    ``reynolds is None`` marks an inviscid run; ``mach_ref`` and
    ``sutherland_ratio`` only matter once viscous terms are active.
    """

    gamma: float = 1.4
    prandtl: float = 0.72
    reynolds: float | None = None
    mach_ref: float = 1.0
    sutherland_ratio: float = DEFAULT_SUTHERLAND_RATIO

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if not self.prandtl > 0.0:
            raise ValueError(f"prandtl must be positive, got {self.prandtl}")
        if self.reynolds is not None and not self.reynolds > 0.0:
            raise ValueError(f"reynolds must be positive, got {self.reynolds}")
        if self.sutherland_ratio < 0.0:
            raise ValueError("sutherland_ratio must be non-negative")

    @property
    def viscous(self) -> bool:
        return self.reynolds is not None


@dataclass(frozen=True)
class PrimitiveState:
    """Gas state in (rho, u, v, p) form. v is carried even in 1D runs."""

    rho: float
    u: float
    v: float
    p: float

    def __post_init__(self):
        if not (self.rho > 0.0 and self.p > 0.0):
            raise NonPhysicalState(
                f"invalid primitive state rho={self.rho}, p={self.p}"
            )

    @classmethod
    def one_d(cls, rho, u, p):
        return cls(rho, u, 0.0, p)

    @classmethod
    def _unchecked(cls, rho, u, v, p):
        # Escape hatch for vacuum sampling where rho = p = 0 is meaningful.
        s = object.__new__(cls)
        object.__setattr__(s, "rho", rho)
        object.__setattr__(s, "u", u)
        object.__setattr__(s, "v", v)
        object.__setattr__(s, "p", p)
        return s

    def as_array(self):
        return np.array([self.rho, self.u, self.v, self.p])


@dataclass(frozen=True)
class ConservedState:
    """Gas state in (rho, rho*u, rho*v, rho*E) form."""

    mass: float
    momentum_x: float
    momentum_y: float
    energy: float

    def as_array(self):
        return np.array([self.mass, self.momentum_x, self.momentum_y, self.energy])


@dataclass(frozen=True)
class FluxVector:
    """Per-equation flux components, laid out like ConservedState."""

    mass: float
    momentum_x: float
    momentum_y: float
    energy: float

    def as_array(self):
        return np.array([self.mass, self.momentum_x, self.momentum_y, self.energy])


def primitive_to_conserved(s: PrimitiveState, g: GasModel) -> ConservedState:
    """Map (rho, u, v, p) to (rho, rho*u, rho*v, rho*E).

    rho*E = p/(gamma - 1) + rho*(u^2 + v^2)/2.
    """
    rho_e = s.p / (g.gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v)
    return ConservedState(s.rho, s.rho * s.u, s.rho * s.v, rho_e)


def conserved_to_primitive(c: ConservedState, g: GasModel) -> PrimitiveState:
    """Invert primitive_to_conserved.

    Raises NonPhysicalState when mass or the derived pressure is
    non-positive; the marching driver uses that signal as its positivity
    watchdog.
    """
    if not c.mass > 0.0:
        raise NonPhysicalState(f"non-positive density {c.mass}")
    u = c.momentum_x / c.mass
    v = c.momentum_y / c.mass
    p = (g.gamma - 1.0) * (c.energy - 0.5 * (c.momentum_x * u + c.momentum_y * v))
    if not p > 0.0:
        raise NonPhysicalState(f"non-positive pressure {p}")
    return PrimitiveState(c.mass, u, v, p)


def sound_speed(s: PrimitiveState, g: GasModel) -> float:
    """a = sqrt(gamma * p / rho)."""
    return math.sqrt(g.gamma * s.p / s.rho)


def euler_flux_normal(s: PrimitiveState, n, g: GasModel) -> FluxVector:
    """Convective flux projected on the unit normal n = (nx, ny).

    With V_n = u*nx + v*ny the flux reads
    (rho*V_n, rho*u*V_n + p*nx, rho*v*V_n + p*ny, (rho*E + p)*V_n).
    """
    nx, ny = n
    vn = s.u * nx + s.v * ny
    rho_e = s.p / (g.gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v)
    return FluxVector(
        s.rho * vn,
        s.rho * s.u * vn + s.p * nx,
        s.rho * s.v * vn + s.p * ny,
        (rho_e + s.p) * vn,
    )


def max_wave_speed(s: PrimitiveState, n, g: GasModel) -> float:
    """|V_n| + a, the fastest signal speed across a face; used for CFL bounds."""
    nx, ny = n
    return abs(s.u * nx + s.v * ny) + sound_speed(s, g)


def temperature(s: PrimitiveState, g: GasModel) -> float:
    """Non-dimensional temperature from p = rho*T/(gamma*M_ref^2)."""
    return g.gamma * g.mach_ref * g.mach_ref * s.p / s.rho


# ---------------------------------------------------------------------------
# Array versions used by the field solver. Layout: (..., 4) with components
# [rho, u, v, p] for primitives and [rho, rho*u, rho*v, rho*E] for conserved.
# ---------------------------------------------------------------------------


def prim_to_cons_array(W: np.ndarray, gamma: float) -> np.ndarray:
    U = np.empty_like(W)
    rho = W[..., 0]
    u = W[..., 1]
    v = W[..., 2]
    p = W[..., 3]
    U[..., 0] = rho
    U[..., 1] = rho * u
    U[..., 2] = rho * v
    U[..., 3] = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return U


def cons_to_prim_array(U: np.ndarray, gamma: float, out: np.ndarray | None = None,
                       check: bool = True) -> np.ndarray:
    """Bulk conserved -> primitive conversion.

    With check=True the first offending cell index is reported through
    NonPhysicalState so the harness can localize a breakdown.
    """
    W = out if out is not None else np.empty_like(U)
    rho = U[..., 0]
    if check:
        bad = ~(rho > 0.0)
        if bad.any():
            idx = tuple(int(k) for k in np.argwhere(bad)[0])
            raise NonPhysicalState(
                f"non-positive density {rho[idx]}", cell=idx
            )
    inv_rho = 1.0 / rho
    u = U[..., 1] * inv_rho
    v = U[..., 2] * inv_rho
    p = (gamma - 1.0) * (U[..., 3] - 0.5 * (U[..., 1] * u + U[..., 2] * v))
    if check:
        bad = ~(p > 0.0)
        if bad.any():
            idx = tuple(int(k) for k in np.argwhere(bad)[0])
            raise NonPhysicalState(
                f"non-positive pressure {p[idx]}", cell=idx
            )
    W[..., 0] = rho
    W[..., 1] = u
    W[..., 2] = v
    W[..., 3] = p
    return W


def sound_speed_array(W: np.ndarray, gamma: float) -> np.ndarray:
    return np.sqrt(gamma * W[..., 3] / W[..., 0])


def temperature_array(W: np.ndarray, g: GasModel) -> np.ndarray:
    return g.gamma * g.mach_ref * g.mach_ref * W[..., 3] / W[..., 0]
