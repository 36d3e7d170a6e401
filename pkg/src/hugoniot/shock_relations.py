"""Normal, moving and oblique shock jump relations.

Small helpers used by the case registry (steady-shock initial data,
moving-shock initializers, oblique post-shock boundary states) and by the
tests as an independent check on tabulated states.
"""

from __future__ import annotations

import math

from .gas import GasModel, PrimitiveState, sound_speed


def normal_shock_ratios(mach: float, gamma: float):
    """(p2/p1, rho2/rho1) across a normal shock with upstream normal Mach."""
    if mach <= 1.0:
        raise ValueError(f"upstream normal Mach must exceed 1, got {mach}")
    m2 = mach * mach
    p_ratio = (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0)
    rho_ratio = ((gamma + 1.0) * m2) / ((gamma - 1.0) * m2 + 2.0)
    return p_ratio, rho_ratio


def steady_shock_pair(mach: float, g: GasModel):
    """Left/right states of a stationary normal shock at upstream Mach `mach`.

    The upstream state is normalized to rho = 1, u = 1 (so p = 1/(gamma*M^2)
    and the upstream sound speed is 1/M); the downstream state follows from
    the jump relations with mass flux preserved.
    """
    gamma = g.gamma
    p1 = 1.0 / (gamma * mach * mach)
    left = PrimitiveState(1.0, 1.0, 0.0, p1)
    p_ratio, rho_ratio = normal_shock_ratios(mach, gamma)
    right = PrimitiveState(rho_ratio, 1.0 / rho_ratio, 0.0, p1 * p_ratio)
    return left, right


def moving_shock_post_state(pre: PrimitiveState, shock_mach: float, g: GasModel,
                            direction: int = 1):
    """State behind a shock advancing into `pre` along +-x.

    `shock_mach` is the shock Mach number relative to the pre-shock gas;
    returns (post_state, shock_speed) in the lab frame.
    """
    a1 = sound_speed(pre, g)
    speed = pre.u + direction * shock_mach * a1
    p_ratio, rho_ratio = normal_shock_ratios(shock_mach, g.gamma)
    # Transform to the shock frame, apply the jump, transform back.
    u1_rel = pre.u - speed
    u2_rel = u1_rel / rho_ratio
    post = PrimitiveState(pre.rho * rho_ratio, speed + u2_rel, pre.v,
                          pre.p * p_ratio)
    return post, speed


def oblique_shock_post_state(pre: PrimitiveState, beta: float, g: GasModel):
    """State behind a steady oblique shock of angle `beta` (radians).

    The incoming flow is along +x; the shock plane makes angle beta with
    the x axis and descends from the upper left, so the flow is deflected
    toward -y. Tangential velocity is preserved, the normal component
    jumps by the normal-shock relations.
    """
    if pre.v != 0.0:
        raise ValueError("oblique relations assume the incoming flow is along +x")
    a1 = sound_speed(pre, g)
    mach_n = pre.u * math.sin(beta) / a1
    p_ratio, rho_ratio = normal_shock_ratios(mach_n, g.gamma)
    v_t = pre.u * math.cos(beta)
    v_n = pre.u * math.sin(beta) / rho_ratio
    u2 = v_t * math.cos(beta) + v_n * math.sin(beta)
    v2 = -v_t * math.sin(beta) + v_n * math.cos(beta)
    return PrimitiveState(pre.rho * rho_ratio, u2, v2, pre.p * p_ratio)
