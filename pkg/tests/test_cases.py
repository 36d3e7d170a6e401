import math

import numpy as np
import pytest

from hugoniot.cases import REGISTRY, CaseSpec, case_names, registry_lookup
from hugoniot.errors import UnknownCase
from hugoniot.gas import cons_to_prim_array
from hugoniot.runner import build_domain
from hugoniot.timestepping import step_euler

TORO_NAMES = [f"toro{k}" for k in range(1, 10)]
EULER_2D = ["oblique-reflection", "ramp", "slip-flow", "half-cylinder",
            "forward-step", "odd-even", "dmr", "shock-diffraction"]
VISCOUS = ["viscous-shock-tube", "swbli", "bump"]


def test_registry_is_complete():
    assert set(case_names()) == set(TORO_NAMES + EULER_2D + VISCOUS)
    assert len(REGISTRY) == 20


def test_unknown_case_raises():
    with pytest.raises(UnknownCase):
        registry_lookup("toro10")


def test_toro1_states():
    spec = registry_lookup("toro1")
    assert (spec.left.rho, spec.left.u, spec.left.p) == (1.0, 0.0, 1.0)
    assert (spec.right.rho, spec.right.u, spec.right.p) == (0.125, 0.0, 0.1)
    assert spec.cfl == 0.1 and spec.nx == 100


def test_toro5_states():
    spec = registry_lookup("toro5")
    assert (spec.left.rho, spec.left.u, spec.left.p) == (5.99924, 19.5975, 460.894)
    assert (spec.right.rho, spec.right.u, spec.right.p) == (5.99242, -6.19633, 46.0950)


def test_toro6_is_exact_stationary_shock():
    from hugoniot.gas import euler_flux_normal, primitive_to_conserved
    spec = registry_lookup("toro6")
    fl = euler_flux_normal(spec.left, (1.0, 0.0), spec.gas).as_array()
    fr = euler_flux_normal(spec.right, (1.0, 0.0), spec.gas).as_array()
    assert np.abs(fr - fl).max() < 1e-12
    # Upstream moves at Mach 2.
    a = math.sqrt(spec.gas.gamma * spec.left.p / spec.left.rho)
    assert spec.left.u / a == pytest.approx(2.0, rel=1e-12)


def test_slip_flow_initial_states():
    spec = registry_lookup("slip-flow")
    blocks, links, init = spec.build(spec)
    assert spec.nx == spec.ny == 100
    rho, u, v, p = init(np.array([0.5, 0.5]), np.array([0.25, 0.75]))
    assert np.array_equal(rho, [1.4, 1.4])
    assert np.array_equal(u, [2.0, 3.0])
    assert np.array_equal(p, [1.0, 1.0])


def test_oblique_reflection_top_state():
    from hugoniot.cases import _REFLECTION_TOP
    assert _REFLECTION_TOP == (1.69997, 2.61934, -0.50633, 1.52819)


def test_1d_final_times_keep_waves_in_domain():
    # Measured waves stay inside [0, 1] at the final time (toro9's left
    # rarefaction is allowed to leave through the outflow end by design).
    for name in ("toro1", "toro2", "toro3", "toro4", "toro5"):
        spec = registry_lookup(name)
        fan = spec.riemann_fan()
        t = spec.final_time
        assert spec.x0 + fan.leftmost_speed * t > 0.0, name
        assert spec.x0 + fan.rightmost_speed * t < 1.0, name
    spec = registry_lookup("toro8")
    assert 0.0 < spec.x0 + 0.1 * spec.final_time < 1.0
    spec = registry_lookup("toro9")
    fan = spec.riemann_fan()
    assert 0.0 < spec.x0 + fan.contact_speed() * spec.final_time < 1.0
    assert 0.0 < spec.x0 + fan.rightmost_speed * spec.final_time < 1.0


def test_viscous_cases_carry_paper_parameters():
    tube = registry_lookup("viscous-shock-tube")
    assert tube.gas.reynolds == 25000.0 and tube.gas.prandtl == 0.72
    assert tube.nx == tube.ny == 141
    swbli = registry_lookup("swbli")
    assert swbli.gas.reynolds == 1e5 and swbli.gas.mach_ref == 2.0
    bump = registry_lookup("bump")
    assert bump.gas.reynolds == 8000.0 and bump.gas.mach_ref == 1.4
    assert bump.nx == bump.ny == 160


def test_grid_defaults_match_benchmark_sizes():
    assert registry_lookup("oblique-reflection").nx == 120
    assert registry_lookup("odd-even").nx == 800
    assert registry_lookup("odd-even").ny == 20
    assert registry_lookup("shock-diffraction").nx == 400
    assert registry_lookup("dmr").final_time == 0.3
    assert registry_lookup("forward-step").final_time == 4.0
    assert registry_lookup("shock-diffraction").final_time == 0.1561
    assert registry_lookup("odd-even").final_time == 100.0


@pytest.mark.parametrize("name", sorted(REGISTRY))
@pytest.mark.parametrize("scheme", ["ricca", "movers-plus"])
def test_dry_run_one_step(name, scheme):
    # Every registered case survives one marching step under both new
    # schemes without producing a non-physical state.
    spec = registry_lookup(name).with_overrides(scheme=scheme)
    domain, state = build_domain(spec)
    dt = domain.timestep(state, spec.cfl)
    assert dt > 0.0
    new_state, _ = step_euler(state, dt, domain.residual, 0.0)
    for k, U in enumerate(new_state):
        cons_to_prim_array(U, spec.gas.gamma)  # raises NonPhysicalState if bad
