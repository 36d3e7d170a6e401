import math

import numpy as np
import pytest

from hugoniot.gas import (GasModel, PrimitiveState, euler_flux_normal,
                          primitive_to_conserved)
from hugoniot.schemes import (DiffusionCoefficient, EigenBounds,
                              InterfaceAverages, InterfaceInput, SchemeConfig,
                              assemble_interface_flux, interface_flux,
                              llf_diffusion, movers_alpha,
                              movers_plus_diffusion, ricca_alpha,
                              scheme_diffusion, shock_sensor)
from hugoniot.schemes import DiffusiveFlux
from conftest import random_states

NX = (1.0, 0.0)


def face(left, right, n=NX, gas=GasModel()):
    return InterfaceInput(left, right, n, gas)


SOD = face(PrimitiveState.one_d(1.0, 0.0, 1.0),
           PrimitiveState.one_d(0.125, 0.0, 0.1))
CONTACT = face(PrimitiveState.one_d(1.4, 0.0, 0.4),
               PrimitiveState.one_d(1.0, 0.0, 0.4))


def rotated_du(inp):
    g = inp.gas
    ul = primitive_to_conserved(inp.left, g).as_array()
    ur = primitive_to_conserved(inp.right, g).as_array()
    return ur - ul  # valid for n = (1, 0)


def test_scheme_config_validation():
    with pytest.raises(ValueError):
        SchemeConfig("roe")
    with pytest.raises(ValueError):
        SchemeConfig("ricca", movers_lambda_min="negative")
    assert SchemeConfig("movers-n", movers_lambda_min="zero").zero_lambda_min


def test_interface_averages_sod():
    avg = InterfaceAverages.of(SOD)
    assert avg.rho_i == pytest.approx(0.5625)
    assert avg.p_i == pytest.approx(0.55)
    assert avg.dp_i == pytest.approx(-0.9)
    assert avg.a_i == pytest.approx(math.sqrt(1.4 * 0.55 / 0.5625))


def test_assemble_consistency_with_physical_flux(gas):
    s = PrimitiveState(0.9, 1.2, -0.3, 2.0)
    inp = face(s, s)
    f = assemble_interface_flux(inp, DiffusiveFlux(np.zeros(4)))
    expected = euler_flux_normal(s, NX, gas).as_array()
    assert np.allclose(f, expected, rtol=1e-14, atol=1e-14)


def test_assemble_sod_average():
    f = assemble_interface_flux(SOD, DiffusiveFlux(np.zeros(4)))
    assert np.allclose(f, [0.0, 0.55, 0.0, 0.0], atol=1e-15)


def test_assemble_steady_contact_flux():
    # Both neighbor interfaces of a steady contact carry the same flux
    # under a zero-diffusion scheme, so the residual vanishes.
    d = scheme_diffusion(SchemeConfig("ricca"), CONTACT)
    assert np.all(d.d == 0.0)
    f = assemble_interface_flux(CONTACT, d)
    assert np.allclose(f, [0.0, 0.4, 0.0, 0.0], atol=1e-16)
    uniform = face(CONTACT.left, CONTACT.left)
    f2 = assemble_interface_flux(uniform, scheme_diffusion(SchemeConfig("ricca"), uniform))
    assert np.allclose(f2, [0.0, 0.4, 0.0, 0.0], atol=1e-16)


def test_llf_examples(gas):
    s = PrimitiveState(1.0, 0.4, 0.0, 1.0)
    assert np.all(llf_diffusion(face(s, s)).d == 0.0)

    d = llf_diffusion(SOD).d
    alpha = max(math.sqrt(1.4), math.sqrt(1.4 * 0.1 / 0.125))
    assert alpha == pytest.approx(1.18322, abs=1e-5)
    assert np.allclose(d, 0.5 * alpha * rotated_du(SOD), rtol=1e-13)

    d = llf_diffusion(CONTACT).d
    a_l = math.sqrt(1.4 * 0.4 / 1.4)
    a_r = math.sqrt(1.4 * 0.4 / 1.0)
    assert a_l == pytest.approx(0.63246, abs=1e-5)
    # The contact is smeared by llf: nonzero diffusion from the sound speed.
    assert np.allclose(d, 0.5 * max(a_l, a_r) * rotated_du(CONTACT), rtol=1e-13)
    assert np.abs(d).max() > 0.0


def test_ricca_alpha_examples():
    s = PrimitiveState(1.0, 0.5, 0.0, 1.0)
    coeff = ricca_alpha(face(s, s))
    assert coeff.is_scalar and float(coeff.alpha) == pytest.approx(0.5)

    coeff = ricca_alpha(CONTACT)
    assert float(coeff.alpha) == 0.0

    coeff = ricca_alpha(SOD)
    assert float(coeff.alpha) == pytest.approx(1.17000, abs=1e-5)

    with pytest.raises(ValueError):
        ricca_alpha(SOD, delta=-1.0)


def test_ricca_four_forms_identity():
    # With du = dp = 0 the fluid-speed forms coincide; alpha equals |u|.
    rng = np.random.default_rng(5)
    for _ in range(100):
        u = rng.uniform(-2, 2)
        p = rng.uniform(0.2, 3.0)
        inp = face(PrimitiveState.one_d(rng.uniform(0.1, 3.0), u, p),
                   PrimitiveState.one_d(rng.uniform(0.1, 3.0), u, p))
        alpha = float(ricca_alpha(inp).alpha)
        assert alpha == pytest.approx(abs(u), rel=1e-14, abs=1e-14)
        assert alpha == pytest.approx(0.5 * (abs(u) + abs(u)), rel=1e-14, abs=1e-14)
        assert alpha == pytest.approx(max(abs(u), abs(u)), rel=1e-14, abs=1e-14)


def test_movers_alpha_examples(gas):
    from hugoniot.cases import registry_lookup
    spec = registry_lookup("toro6")
    inp = face(spec.left, spec.right)
    # Stationary shock: dF ~ 0 by the jump conditions. Components with a
    # state jump get ratio ~0, kept there by the zero-min clamp; the
    # momentum jumps are themselves ~0 (mass flux is continuous), so the
    # degeneracy rule fires but the resulting diffusive flux still
    # vanishes and the shock is held exactly.
    coeff = movers_alpha(inp, EigenBounds.of(inp, zero_min=True))
    alphas = coeff.as_vector()
    assert alphas[0] < 1e-10 and alphas[3] < 1e-10
    d = 0.5 * alphas * rotated_du(inp)
    assert np.abs(d).max() < 1e-12

    # Sod interface, energy component: dF=0, dU=-2.25 -> clamps to
    # lambda_min = 0; momentum component: dU=0 -> degenerate -> lambda_max.
    coeff = movers_alpha(SOD).as_vector()
    lmax = max(math.sqrt(1.4), math.sqrt(1.4 * 0.1 / 0.125))
    assert coeff[3] == 0.0
    assert coeff[1] == pytest.approx(lmax, rel=1e-13)
    assert rotated_du(SOD)[3] == pytest.approx(-2.25)


def test_eigen_bounds_validation():
    with pytest.raises(ValueError):
        EigenBounds(2.0, 1.0)
    b = EigenBounds.of(SOD)
    assert b.lambda_min == 0.0  # both sides at rest
    assert b.lambda_max == pytest.approx(1.18322, abs=1e-5)


def test_shock_sensor_examples():
    assert shock_sensor(CONTACT) == 0.0
    assert shock_sensor(SOD) == pytest.approx(0.9 / 1.1, rel=1e-13)
    inp = face(PrimitiveState.one_d(1.0, 0.0, 1.0),
               PrimitiveState.one_d(1.0, 0.0, 3.0))
    assert shock_sensor(inp) == pytest.approx(0.5, rel=1e-14)


def test_movers_plus_examples():
    assert np.all(movers_plus_diffusion(CONTACT).d == 0.0)
    # Sod initial interface: the velocity term and the mass/energy jump
    # terms annihilate; the momentum slot (zero state jump, nonzero flux
    # jump) keeps the sensor-scaled diffusion that stabilizes the first
    # update of strong shock tubes.
    d = movers_plus_diffusion(SOD).d
    phi = 0.9 / 1.1
    assert d[0] == 0.0 and d[2] == 0.0 and d[3] == 0.0
    assert d[1] == pytest.approx(0.5 * phi * 0.9, rel=1e-13)
    s = PrimitiveState(1.0, 1.0, 0.0, 1.0)
    assert np.all(movers_plus_diffusion(face(s, s)).d == 0.0)


def test_consistency_all_schemes(gas):
    rng = np.random.default_rng(17)
    configs = [SchemeConfig(n) for n in ("central", "llf", "ricca",
                                         "movers-n", "movers-plus")]
    for s in random_states(rng, 1000):
        ang = rng.uniform(0, 2 * math.pi)
        inp = face(s, s, (math.cos(ang), math.sin(ang)))
        for cfg in configs:
            assert np.all(scheme_diffusion(cfg, inp).d == 0.0)


def test_conservation_form_symmetry(gas):
    # The flux seen from (L, R, n) equals minus the flux from (R, L, -n).
    rng = np.random.default_rng(23)
    configs = [SchemeConfig(n) for n in ("llf", "ricca", "movers-n",
                                         "movers-plus")]
    states = random_states(rng, 400)
    for left, right in zip(states[::2], states[1::2]):
        ang = rng.uniform(0, 2 * math.pi)
        n = (math.cos(ang), math.sin(ang))
        for cfg in configs:
            f_ab = interface_flux(cfg, face(left, right, n))
            f_ba = interface_flux(cfg, face(right, left, (-n[0], -n[1])))
            scale = max(1.0, np.abs(f_ab).max())
            assert np.allclose(f_ba, -f_ab, rtol=0, atol=1e-12 * scale)


def test_exact_steady_contact_capture_property():
    # Any density jump at rest with equal pressures is left untouched by
    # both contact-capturing schemes, exactly.
    rng = np.random.default_rng(29)
    for _ in range(1000):
        p = rng.uniform(0.1, 5.0)
        inp = face(PrimitiveState.one_d(rng.uniform(0.05, 5.0), 0.0, p),
                   PrimitiveState.one_d(rng.uniform(0.05, 5.0), 0.0, p))
        assert np.all(scheme_diffusion(SchemeConfig("ricca"), inp).d == 0.0)
        assert np.all(scheme_diffusion(SchemeConfig("movers-plus"), inp).d == 0.0)


def test_sonic_point_diffusion():
    # Across any pressure jump ricca keeps alpha >= interface sound speed.
    rng = np.random.default_rng(31)
    for _ in range(300):
        left = PrimitiveState.one_d(rng.uniform(0.1, 3.0), rng.uniform(-2, 2),
                                    rng.uniform(0.1, 3.0))
        right = PrimitiveState.one_d(rng.uniform(0.1, 3.0), rng.uniform(-2, 2),
                                     rng.uniform(0.1, 3.0) + 0.01)
        inp = face(left, right)
        avg = InterfaceAverages.of(inp)
        assert float(ricca_alpha(inp).alpha) >= avg.a_i > 0.0


def test_nonnegative_alpha_and_bounds():
    rng = np.random.default_rng(37)
    states = random_states(rng, 400)
    for left, right in zip(states[::2], states[1::2]):
        inp = face(left, right)
        assert float(ricca_alpha(inp).alpha) >= 0.0
        bounds = EigenBounds.of(inp)
        alphas = movers_alpha(inp, bounds).as_vector()
        assert np.all(alphas >= bounds.lambda_min - 1e-15)
        assert np.all(alphas <= bounds.lambda_max + 1e-15)


def test_diffusion_coefficient_kinds():
    s = DiffusionCoefficient.scalar(0.5)
    assert s.is_scalar and np.all(s.as_vector() == 0.5)
    v = DiffusionCoefficient.per_component([1.0, 2.0, 3.0, 4.0])
    assert not v.is_scalar and v.as_vector()[2] == 3.0
