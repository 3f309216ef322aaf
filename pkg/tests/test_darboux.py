import math

import numpy as np
import pytest

from oracles import osc_image_potential
from riccati_forge.checks import intertwining_deviations, rel_dev
from riccati_forge.darboux import (
    TRANSFORM_WINDOW,
    GammaGauge,
    finite_difference_backlund,
    finite_difference_backlund_group,
    gamma_shift,
    generalized_backlund,
    intertwine_pair,
    map_eigenfunction,
    mapped_log_derivative,
    mapped_log_derivative_group,
    schrodinger_backlund,
)
from riccati_forge.errors import (
    EnergyOrderError,
    GaugeError,
    InvalidSolution,
    NotGroundState,
    OrderError,
    ResidualError,
)
from riccati_forge.fnspace import Domain, variable
from riccati_forge.potentials import OscillatorParams
from riccati_forge.reduction import log_derivative
from riccati_forge.verify import norm_squared, schrodinger_residual_sweep

HALF = Domain.half_line()


def _osc_pair(l=0.0, b=2.0):
    p = OscillatorParams(l, b, shifted=True)
    e0, e1 = p.eigenpair(0), p.eigenpair(1)
    return p.potential(), log_derivative(e0.wavefunction), log_derivative(e1.wavefunction), e0.energy, e1.energy


def _common(*fs):
    dom = fs[0].domain
    for f in fs[1:]:
        dom = dom.intersect(f.domain)
    return dom.sample(500, TRANSFORM_WINDOW)


def _example_inputs(l=-1.25, b=2.0):
    x = variable(HALF)
    base = OscillatorParams(l + 1, b, shifted=True)
    inter = OscillatorParams(l, b, shifted=True)
    gamma = (b - (2 * l + 2) * x**-2) ** -0.5
    return base.potential(), base.eigenpair(0).wavefunction, inter.eigenpair(0).wavefunction, gamma


@pytest.mark.parametrize("l", [-1.25, 0.0, 0.7, 2.0])
def test_finite_difference_backlund_residual(l):
    V, w_k, w_l, ek, el = _osc_pair(l)
    rep = finite_difference_backlund(w_k, w_l, ek, el, V)
    assert rep.max_residual <= 1e-5
    xs = _common(rep.new_solution)
    target = V - 2 * w_k.derivative() - el
    assert np.allclose(rep.new_potential_shift(xs), target(xs), rtol=1e-12)


def test_finite_difference_backlund_without_potential():
    V, w_k, w_l, ek, el = _osc_pair()
    a = finite_difference_backlund(w_k, w_l, ek, el, V)
    b = finite_difference_backlund(w_k, w_l, ek, el)
    xs = _common(a.new_solution, b.new_solution)
    assert np.array_equal(a.new_solution(xs), b.new_solution(xs))


def test_finite_difference_backlund_matches_group_route():
    V, w_k, w_l, ek, el = _osc_pair()
    direct = finite_difference_backlund(w_k, w_l, ek, el, V).new_solution
    group = finite_difference_backlund_group(w_k, w_l, ek, el)
    xs = _common(direct, group)
    assert rel_dev(group(xs), direct(xs)) <= 1e-9


def test_energy_order_enforced():
    V, w_k, w_l, ek, el = _osc_pair()
    with pytest.raises(OrderError):
        finite_difference_backlund(w_l, w_k, el, ek, V)
    with pytest.raises(OrderError):
        finite_difference_backlund_group(w_k, w_l, ek, ek)


def test_invalid_input_solution_rejected():
    V, w_k, w_l, ek, el = _osc_pair()
    with pytest.raises(InvalidSolution):
        finite_difference_backlund(w_k, w_l + 0.1, ek, el, V)
    with pytest.raises(InvalidSolution):
        finite_difference_backlund(w_k, w_l, ek, el + 0.5, V)


@pytest.mark.parametrize("l", [0.0, 1.5])
def test_constant_gauge_reduces_to_finite_difference(l):
    V, w_k, w_l, ek, el = _osc_pair(l)
    fd = finite_difference_backlund(w_k, w_l, ek, el, V)
    gen = generalized_backlund(w_l, w_k, 1 / math.sqrt(el - ek), V, el)
    xs = _common(fd.new_solution, gen.new_solution)
    assert rel_dev(gen.new_solution(xs), fd.new_solution(xs)) <= 1e-9
    assert rel_dev(gen.new_potential_shift(xs), fd.new_potential_shift(xs)) <= 1e-9


def test_generalized_backlund_reproduces_closed_image_potential():
    l, b = -1.25, 2.0
    V, phi_w, phi_v, gamma = _example_inputs(l, b)
    rep = generalized_backlund(log_derivative(phi_w), log_derivative(phi_v), gamma, V, 0.0)
    assert rep.max_residual <= 1e-5
    xs = np.geomspace(1e-3, 30, 400)
    ref = osc_image_potential(l, b, xs)
    assert np.max(np.abs(rep.image_potential(xs) - ref) / np.maximum(1, np.abs(ref))) <= 1e-6


def test_generalized_backlund_checks_intermediate_offset():
    V, phi_w, phi_v, gamma = _example_inputs()
    with pytest.raises(InvalidSolution):
        generalized_backlund(log_derivative(phi_w), log_derivative(phi_v), 2 * gamma, V, 0.0)


def test_vanishing_gauge_rejected():
    x = variable(HALF)
    with pytest.raises(GaugeError):
        GammaGauge(x - 1)


def test_gamma_sign_invariance():
    V, phi_w, phi_v, gamma = _example_inputs()
    w, v = log_derivative(phi_w), log_derivative(phi_v)
    plus = generalized_backlund(w, v, GammaGauge(gamma), V, 0.0)
    minus = generalized_backlund(w, v, GammaGauge(gamma).negated(), V, 0.0)
    xs = _common(plus.new_solution, minus.new_solution)
    assert np.max(np.abs(plus.new_solution(xs) - minus.new_solution(xs))) <= 1e-12
    assert np.max(np.abs(plus.new_potential_shift(xs) - minus.new_potential_shift(xs))) <= 1e-12
    s_plus = schrodinger_backlund(phi_w, phi_v, GammaGauge(gamma), V, 0.0)
    s_minus = schrodinger_backlund(phi_w, phi_v, GammaGauge(-gamma), V, 0.0)
    # the eigenfunction flips sign with gamma; its equation does not change
    xs = np.geomspace(1e-3, 30, 400)
    assert np.max(np.abs(s_plus.new_solution(xs) + s_minus.new_solution(xs))) <= 1e-12
    assert np.max(np.abs(s_plus.new_potential_shift(xs) - s_minus.new_potential_shift(xs))) <= 1e-12


def test_schrodinger_form_log_derivative_matches_riccati_form():
    V, phi_w, phi_v, gamma = _example_inputs()
    riccati = generalized_backlund(log_derivative(phi_w), log_derivative(phi_v), gamma, V, 0.0)
    schr = schrodinger_backlund(phi_w, phi_v, gamma, V, 0.0)
    lhs = log_derivative(schr.new_solution)
    xs = _common(lhs, riccati.new_solution)
    assert rel_dev(lhs(xs), riccati.new_solution(xs)) <= 1e-7


def test_schrodinger_output_equals_literal_operator_form():
    V, phi_w, phi_v, gamma = _example_inputs()
    schr = schrodinger_backlund(phi_w, phi_v, gamma, V, 0.0)
    v = log_derivative(phi_v)
    xs = np.geomspace(1e-3, 8, 300)
    literal = gamma(xs) * (-phi_w.derivative()(xs) + v(xs) * phi_w(xs))
    assert np.max(np.abs(schr.new_solution(xs) - literal)) <= 1e-12 * np.max(np.abs(literal))


def test_schrodinger_output_solves_its_equation():
    V, phi_w, phi_v, gamma = _example_inputs(-1.05)
    schr = schrodinger_backlund(phi_w, phi_v, gamma, V, 0.0)
    assert schr.max_residual <= 1e-5
    sweep = schrodinger_residual_sweep(schr.new_potential_shift, 0.0, schr.new_solution, 500, TRANSFORM_WINDOW)
    assert sweep.max_rel == pytest.approx(schr.max_residual, rel=1e-12)


def test_identical_inputs_rejected():
    V, phi_w, _, gamma = _example_inputs()
    with pytest.raises(InvalidSolution):
        schrodinger_backlund(phi_w, phi_w, gamma, V, 0.0)


def test_gamma_shift_formula():
    V, phi_w, phi_v, gamma = _example_inputs()
    v = log_derivative(phi_v)
    g = GammaGauge(gamma)
    xs = np.linspace(0.1, 5, 50)
    lg = gamma.derivative() / gamma
    expected = V - 2 * (lg * v + v.derivative()) + gamma.derivative().derivative() / gamma
    assert rel_dev(gamma_shift(V, v, g, 0.0)(xs), expected(xs)) <= 1e-12


def test_tight_threshold_fails_loudly(monkeypatch):
    monkeypatch.setenv("RICCATI_FORGE_SEED_TOL", "1e-14")
    V, w_k, w_l, ek, el = _osc_pair()
    with pytest.raises(ResidualError) as info:
        finite_difference_backlund(w_k, w_l, ek, el, V)
    assert info.value.report is not None
    assert info.value.report.max_residual > 1e-14


def test_ground_state_partner_is_shape_invariant():
    p = OscillatorParams(0.0, 2.0, shifted=True)
    V1, data = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, 0.0)
    xs = np.linspace(0.05, 6, 200)
    assert np.allclose(data.superpotential(xs), 1 / xs - xs, rtol=1e-12)
    # V1 = x^2 + 2/x^2 - 1, the l = 1 member up to the constant 2b = 4
    partner = OscillatorParams(1.0, 2.0, shifted=True).potential()
    assert np.allclose(V1(xs), partner(xs) + 4.0, rtol=1e-10)


def test_unshifted_partner_against_next_family_member():
    for l in (0.0, 0.5, 2.0):
        p = OscillatorParams(l, 2.0)
        V1, _ = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, p.energy(0))
        shifted_next = OscillatorParams(l + 1, 2.0).potential()
        xs = np.geomspace(1e-2, 20, 300)
        dev = np.abs(V1(xs) - shifted_next(xs) - 2.0) / np.maximum(1, np.abs(shifted_next(xs)))
        assert np.max(dev) <= 1e-6


def test_factorization_reproduces_hamiltonian():
    p = OscillatorParams(0.0, 2.0)
    V0, E0 = p.potential(), p.energy(0)
    _, data = intertwine_pair(V0, p.eigenpair(0).wavefunction, E0)
    W = data.superpotential
    xs = np.linspace(0.1, 5, 100)
    for k in (1, 2):
        phi = p.eigenpair(k).wavefunction
        # (-d/dx - W)(d/dx - W) phi + E0 phi
        A_phi = phi.derivative() - W * phi
        lhs = -(A_phi.derivative()) - W * A_phi + E0 * phi
        rhs = -phi.derivative().derivative() + V0 * phi
        assert np.max(np.abs(lhs(xs) - rhs(xs))) <= 1e-6 * np.max(np.abs(rhs(xs)) + 1)


def test_reciprocal_ground_state_in_partner():
    p = OscillatorParams(0.0, 2.0)
    V1, _ = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, p.energy(0))
    psi = 1 / p.eigenpair(0).wavefunction
    sweep = schrodinger_residual_sweep(V1, p.energy(0), psi, 500, (1e-2, 5))
    assert sweep.max_rel <= 1e-5


def test_nodal_ground_state_rejected():
    p = OscillatorParams(0.0, 2.0)
    with pytest.raises(NotGroundState):
        intertwine_pair(p.potential(), p.eigenpair(1).wavefunction, p.energy(1))


def test_mapped_state_unit_norm():
    p = OscillatorParams(0.0, 2.0)
    _, data = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, p.energy(0))
    psi1 = map_eigenfunction(data, p.eigenpair(1).wavefunction, p.energy(1))
    assert norm_squared(psi1) == pytest.approx(1.0, abs=1e-4)


def test_mapping_requires_higher_energy():
    p = OscillatorParams(0.0, 2.0)
    _, data = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, p.energy(0))
    with pytest.raises(EnergyOrderError):
        map_eigenfunction(data, p.eigenpair(0).wavefunction, p.energy(0))
    with pytest.raises(EnergyOrderError):
        mapped_log_derivative_group(data, log_derivative(p.eigenpair(0).wavefunction), p.energy(0))


def test_mapped_log_derivative_routes_agree():
    p = OscillatorParams(0.0, 2.0)
    _, data = intertwine_pair(p.potential(), p.eigenpair(0).wavefunction, p.energy(0))
    pair = p.eigenpair(2)
    w_n = log_derivative(pair.wavefunction)
    formula = mapped_log_derivative(data, w_n, pair.energy)
    group = mapped_log_derivative_group(data, w_n, pair.energy)
    direct = log_derivative(map_eigenfunction(data, pair.wavefunction, pair.energy))
    xs = _common(formula, group, direct)
    assert rel_dev(direct(xs), formula(xs)) <= 1e-6
    assert rel_dev(group(xs), formula(xs)) <= 1e-6


def test_intertwining_suite():
    dev = intertwining_deviations(OscillatorParams(0.0, 2.0), kmax=4)
    assert dev["residual"] <= 1e-5
    assert dev["gram"] <= 2e-4
    assert dev["log_derivative"] <= 1e-6
    assert dev["group_form"] <= 1e-6
