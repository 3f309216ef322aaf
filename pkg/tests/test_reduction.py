import numpy as np
import pytest

from oracles import osc_potential, osc_wavefunction
from riccati_forge.checks import eigenfunction_round_trip, round_trip_flatness
from riccati_forge.errors import DegenerateInput, DomainError
from riccati_forge.fnspace import Domain, constant, exp, make_function, variable
from riccati_forge.potentials import CoulombParams, OscillatorParams
from riccati_forge.reduction import (
    SchrodingerProblem,
    SignConvention,
    log_derivative,
    reconstruct_wavefunction,
    schrodinger_to_riccati,
    second_order_residual,
)
from riccati_forge.riccati import RiccatiEquation, residual, residual_summary

HALF = Domain.half_line()
XS = np.linspace(0.05, 6.0, 300)


def _ground():
    # x e^{-x^2/2} solves -phi'' + (x^2 - 3) phi = 0
    return make_function(lambda x: osc_wavefunction(0.0, 2.0, 0, x), None, HALF)


def test_log_derivative_of_exponential():
    w = log_derivative(exp(variable()))
    assert np.allclose(w(np.array([-3.0, 0.0, 2.5])), 1.0, rtol=1e-14)


def test_log_derivative_of_ground_state():
    x = variable(HALF)
    w = log_derivative(x * exp(-0.5 * x * x))
    assert np.allclose(w(XS), 1 / XS - XS, rtol=1e-13)


def test_log_derivative_by_differences_of_ground_state():
    w = log_derivative(_ground())
    assert np.allclose(w(XS), 1 / XS - XS, rtol=1e-7, atol=1e-8)


def test_minus_convention_negates():
    phi = OscillatorParams(0.5, 1.0).eigenpair(2).wavefunction
    plus = log_derivative(phi, SignConvention.PLUS)
    minus = log_derivative(phi, SignConvention.MINUS)
    xs = plus.domain.sample(200, (0.05, 6))
    assert np.array_equal(minus(xs), -plus(xs))


def test_log_derivative_restricted_to_sign_intervals():
    phi = OscillatorParams(0.0, 2.0).eigenpair(2).wavefunction
    assert len(log_derivative(phi).domain) == 3


def test_zero_function_rejected():
    with pytest.raises(DegenerateInput):
        log_derivative(constant(0.0, HALF))


def test_plus_equation_coefficients():
    x = variable(HALF)
    eq = schrodinger_to_riccati(SchrodingerProblem(x * x, 3.0))
    c = eq.coefficients_at(2.0)
    assert (c.c2, c.c1, c.c0) == (-1.0, 0.0, 1.0)


def test_minus_equation_coefficients():
    x = variable(HALF)
    eq = schrodinger_to_riccati(SchrodingerProblem(x * x, 3.0), SignConvention.MINUS)
    c = eq.coefficients_at(2.0)
    assert (c.c2, c.c1, c.c0) == (1.0, 0.0, -1.0)


def test_log_derivative_solves_plus_equation():
    x = variable(HALF)
    eq = schrodinger_to_riccati(SchrodingerProblem(x * x, 3.0))
    s = residual_summary(eq, log_derivative(_ground()), 500, (1e-3, 8))
    assert s.max_scaled <= 1e-6


def test_minus_solution_is_negated_plus_solution():
    p = OscillatorParams(0.0, 2.0)
    prob = SchrodingerProblem(p.potential(), p.energy(0))
    w_minus = log_derivative(p.eigenpair(0).wavefunction, SignConvention.MINUS)
    minus_eq = schrodinger_to_riccati(prob, SignConvention.MINUS)
    plus_eq = schrodinger_to_riccati(prob, SignConvention.PLUS)
    assert np.max(np.abs(residual(minus_eq, w_minus, XS))) <= 1e-10
    assert np.max(np.abs(residual(plus_eq, -w_minus, XS))) <= 1e-10


def test_reconstruct_from_constant():
    phi = reconstruct_wavefunction(constant(1.0), 0.0)
    xs = np.array([-2.0, -0.5, 0.0, 1.0, 3.0])
    assert np.allclose(phi(xs), np.exp(xs), rtol=1e-13)


def test_reconstruct_from_ground_state_log_derivative():
    x = variable(HALF)
    phi = reconstruct_wavefunction(1 / x - x, 1.0)
    # exp(log x - x^2/2 + 1/2)
    assert np.allclose(phi(XS), XS * np.exp(0.5 - 0.5 * XS * XS), rtol=1e-12)


def test_reconstruct_outside_domain_rejected():
    with pytest.raises(DomainError):
        reconstruct_wavefunction(1 / variable(HALF), -1.0)


def test_reconstruction_anchored_to_one():
    phi = reconstruct_wavefunction(1 / variable(HALF), 2.5)
    assert phi(2.5) == 1.0


def test_reconstructed_derivative_is_w_phi():
    x = variable(HALF)
    w = 1 / x - x
    phi = reconstruct_wavefunction(w, 1.0)
    assert np.allclose(phi.derivative()(XS), w(XS) * phi(XS), rtol=1e-12)


@pytest.mark.parametrize(
    "family",
    [OscillatorParams(0.0, 2.0), OscillatorParams(-1.25, 2.0), CoulombParams(0.0, -1.0), CoulombParams(1.5, -0.5, True)],
)
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_round_trip_ratio_is_flat(family, k):
    assert eigenfunction_round_trip(family.eigenpair(k).wavefunction) < 1e-7


def test_round_trip_over_all_families():
    assert round_trip_flatness(kmax=3) < 1e-6


def test_reconstructed_state_solves_second_order_equation():
    p = OscillatorParams(0.5, 1.0)
    pair = p.eigenpair(1)
    prob = SchrodingerProblem(p.potential(), pair.energy)
    w = log_derivative(pair.wavefunction)
    first = w.domain.intervals[0]
    x0 = 0.5 * first.hi
    phi = reconstruct_wavefunction(w, x0)
    xs = np.linspace(0.05, 0.95 * first.hi, 200)
    res = second_order_residual(prob, phi, xs)
    scale = np.max(np.abs(phi(xs))) * np.max(np.abs(prob.shift(xs)))
    assert np.max(np.abs(res)) <= 1e-5 * scale


def test_oracle_potential_matches_family():
    p = OscillatorParams(0.5, 1.0)
    assert np.allclose(p.potential()(XS), osc_potential(0.5, 1.0, XS), rtol=1e-14)


def test_schrodinger_problem_shift():
    x = variable(HALF)
    prob = SchrodingerProblem(x * x, 3.0)
    assert prob.shift(2.0) == 1.0
    assert isinstance(schrodinger_to_riccati(prob), RiccatiEquation)
