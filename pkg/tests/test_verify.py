import math

import numpy as np
import pytest

from riccati_forge.errors import ConvergenceError, DegenerateInput
from riccati_forge.fnspace import Domain, constant, exp, variable
from riccati_forge.potentials import CoulombParams, OscillatorParams, run_example
from riccati_forge.verify import (
    QuadratureSpec,
    decay_cutoff,
    gram_matrix,
    inner_product,
    integrate,
    norm_squared,
    quadrature,
    schrodinger_residual_sweep,
)

HALF = Domain.half_line()


def test_exponential_over_half_line():
    assert integrate(lambda t: np.exp(-t), QuadratureSpec(window=(0, math.inf))) == pytest.approx(1.0, abs=1e-12)


def test_exponential_over_truncated_window():
    # the truncated window misses the mass below 1e-6 and above 60
    val = integrate(lambda t: np.exp(-t), QuadratureSpec(window=(1e-6, 60)))
    assert val == pytest.approx(math.exp(-1e-6) - math.exp(-60), abs=1e-12)
    assert val == pytest.approx(1.0, abs=1e-5)


def test_tail_is_reported():
    res = quadrature(lambda t: np.exp(-t), QuadratureSpec(window=(0, math.inf)))
    assert res.tail == pytest.approx(math.exp(-60), rel=1e-8)


def test_ground_state_normalized_on_singular_branch():
    phi = OscillatorParams(-1.25, 2.0).eigenpair(0).wavefunction
    assert norm_squared(phi) == pytest.approx(1.0, abs=1e-6)


def test_auxiliary_integral_converges():
    l = -1.25
    d = lambda t: (3 + 2 * l) * t * t - 8 * (l + 1) ** 3
    val = integrate(lambda t: np.exp(-t) * t ** (2 * l + 4) / d(t))
    assert math.isfinite(val) and val > 0


def test_convergence_error_carries_estimate():
    with pytest.raises(ConvergenceError) as info:
        integrate(lambda t: np.sin(1 / t) / t, QuadratureSpec(window=(1e-8, 1), max_depth=3))
    assert math.isfinite(info.value.estimate)
    assert info.value.error > 0


def test_orthogonality_of_exact_states():
    p = OscillatorParams(0.0, 2.0)
    assert abs(inner_product(p.eigenpair(0).wavefunction, p.eigenpair(1).wavefunction)) <= 2e-4


@pytest.mark.parametrize("k", [0, 2, 4])
def test_self_product_nonnegative(k):
    f = OscillatorParams(0.5, 1.0).eigenpair(k).wavefunction
    assert inner_product(f, f) >= 0


def test_gram_matrix_of_oscillator_states():
    p = OscillatorParams(0.0, 2.0)
    g = gram_matrix([p.eigenpair(k).wavefunction for k in range(5)])
    assert np.max(np.abs(g - np.eye(5))) <= 2e-4


def test_example_eigenstate_parallel_to_rescaled_coulomb_state():
    res = run_example("coul-7.2", l=2.0, q=-1.0, k=1)
    target = CoulombParams(1.0, -2.0 / 3.0).eigenpair(0).wavefunction
    cos = inner_product(res.eigenstate, target) / math.sqrt(norm_squared(res.eigenstate) * norm_squared(target))
    assert abs(abs(cos) - 1) <= 1e-6


def test_integration_is_linear():
    rng = np.random.default_rng(3)
    f = lambda t: np.exp(-t) * np.sin(t)
    g = lambda t: t * np.exp(-t * t)
    spec = QuadratureSpec()
    for a, b in rng.uniform(-2, 2, (5, 2)):
        combo = integrate(lambda t: a * f(t) + b * g(t), spec)
        assert abs(combo - a * integrate(f, spec) - b * integrate(g, spec)) <= 3 * spec.abs_tol + 3e-11


def test_norm_tail_audit():
    for phi in (
        OscillatorParams(-1.25, 2.0).eigenpair(0).wavefunction,
        CoulombParams(0.0, -1.0).eigenpair(2).wavefunction,
        run_example("osc-7.1", l=-1.25).eigenstate,
        run_example("coul-7.4", l=-1.25).eigenstate,
    ):
        L = decay_cutoff(phi)
        short = norm_squared(phi, QuadratureSpec(window=(0, L)))
        long = norm_squared(phi, QuadratureSpec(window=(0, 2 * L)))
        assert abs(short - long) < 1e-8


def test_residual_of_exact_oscillator_state():
    x = variable(HALF)
    sweep = schrodinger_residual_sweep(x * x, 3.0, x * exp(-0.5 * x * x))
    assert sweep.max_rel <= 1e-6
    assert sweep.grid_size == 500


def test_zero_function_is_degenerate():
    with pytest.raises(DegenerateInput):
        schrodinger_residual_sweep(variable(HALF), 1.0, constant(0.0, HALF))


def test_residual_sweep_scale_covariance():
    p = OscillatorParams(0.5, 1.0)
    pair = p.eigenpair(2)
    x = variable(HALF)
    # a perturbed state keeps the residual far above rounding noise
    trial = pair.wavefunction * (1 + 0.01 * x * exp(-x))
    s1 = schrodinger_residual_sweep(p.potential(), pair.energy, trial, 500, (0.1, 10))
    s10 = schrodinger_residual_sweep(p.potential(), pair.energy, 10.0 * trial, 500, (0.1, 10))
    assert s1.max_rel > 1e-6
    # up to stencil rounding, about eps * max|phi| / h^2 with h = 1e-4
    noise = 10 * 64 * np.finfo(float).eps * np.max(np.abs(trial(np.linspace(0.1, 10, 500)))) / 1e-8
    assert abs(s10.max_abs - 10 * s1.max_abs) <= noise
    assert abs(s10.max_rel - s1.max_rel) <= 1e-9
    e1 = schrodinger_residual_sweep(p.potential(), pair.energy, pair.wavefunction)
    e10 = schrodinger_residual_sweep(p.potential(), pair.energy, 10.0 * pair.wavefunction)
    assert abs(e10.max_rel - e1.max_rel) <= 1e-9


def test_example_image_residual():
    res = run_example("osc-7.1", l=-1.25, b=2.0)
    sweep = schrodinger_residual_sweep(res.image_potential, 0.0, res.eigenstate)
    assert sweep.max_rel <= 1e-5


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_depth=0)
