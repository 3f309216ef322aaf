"""Reusable oracle suites shared by the ``verify`` command and the test suite.

Every function returns worst-case deviations; callers decide the limits.
"""

from __future__ import annotations

import math

import numpy as np

from .darboux import TRANSFORM_WINDOW, intertwine_pair, map_eigenfunction, mapped_log_derivative, mapped_log_derivative_group
from .fnspace import Domain, ScalarFunction, cos, sin, variable
from .potentials import CoulombParams, OscillatorParams
from .reduction import log_derivative, reconstruct_wavefunction
from .riccati import (
    GaugeCurve,
    RiccatiEquation,
    act_on_coefficients,
    act_on_solution,
    cocycle_theta,
    compose,
    representation_B,
)
from .specfun import LaguerreSpec, laguerre, laguerre_series, upper_incomplete_gamma
from .verify import QuadratureSpec, gram_matrix, integrate, schrodinger_residual_sweep

GROUP_WINDOW = (0.1, 10.0)


def rel_dev(a, b) -> float:
    """max |a - b| / (1 + |b|) over finite entries."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.abs(a - b) / (1.0 + np.abs(b))
    d = d[np.isfinite(d)]
    return float(np.max(d)) if d.size else math.inf


def random_smooth(rng: np.random.Generator, domain: Domain, offset: float = 0.0) -> ScalarFunction:
    """c0 + c1 sin(w1 x + p1) + c2 cos(w2 x); with ``offset`` > 0 it stays positive."""
    x = variable(domain)
    c1, c2 = rng.uniform(-1, 1, 2)
    w1, w2 = rng.uniform(0.2, 1.5, 2)
    p1 = rng.uniform(0, 2 * math.pi)
    c0 = offset + abs(c1) + abs(c2) if offset > 0 else rng.uniform(-1, 1)
    return c0 + c1 * sin(w1 * x + p1) + c2 * cos(w2 * x)


def random_gauge(rng: np.random.Generator, domain: Domain) -> GaugeCurve:
    """Smooth unit-determinant curve: alpha > 0 free, delta = (1 + beta gamma)/alpha."""
    alpha = random_smooth(rng, domain, offset=0.5)
    beta = random_smooth(rng, domain)
    gamma = random_smooth(rng, domain)
    return GaugeCurve(alpha, beta, gamma, (1.0 + beta * gamma) / alpha, domain)


def group_law_deviations(n_curves: int = 20, seed: int = 0, grid: int = 500) -> dict:
    """Worst deviations of the Moebius group law, coefficient composition and cocycle identity."""
    rng = np.random.default_rng(seed)
    dom = Domain.of(GROUP_WINDOW)
    worst = {"moebius": 0.0, "coefficients": 0.0, "cocycle": 0.0}
    curves = [random_gauge(rng, dom) for _ in range(n_curves)]
    for i in range(n_curves):
        A1, A2 = curves[i], curves[(i + 1) % n_curves]
        A12 = compose(A1, A2)
        y = random_smooth(rng, dom)
        lhs = act_on_solution(A1, act_on_solution(A2, y))
        rhs = act_on_solution(A12, y)
        common = lhs.domain.intersect(rhs.domain)
        xs = common.sample(grid, GROUP_WINDOW)
        worst["moebius"] = max(worst["moebius"], rel_dev(lhs(xs), rhs(xs)))

        eq = RiccatiEquation(random_smooth(rng, dom), random_smooth(rng, dom), random_smooth(rng, dom))
        two_step = act_on_coefficients(A1, act_on_coefficients(A2, eq))
        one_step = act_on_coefficients(A12, eq)
        xs = dom.sample(grid, GROUP_WINDOW)
        for name in ("a2", "a1", "a0"):
            worst["coefficients"] = max(
                worst["coefficients"], rel_dev(getattr(two_step, name)(xs), getattr(one_step, name)(xs))
            )

        for x in rng.uniform(*GROUP_WINDOW, 50):
            left = cocycle_theta(A12, x).as_array()
            right = representation_B(A1, cocycle_theta(A2, x), x).as_array() + cocycle_theta(A1, x).as_array()
            worst["cocycle"] = max(worst["cocycle"], rel_dev(left, right))
    return worst


def intertwining_deviations(family, kmax: int = 4) -> dict:
    """Mapped eigenfunctions n = 1..kmax through the ground-state factorization."""
    V0 = family.potential()
    ground = family.eigenpair(0)
    V1, data = intertwine_pair(V0, ground.wavefunction, ground.energy)
    mapped = []
    out = {"residual": 0.0, "log_derivative": 0.0, "group_form": 0.0}
    for n in range(1, kmax + 1):
        pair = family.eigenpair(n)
        psi1 = map_eigenfunction(data, pair.wavefunction, pair.energy)
        mapped.append(psi1)
        sweep = schrodinger_residual_sweep(V1, pair.energy, psi1, 500, TRANSFORM_WINDOW)
        out["residual"] = max(out["residual"], sweep.max_rel)
        w_n = log_derivative(pair.wavefunction)
        formula = mapped_log_derivative(data, w_n, pair.energy)
        direct = log_derivative(psi1)
        group = mapped_log_derivative_group(data, w_n, pair.energy)
        common = formula.domain.intersect(direct.domain).intersect(group.domain)
        xs = common.sample(500, TRANSFORM_WINDOW)
        out["log_derivative"] = max(out["log_derivative"], rel_dev(direct(xs), formula(xs)))
        out["group_form"] = max(out["group_form"], rel_dev(group(xs), formula(xs)))
    gram = gram_matrix(mapped)
    out["gram"] = float(np.max(np.abs(gram - np.eye(len(mapped)))))
    return out


ROUND_TRIP_WINDOW = (1e-3, 15.0)


def round_trip_flatness(kmax: int = 3, samples: int = 200) -> float:
    """Worst std/|mean| of reconstruct(log_derivative(phi))/phi over the built-in families."""
    families = [
        OscillatorParams(0.0, 2.0),
        OscillatorParams(-1.25, 2.0),
        OscillatorParams(1.5, 1.0, shifted=True),
        CoulombParams(0.0, -1.0),
        CoulombParams(1.5, -0.5, shifted=True),
    ]
    worst = 0.0
    for fam in families:
        for k in range(kmax + 1):
            worst = max(worst, eigenfunction_round_trip(fam.eigenpair(k).wavefunction, samples))
    # the one square-integrable state of the other Coulomb branch
    worst = max(worst, eigenfunction_round_trip(CoulombParams(-1.25, 1.0).eigenpair(0).wavefunction, samples))
    return worst


def eigenfunction_round_trip(phi: ScalarFunction, samples: int = 200) -> float:
    w = log_derivative(phi)
    worst = 0.0
    for piece in w.domain.clipped(ROUND_TRIP_WINDOW):
        xs = piece.grid(samples)
        vals = phi(xs)
        keep = np.abs(vals) > 1e-250
        xs = xs[keep]
        if xs.size < 2:
            continue
        x0 = float(xs[xs.size // 2])
        rebuilt = reconstruct_wavefunction(w, x0)
        ratio = rebuilt(xs) / vals[keep]
        worst = max(worst, float(np.std(ratio) / abs(np.mean(ratio))))
    return worst


def special_function_deviations(seed: int = 0, n: int = 100, kmax: int = 8) -> dict:
    """Incomplete Gamma against quadrature, Laguerre recurrence against the explicit sum."""
    rng = np.random.default_rng(seed)
    worst_g = 0.0
    spec_kw = dict(abs_tol=1e-300, rel_tol=1e-13)
    for a, x in zip(rng.uniform(-2, 5, n), rng.uniform(0.01, 10, n)):
        direct = integrate(
            lambda t, a=a: np.exp(-t) * t ** (a - 1), QuadratureSpec(window=(float(x), math.inf), **spec_kw)
        )
        worst_g = max(worst_g, abs(upper_incomplete_gamma(a, x) - direct) / abs(direct))
    worst_l = 0.0
    for k in range(kmax + 1):
        for a, u in zip(rng.uniform(-0.9, 4, 20), rng.uniform(0, 12, 20)):
            spec = LaguerreSpec(k, a)
            series, _ = laguerre_series(spec, u)
            worst_l = max(worst_l, abs(laguerre(spec, u) - series) / abs(series))
    return {"incomplete_gamma": worst_g, "laguerre": worst_l}

