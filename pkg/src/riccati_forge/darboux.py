"""Backlund and Darboux-type transformations built on the Riccati gauge group.

All Riccati equations here are written in the form w' + w^2 = U, i.e.
coefficients (-1, 0, U), with U = V - eps the potential shifted by the
factorization energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EnergyOrderError,
    GaugeError,
    InvalidSolution,
    NotGroundState,
    OrderError,
    ResidualError,
    residual_threshold,
)
from .fnspace import GUARD_BAND, Domain, ScalarFunction, constant, find_zeros, with_fallback
from .reduction import log_derivative
from .riccati import RiccatiEquation, act_on_solution, backlund_gauge, residual_summary

# Both w_k and w_l behave like (l+1)/x at the origin, so w_k - w_l loses
# about log10(1/x^2) digits there; 1e-3 keeps that loss near 1e-10.
TRANSFORM_WINDOW = (1e-3, 60.0)
PRECONDITION_TOL = 1e-6
REPORT_GRID = 500


def riccati_for(shift: ScalarFunction) -> RiccatiEquation:
    """w' = -w^2 + shift."""
    one = constant(1.0, shift.domain)
    return RiccatiEquation(-one, 0.0 * one, shift)


@dataclass(frozen=True)
class FactorizationData:
    superpotential: ScalarFunction
    energy: float

    def check(self, V: ScalarFunction, window=TRANSFORM_WINDOW) -> float:
        """Scaled residual of W' + W^2 = V - eps."""
        return residual_summary(riccati_for(V - self.energy), self.superpotential, REPORT_GRID, window).max_scaled


@dataclass(frozen=True)
class GammaGauge:
    """A nowhere-vanishing gauge function gamma(x)."""

    gamma: ScalarFunction

    def __post_init__(self):
        g = self.gamma
        if g.constant_value is not None:
            if g.constant_value == 0.0:
                raise GaugeError("gamma is identically zero")
            return
        roots = find_zeros(g)
        if roots:
            raise GaugeError(f"gamma vanishes at x={roots[0]:.6g}")
        xs = g.domain.sample(400)
        with np.errstate(all="ignore"):
            vals = g(xs)
        if not np.all(np.isfinite(vals) & (vals != 0)):
            raise GaugeError("gamma is zero or not finite on part of its domain")

    @classmethod
    def constant(cls, value: float, domain=None) -> GammaGauge:
        return cls(constant(value, domain if domain is not None else Domain.half_line()))

    @property
    def log_derivative(self) -> ScalarFunction:
        """gamma'/gamma."""
        return self.gamma.log_derivative()

    @property
    def inverse_square(self) -> ScalarFunction:
        return self.gamma**-2

    @property
    def second_ratio(self) -> ScalarFunction:
        """gamma''/gamma = (gamma'/gamma)' + (gamma'/gamma)^2."""
        lg = self.log_derivative
        return lg.derivative() + lg * lg

    def negated(self) -> GammaGauge:
        return GammaGauge(-self.gamma)


@dataclass(frozen=True)
class TransformReport:
    """A transformed solution together with the equation it solves.

    ``new_potential_shift`` is the whole right-hand side Vbar - epsbar; the
    split into potential and energy is left to the caller through ``energy``.
    """

    new_potential_shift: ScalarFunction
    new_solution: ScalarFunction
    max_residual: float
    domain: Domain
    energy: float = 0.0
    stage: str = ""
    worst_x: float = math.nan
    grid_size: int = REPORT_GRID

    @property
    def image_potential(self) -> ScalarFunction:
        return self.new_potential_shift + self.energy


def _require_solution(w: ScalarFunction, shift: ScalarFunction, label: str, window):
    summary = residual_summary(riccati_for(shift), w, REPORT_GRID, window)
    if not summary.max_scaled <= PRECONDITION_TOL:
        raise InvalidSolution(
            f"{label} misses its Riccati equation: scaled residual {summary.max_scaled:.3g} at x={summary.worst_x:.6g}"
        )


def _working_domain(diff: ScalarFunction, *parts: ScalarFunction) -> Domain:
    dom = diff.domain
    for p in parts:
        dom = dom.intersect(p.domain)
    return dom.excise(find_zeros(diff.with_domain(dom)), GUARD_BAND)


def _riccati_report(out, shift, energy, stage, window) -> TransformReport:
    summary = residual_summary(riccati_for(shift), out, REPORT_GRID, window)
    report = TransformReport(shift, out, summary.max_scaled, out.domain, energy, stage, summary.worst_x, summary.grid_size)
    limit = residual_threshold()
    if not summary.max_scaled <= limit:
        raise ResidualError(
            f"{stage}: residual {summary.max_scaled:.3g} exceeds {limit:g} at x={summary.worst_x:.6g}", report
        )
    return report


def finite_difference_backlund(
    w_k: ScalarFunction,
    w_l: ScalarFunction,
    eps_k: float,
    eps_l: float,
    V: ScalarFunction | None = None,
    window=TRANSFORM_WINDOW,
) -> TransformReport:
    """w_kl = -w_k - (eps_k - eps_l)/(w_k - w_l), a solution of w' + w^2 = V - 2 w_k' - eps_l.

    Without ``V`` the potential is recovered from w_k as w_k' + w_k^2 + eps_k.
    """
    if not eps_k < eps_l:
        raise OrderError(f"need eps_k < eps_l, got {eps_k} >= {eps_l}")
    if V is None:
        V = w_k.derivative() + w_k * w_k + eps_k
    else:
        _require_solution(w_k, V - eps_k, "w_k", window)
    _require_solution(w_l, V - eps_l, "w_l", window)
    diff = w_k - w_l
    dom = _working_domain(diff, w_k, w_l, V)
    out = (-w_k + (eps_l - eps_k) / diff).with_domain(dom)
    shift = V - 2.0 * w_k.derivative() - eps_l
    return _riccati_report(out, shift, eps_l, "finite-difference backlund", window)


def finite_difference_backlund_group(w_k: ScalarFunction, w_l: ScalarFunction, eps_k: float, eps_l: float):
    """The same construction as a Moebius action of (1/sqrt a)[[w_k, a - w_k^2], [-1, w_k]]."""
    if not eps_k < eps_l:
        raise OrderError(f"need eps_k < eps_l, got {eps_k} >= {eps_l}")
    return act_on_solution(backlund_gauge(w_k, eps_l - eps_k), w_l)


def _as_gauge(gauge) -> GammaGauge:
    if isinstance(gauge, GammaGauge):
        return gauge
    if isinstance(gauge, ScalarFunction):
        return GammaGauge(gauge)
    return GammaGauge.constant(float(gauge))


def gamma_shift(V: ScalarFunction, v: ScalarFunction, gauge: GammaGauge, eps: float) -> ScalarFunction:
    """V - 2(gamma'/gamma v + v') + gamma''/gamma - eps."""
    lg = gauge.log_derivative
    return V - 2.0 * (lg * v + v.derivative()) + gauge.second_ratio - eps


def generalized_backlund(
    w: ScalarFunction,
    v: ScalarFunction,
    gauge,
    V: ScalarFunction,
    eps: float,
    window=TRANSFORM_WINDOW,
) -> TransformReport:
    """wbar = -v - (1/gamma^2)/(w - v) + gamma'/gamma.

    Requires w' + w^2 = V - eps and v' + v^2 = V + 1/gamma^2 - eps; the
    result solves wbar' + wbar^2 = V - 2(gamma'/gamma v + v') + gamma''/gamma - eps.
    """
    gauge = _as_gauge(gauge)
    inv_g2 = gauge.inverse_square
    _require_solution(w, V - eps, "w", window)
    _require_solution(v, V + inv_g2 - eps, "v", window)
    diff = w - v
    dom = _working_domain(diff, w, v, V, gauge.gamma)
    out = (-v - inv_g2 / diff + gauge.log_derivative).with_domain(dom)
    return _riccati_report(out, gamma_shift(V, v, gauge, eps), eps, "generalized backlund", window)


def schrodinger_backlund(
    phi_w: ScalarFunction,
    phi_v: ScalarFunction,
    gauge,
    V: ScalarFunction,
    eps: float,
    window=TRANSFORM_WINDOW,
) -> TransformReport:
    """phi_wbar = gamma (-phi_w' + v phi_w) with v = phi_v'/phi_v, returned unnormalized.

    The residual reported is that of -phi'' + (shift) phi = 0 from a
    five-point stencil, relative to max|phi| (1 + max|shift|).
    """
    from .verify import schrodinger_residual_sweep

    gauge = _as_gauge(gauge)
    w = log_derivative(phi_w)
    v = log_derivative(phi_v)
    _require_solution(w, V - eps, "phi_w", window)
    _require_solution(v, V + gauge.inverse_square - eps, "phi_v", window)
    diff = v - w
    if diff.constant_value == 0.0:
        raise InvalidSolution("phi_w and phi_v have the same log-derivative")
    g = gauge.gamma
    dom = phi_w.domain.intersect(v.domain).intersect(g.domain)
    # evaluated as gamma * phi_w * (v - w): same function, but its sign never
    # comes from cancellation once phi_w has underflowed; the literal form
    # covers the nodes of phi_w, where w is infinite
    literal = g * (v * phi_w - phi_w.derivative())
    out = with_fallback(g * phi_w * diff, literal).with_domain(dom)
    shift = gamma_shift(V, v, gauge, eps)
    sweep = schrodinger_residual_sweep(shift, 0.0, out, REPORT_GRID, window)
    report = TransformReport(shift, out, sweep.max_rel, dom, eps, "schrodinger backlund", sweep.worst_x, sweep.grid_size)
    limit = residual_threshold()
    if not sweep.max_rel <= limit:
        raise ResidualError(f"schrodinger backlund: residual {sweep.max_rel:.3g} exceeds {limit:g}", report)
    return report


def intertwine_pair(
    V0: ScalarFunction, ground_state: ScalarFunction, E0: float, window=TRANSFORM_WINDOW
) -> tuple[ScalarFunction, FactorizationData]:
    """Partner potential V1 = V0 - 2 W1' with W1 = psi0'/psi0."""
    roots = find_zeros(ground_state)
    if roots:
        raise NotGroundState(f"ground state has a zero at x={roots[0]:.6g}")
    W1 = ground_state.log_derivative().with_domain(ground_state.domain.intersect(V0.domain))
    V1 = V0 - 2.0 * W1.derivative()
    data = FactorizationData(W1, E0)
    # W1' + W1^2 = V0 - E0 and -W1' + W1^2 = V1 - E0
    first = residual_summary(riccati_for(V0 - E0), W1, REPORT_GRID, window).max_scaled
    one = constant(1.0, W1.domain)
    partner = RiccatiEquation(one, 0.0 * one, -(V1 - E0))
    second = residual_summary(partner, W1, REPORT_GRID, window).max_scaled
    worst = max(first, second)
    if not worst <= PRECONDITION_TOL:
        raise ResidualError(f"factorization identities fail: scaled residual {worst:.3g}")
    return V1, data


def map_eigenfunction(W1: FactorizationData, psi_n: ScalarFunction, E_n: float) -> ScalarFunction:
    """(-d/dx + W1) psi_n / sqrt(E_n - E0)."""
    gap = E_n - W1.energy
    if not gap > 0:
        raise EnergyOrderError(f"need E_n > E0, got E_n - E0 = {gap}; the gauge curve would be singular")
    W = W1.superpotential
    c = 1.0 / math.sqrt(gap)
    dom = W.domain.intersect(psi_n.domain)
    out = (c * (W * psi_n - psi_n.derivative())).with_domain(dom)
    factored = psi_n * (W - psi_n.log_derivative())
    out._logd_thunk = lambda: factored.log_derivative().with_domain(dom)
    return out


def mapped_log_derivative(W1: FactorizationData, w_n: ScalarFunction, E_n: float) -> ScalarFunction:
    """-w1(E0) - (E0 - E_n)/(w1(E0) - w1(E_n)), the Moebius image of w1(E_n)."""
    W = W1.superpotential
    diff = W - w_n
    dom = W.domain.intersect(w_n.domain)
    dom = dom.excise(find_zeros(diff.with_domain(dom)), GUARD_BAND)
    return (-W - (W1.energy - E_n) / diff).with_domain(dom)


def mapped_log_derivative_group(W1: FactorizationData, w_n: ScalarFunction, E_n: float) -> ScalarFunction:
    gap = E_n - W1.energy
    if not gap > 0:
        raise EnergyOrderError(f"need E_n > E0, got E_n - E0 = {gap}")
    return act_on_solution(backlund_gauge(W1.superpotential, gap), w_n)
