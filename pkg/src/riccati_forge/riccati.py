"""Riccati equations y' = a2 y^2 + a1 y + a0 and the SL(2, R) gauge group acting on them.

A gauge curve A(x) = [[alpha, beta], [gamma, delta]] with unit determinant
moves solutions by the Moebius map y -> (alpha y + beta) / (gamma y + delta)
and moves coefficients affinely: a -> B(A) a + theta(A), where B is a 3x3
linear representation and theta is the derivative-dependent cocycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GaugeError
from .fnspace import (
    GUARD_BAND,
    Domain,
    ScalarFunction,
    constant,
    find_zeros,
)

DET_TOL = 1e-9
DET_SAMPLES = 200


@dataclass(frozen=True)
class CoefficientTriple:
    """Pointwise coefficient values, ordered (c2, c1, c0)."""

    c2: float
    c1: float
    c0: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c2, self.c1, self.c0], dtype=float)

    @classmethod
    def from_array(cls, arr) -> CoefficientTriple:
        a = np.asarray(arr, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def __post_init__(self):
        for name in ("c2", "c1", "c0"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"coefficient {name} is not finite: {v}")
            object.__setattr__(self, name, v)


def _fn(obj, domain=None) -> ScalarFunction:
    if isinstance(obj, ScalarFunction):
        return obj
    return constant(float(obj), domain)


@dataclass(frozen=True)
class RiccatiEquation:
    """y' = a2 y^2 + a1 y + a0 on the common domain of the coefficients."""

    a2: ScalarFunction
    a1: ScalarFunction
    a0: ScalarFunction

    def __post_init__(self):
        for name in ("a2", "a1", "a0"):
            object.__setattr__(self, name, _fn(getattr(self, name)))

    @property
    def domain(self) -> Domain:
        return self.a2.domain.intersect(self.a1.domain).intersect(self.a0.domain)

    def coefficients_at(self, x: float) -> CoefficientTriple:
        return CoefficientTriple(self.a2(x), self.a1(x), self.a0(x))

    def rhs(self, y, x):
        return self.a2(x) * y * y + self.a1(x) * y + self.a0(x)


class GaugeCurve:
    """SL(2, R)-valued curve; the determinant is checked on a sample grid at construction."""

    def __init__(self, alpha, beta, gamma, delta, domain=None, *, check: bool = True):
        entries = [alpha, beta, gamma, delta]
        dom = domain
        if dom is None:
            dom = Domain.real_line()
            for e in entries:
                if isinstance(e, ScalarFunction):
                    dom = dom.intersect(e.domain)
        elif not isinstance(dom, Domain):
            dom = Domain.of(dom) if isinstance(dom, tuple) else Domain(tuple(dom))
        if dom.is_empty:
            raise DomainError("gauge curve entries share no domain")
        self.alpha, self.beta, self.gamma, self.delta = (_fn(e, dom) for e in entries)
        self.domain = dom
        if check:
            self._check_det()

    def _check_det(self):
        xs = self.domain.sample(DET_SAMPLES)
        with np.errstate(all="ignore"):
            ad = self.alpha(xs) * self.delta(xs)
            bg = self.beta(xs) * self.gamma(xs)
        dev = np.abs(ad - bg - 1.0) / (1.0 + np.abs(ad) + np.abs(bg))
        bad = ~(dev <= DET_TOL)
        if np.any(bad):
            i = int(np.argmax(np.where(np.isfinite(dev), dev, np.inf)))
            raise GaugeError(f"determinant differs from 1 at x={xs[i]:.6g} (relative deviation {dev[i]:.3g})")

    def det(self, x):
        return self.alpha(x) * self.delta(x) - self.beta(x) * self.gamma(x)

    def matrix(self, x: float) -> np.ndarray:
        return np.array([[self.alpha(x), self.beta(x)], [self.gamma(x), self.delta(x)]])

    def __repr__(self):
        return f"<GaugeCurve on {self.domain!r}>"


def identity(domain=None) -> GaugeCurve:
    return GaugeCurve(1.0, 0.0, 0.0, 1.0, domain if domain is not None else Domain.real_line())


def compose(A1: GaugeCurve, A2: GaugeCurve) -> GaugeCurve:
    """Pointwise product A1(x) A2(x)."""
    dom = A1.domain.intersect(A2.domain)
    return GaugeCurve(
        A1.alpha * A2.alpha + A1.beta * A2.gamma,
        A1.alpha * A2.beta + A1.beta * A2.delta,
        A1.gamma * A2.alpha + A1.delta * A2.gamma,
        A1.gamma * A2.beta + A1.delta * A2.delta,
        dom,
    )


def inverse(A: GaugeCurve) -> GaugeCurve:
    return GaugeCurve(A.delta, -A.beta, -A.gamma, A.alpha, A.domain)


def act_on_solution(A: GaugeCurve, y: ScalarFunction, window=None) -> ScalarFunction:
    """Moebius image (alpha y + beta)/(gamma y + delta).

    Zeros of the denominator are cut out of the domain together with a
    guard band on each side.
    """
    dom = A.domain.intersect(y.domain)
    if dom.is_empty:
        raise DomainError("gauge curve and solution do not overlap")
    num = A.alpha * y + A.beta
    den = A.gamma * y + A.delta
    if den.constant_value is None:
        den = den.with_domain(dom)
        dom = dom.excise(find_zeros(den), GUARD_BAND)
    if dom.is_empty:
        raise DomainError("denominator vanishes on the entire overlap")
    return (num / den).with_domain(dom)


def act_on_coefficients(A: GaugeCurve, eq: RiccatiEquation) -> RiccatiEquation:
    """New coefficients B(A) a + theta(A) as functions."""
    al, be, ga, de = A.alpha, A.beta, A.gamma, A.delta
    da, db, dg, dd = al.derivative(), be.derivative(), ga.derivative(), de.derivative()
    a2, a1, a0 = eq.a2, eq.a1, eq.a0
    n2 = de * de * a2 - de * ga * a1 + ga * ga * a0 + ga * dd - de * dg
    n1 = (
        -2.0 * be * de * a2
        + (al * de + be * ga) * a1
        - 2.0 * al * ga * a0
        + de * da
        - al * dd
        + be * dg
        - ga * db
    )
    n0 = be * be * a2 - al * be * a1 + al * al * a0 + al * db - be * da
    return RiccatiEquation(n2, n1, n0)


def representation_matrix(A: GaugeCurve, x: float) -> np.ndarray:
    al, be, ga, de = (float(f(x)) for f in (A.alpha, A.beta, A.gamma, A.delta))
    return np.array(
        [
            [de * de, -de * ga, ga * ga],
            [-2 * be * de, al * de + be * ga, -2 * al * ga],
            [be * be, -al * be, al * al],
        ]
    )


def representation_B(A: GaugeCurve, c: CoefficientTriple, x: float) -> CoefficientTriple:
    """Linear part of the coefficient action at ``x`` (no cocycle term)."""
    return CoefficientTriple.from_array(representation_matrix(A, x) @ c.as_array())


def cocycle_theta(A: GaugeCurve, x: float) -> CoefficientTriple:
    al, be, ga, de = (float(f(x)) for f in (A.alpha, A.beta, A.gamma, A.delta))
    da, db, dg, dd = (float(f.derivative()(x)) for f in (A.alpha, A.beta, A.gamma, A.delta))
    return CoefficientTriple(
        ga * dd - de * dg,
        de * da - al * dd + be * dg - ga * db,
        al * db - be * da,
    )


def residual(eq: RiccatiEquation, y: ScalarFunction, x):
    """y'(x) - a2 y^2 - a1 y - a0."""
    with np.errstate(all="ignore"):
        yv = y(x)
        return y.derivative()(x) - eq.a2(x) * yv * yv - eq.a1(x) * yv - eq.a0(x)


def scaled_residual(eq: RiccatiEquation, y: ScalarFunction, x):
    """|residual| / (1 + |y'| + |a2 y^2| + |a1 y| + |a0|), a size-free measure."""
    with np.errstate(all="ignore"):
        yv = y(x)
        dy = y.derivative()(x)
        t2 = eq.a2(x) * yv * yv
        t1 = eq.a1(x) * yv
        t0 = eq.a0(x)
        res = dy - t2 - t1 - t0
        return np.abs(res) / (1.0 + np.abs(dy) + np.abs(t2) + np.abs(t1) + np.abs(t0))


@dataclass(frozen=True)
class ResidualSummary:
    max_scaled: float
    max_abs: float
    worst_x: float
    grid_size: int


def residual_summary(
    eq: RiccatiEquation, y: ScalarFunction, n: int = 500, window=None, domain: Domain | None = None
) -> ResidualSummary:
    """Residual maxima of ``y`` in ``eq`` on an ``n``-point grid of the working domain."""
    dom = domain if domain is not None else y.domain.intersect(eq.domain)
    xs = dom.sample(n, window)
    sc = np.asarray(scaled_residual(eq, y, xs))
    ab = np.abs(np.asarray(residual(eq, y, xs)))
    sc = np.where(np.isfinite(sc), sc, np.inf)
    i = int(np.argmax(sc))
    return ResidualSummary(float(sc[i]), float(np.max(np.where(np.isfinite(ab), ab, np.inf))), float(xs[i]), xs.size)


# gauge curves used by the transformation theorems -----------------------------


def backlund_gauge(h: ScalarFunction, a: float) -> GaugeCurve:
    """(1/sqrt a) [[h, a - h^2], [-1, h]] for a constant a > 0."""
    if not a > 0:
        raise GaugeError(f"the constant must be positive, got {a}")
    s = 1.0 / math.sqrt(a)
    return GaugeCurve(s * h, s * (a - h * h), constant(-s, h.domain), s * h, h.domain)


def gamma_gauge(gamma: ScalarFunction, v: ScalarFunction) -> GaugeCurve:
    """gamma [[gamma'/gamma - v, v^2 - v gamma'/gamma - 1/gamma^2], [1, -v]]."""
    dom = gamma.domain.intersect(v.domain)
    lg = gamma.log_derivative()
    inv_g2 = gamma ** -2
    return GaugeCurve(
        gamma * (lg - v),
        gamma * (v * v - v * lg - inv_g2),
        gamma,
        -(gamma * v),
        dom,
    )

