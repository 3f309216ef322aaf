"""Generalized Laguerre polynomials, Gamma and the upper incomplete Gamma."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import ArgumentError

EULER_GAMMA = 0.5772156649015329
_CF_EPS = 1e-16
_TINY = 1e-300


@dataclass(frozen=True)
class LaguerreSpec:
    degree: int
    parameter: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ArgumentError(f"Laguerre degree must be a nonnegative integer, got {self.degree}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "parameter", float(self.parameter))


def _laguerre(k: int, a: float, u):
    """Three-term recurrence, vectorised in ``u``."""
    u = np.asarray(u, dtype=float)
    prev = np.ones_like(u)
    if k == 0:
        return prev
    cur = 1.0 + a - u
    for n in range(2, k + 1):
        prev, cur = cur, ((2 * n - 1 + a - u) * cur - (n - 1 + a) * prev) / n
    return cur


def laguerre(spec: LaguerreSpec, u):
    """L_k^a(u) for ``spec = LaguerreSpec(k, a)``."""
    out = _laguerre(spec.degree, spec.parameter, u)
    return float(out) if np.ndim(out) == 0 else out


def laguerre_series(spec: LaguerreSpec, u: float) -> tuple[float, float]:
    """Explicit sum over (-1)^j C(k+a, k-j) u^j / j!; returns (value, sum of |terms|)."""
    k, a = spec.degree, spec.parameter
    total = 0.0
    scale = 0.0
    for j in range(k + 1):
        binom = 1.0
        for i in range(1, k - j + 1):
            binom *= (a + j + i) / i
        term = (-1) ** j * binom * u**j / math.factorial(j)
        total += term
        scale += abs(term)
    return total, scale


def _is_pole(a: float) -> bool:
    return a <= 0 and float(a).is_integer()


def gamma_fn(a: float) -> float:
    """Gamma(a); raises ArgumentError at the poles 0, -1, -2, ..."""
    a = float(a)
    if _is_pole(a):
        raise ArgumentError(f"Gamma has a pole at {a}")
    try:
        return math.gamma(a)
    except OverflowError as exc:
        raise ArgumentError(f"Gamma({a}) overflows") from exc


def _lower_series(a: float, x: float) -> float:
    """gamma(a, x) for a > 0 by its power series."""
    term = 1.0 / a
    total = term
    n = 0
    while True:
        n += 1
        term *= x / (a + n)
        total += term
        if abs(term) < abs(total) * _CF_EPS:
            break
        if n > 100000:
            raise ArithmeticError(f"lower incomplete gamma series stalled at a={a}, x={x}")
    return total * math.exp(-x + a * math.log(x))


def _upper_cf(a: float, x: float, itmax: int = 2_000_000) -> float:
    """Gamma(a, x) by the Legendre continued fraction (modified Lentz), any real a, x > 0."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0 else 1.0 / _TINY
    h = d
    for i in range(1, itmax):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return math.exp(-x + a * math.log(x)) * h
    raise ArithmeticError(f"incomplete gamma continued fraction did not converge at a={a}, x={x}")


_ZETA = [0.0, 0.0] + [float(zeta(k)) for k in range(2, 80)]


def _lgamma1p(d: float) -> float:
    """log Gamma(1 + d) for |d| <= 1/2, accurate relative to d."""
    total = -EULER_GAMMA * d
    power = -d
    for k in range(2, 80):
        power *= -d
        piece = _ZETA[k] * power / k
        total += piece
        if abs(piece) <= abs(total) * _CF_EPS:
            break
    return total


def _upper_negative_series(a: float, x: float) -> float:
    """Gamma(a) - x^a sum (-x)^n / (n! (a+n)) for non-integer a <= 0.

    Gamma(a) and the n = N term (N = -round(a)) both blow up like 1/(a+N);
    their difference is formed through expm1 so nothing cancels.
    """
    big_n = -round(a)
    delta = a + big_n
    rest = 0.0
    term = 1.0
    n = 0
    while True:
        if n != big_n:
            piece = term / (a + n)
            rest += piece
            if n > big_n and abs(piece) <= abs(rest) * _CF_EPS:
                break
        n += 1
        term *= -x / n
        if n > 2000:
            break
    log_ratio = _lgamma1p(delta) - sum(math.log1p(-delta / j) for j in range(1, big_n + 1))
    numer = math.expm1(log_ratio) - math.expm1(delta * math.log(x))
    singular = (-1) ** big_n / math.factorial(big_n) * numer / delta
    return singular - x**a * rest


def _e1_small(x: float) -> float:
    total = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= -x / k
        piece = term / k
        total += piece
        if abs(piece) < _CF_EPS * max(abs(total), 1e-300):
            break
    return -EULER_GAMMA - math.log(x) - total


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Gamma(a, x) = integral_x^inf e^{-t} t^{a-1} dt; a may be negative when x > 0."""
    a = float(a)
    x = float(x)
    if x < 0 or (x == 0 and a <= 0):
        raise ArgumentError(f"upper incomplete gamma diverges or is complex at a={a}, x={x}")
    if x == 0:
        return gamma_fn(a)
    # below a = 1/2 Gamma(a) - gamma(a, x) cancels; the pole-aware series handles it
    if a >= 0.5:
        if x < a + 1.0:
            return math.gamma(a) - _lower_series(a, x)
        return _upper_cf(a, x)
    if x >= 0.5:
        return _upper_cf(a, x)
    n = round(a)
    if a == n:
        # integer a <= 0: E1 then the recurrence downward in a
        val = _e1_small(x)
        s = 0
        while s > n:
            s -= 1
            val = (val - x**s * math.exp(-x)) / s
        return val
    return _upper_negative_series(a, x)
