"""Reference values computed without the package: mpmath, scipy.special and hand algebra."""

from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy import special

mpmath.mp.dps = 30


def upper_gamma(a: float, x: float) -> float:
    return float(mpmath.gammainc(a, x))


def laguerre_sum(k: int, a: float, u: float) -> float:
    """Sum_j (-1)^j C(k+a, k-j) u^j / j!."""
    return float(
        mpmath.fsum((-1) ** j * mpmath.binomial(k + a, k - j) * mpmath.mpf(u) ** j / mpmath.factorial(j) for j in range(k + 1))
    )


def osc_wavefunction(l: float, b: float, k: int, x):
    x = np.asarray(x, dtype=float)
    c = math.sqrt(special.gamma(k + 1) / special.gamma(k + l + 1.5)) * (b ** (2 * l + 3) / 2 ** (2 * l + 1)) ** 0.25
    return c * x ** (l + 1) * np.exp(-b * x * x / 4) * special.eval_genlaguerre(k, l + 0.5, b * x * x / 2)


def osc_potential(l: float, b: float, x, shifted: bool = False):
    x = np.asarray(x, dtype=float)
    v = b * b * x * x / 4 + l * (l + 1) / x**2
    return v - b * (l + 1.5) if shifted else v


def coul_wavefunction(l: float, q: float, k: int, x):
    """Normalized for l > -1, q < 0."""
    x = np.asarray(x, dtype=float)
    n = k + l + 1
    c = math.sqrt(special.gamma(k + 1) / special.gamma(2 * l + 2 + k)) * 2 ** (l + 1) * abs(q) ** (l + 1.5) / n ** (l + 2)
    return c * x ** (l + 1) * np.exp(q * x / n) * special.eval_genlaguerre(k, 2 * l + 1, -2 * q * x / n)


def coul_potential(l: float, q: float, x):
    x = np.asarray(x, dtype=float)
    return 2 * q / x + l * (l + 1) / x**2


def osc_image_potential(l: float, b: float, x):
    x = np.asarray(x, dtype=float)
    d = b * x * x - 2 * (l + 1)
    return b * b * x * x / 4 + (l + 1) * (l + 2) / x**2 - b * (l + 1.5) + 6 * b * (l + 1) / d**2


def osc_eigenstate_shape(l: float, b: float, x):
    x = np.asarray(x, dtype=float)
    return x ** (l + 2) * np.exp(-b * x * x / 4) / np.sqrt(b * x * x - 2 * (l + 1))


def osc_norm_sq(l: float) -> float:
    s = -l - 1
    return float(mpmath.e**s / 2 * mpmath.mpf(s) ** (l + 1.5) * mpmath.gammainc(-l - 1.5, s))


def quad(f, a: float, b: float) -> float:
    return float(mpmath.quad(f, [a, b]))
