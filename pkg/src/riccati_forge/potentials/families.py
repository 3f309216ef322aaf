"""Radial oscillator-like and Coulomb-like potentials on (0, inf) with closed-form eigenpairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import NotNormalizable, ParameterError
from ..fnspace import Domain, ScalarFunction, exp, laguerre_of, variable
from ..specfun import gamma_fn

HALF_LINE = Domain.half_line()


def _x() -> ScalarFunction:
    return variable(HALF_LINE)


@dataclass(frozen=True)
class EigenPair:
    k: int
    energy: float
    wavefunction: ScalarFunction
    normalizable: bool = True


def _check_index(k) -> int:
    if int(k) != k or k < 0:
        raise ParameterError(f"state index must be a nonnegative integer, got {k}")
    return int(k)


class SpectralFamily:
    """Common interface of the parameter records below."""

    def potential(self) -> ScalarFunction:
        raise NotImplementedError

    def energy(self, k: int) -> float:
        raise NotImplementedError

    def eigenpair(self, k: int) -> EigenPair:
        raise NotImplementedError

    def with_l(self, l: float):
        raise NotImplementedError


@dataclass(frozen=True)
class OscillatorParams(SpectralFamily):
    """b^2 x^2/4 + l(l+1)/x^2, minus b(l + 3/2) when ``shifted``."""

    l: float
    b: float
    shifted: bool = False

    def __post_init__(self):
        if not self.b > 0:
            raise ParameterError(f"oscillator family needs b > 0, got b={self.b}")
        if not self.l > -1.5:
            raise ParameterError(f"oscillator family needs l > -3/2, got l={self.l}")

    def potential(self) -> ScalarFunction:
        return oscillator_potential(self)

    def energy(self, k: int) -> float:
        k = _check_index(k)
        if self.shifted:
            return 2.0 * self.b * k
        return self.b * (2 * k + self.l + 1.5)

    def eigenpair(self, k: int) -> EigenPair:
        return oscillator_eigenpair(self, k)

    def with_l(self, l: float) -> OscillatorParams:
        return OscillatorParams(l, self.b, self.shifted)


@dataclass(frozen=True)
class CoulombParams(SpectralFamily):
    """2q/x + l(l+1)/x^2, plus q^2/(l+1)^2 when ``shifted``."""

    l: float
    q: float
    shifted: bool = False

    def __post_init__(self):
        if self.q == 0:
            raise ParameterError("Coulomb family needs q != 0")
        if not self.l > -1.5:
            raise ParameterError(f"Coulomb family needs l > -3/2, got l={self.l}")
        if self.l == -1:
            raise ParameterError("Coulomb family needs l != -1")

    def is_normalizable(self, k: int) -> bool:
        k = _check_index(k)
        if -1.5 < self.l < -1 and self.q > 0:
            return k == 0
        return self.l > -1 and self.q < 0

    def potential(self) -> ScalarFunction:
        return coulomb_potential(self)

    def energy(self, k: int) -> float:
        k = _check_index(k)
        e = -self.q**2 / (k + self.l + 1) ** 2
        if self.shifted:
            e += self.q**2 / (self.l + 1) ** 2
        return e

    def eigenpair(self, k: int, require_normalizable: bool = True) -> EigenPair:
        return coulomb_eigenpair(self, k, require_normalizable)

    def with_l(self, l: float) -> CoulombParams:
        return CoulombParams(l, self.q, self.shifted)


def oscillator_potential(p: OscillatorParams) -> ScalarFunction:
    x = _x()
    v = (p.b**2 / 4.0) * x * x + p.l * (p.l + 1) * x**-2
    if p.shifted:
        v = v - p.b * (p.l + 1.5)
    return v.renamed(f"V_osc[l={p.l:g}, b={p.b:g}]")


def coulomb_potential(p: CoulombParams) -> ScalarFunction:
    x = _x()
    v = 2.0 * p.q * x**-1 + p.l * (p.l + 1) * x**-2
    if p.shifted:
        v = v + p.q**2 / (p.l + 1) ** 2
    return v.renamed(f"V_coul[l={p.l:g}, q={p.q:g}]")


def oscillator_wavefunction(l: float, b: float, k: int) -> ScalarFunction:
    x = _x()
    norm = math.sqrt(gamma_fn(k + 1) / gamma_fn(k + l + 1.5)) * (b ** (2 * l + 3) / 2 ** (2 * l + 1)) ** 0.25
    f = norm * x ** (l + 1) * exp(-(b / 4.0) * x * x)
    if k:
        f = f * laguerre_of(k, l + 0.5, (b / 2.0) * x * x)
    return f.renamed(f"zeta_osc[k={k}, l={l:g}, b={b:g}]")


def coulomb_wavefunction(l: float, q: float, k: int) -> ScalarFunction:
    """Closed-form Coulomb-like eigenfunction.

    Absolute values of Gamma(2l+2+k) and of k+l+1 keep the prefactor real on
    the branch l in (-3/2, -1); there it still normalizes the k = 0 state.
    """
    x = _x()
    n = k + l + 1
    norm = (
        math.sqrt(gamma_fn(k + 1) / abs(gamma_fn(2 * l + 2 + k)))
        * 2 ** (l + 1)
        * abs(q) ** (l + 1.5)
        / abs(n) ** (l + 2)
    )
    f = norm * x ** (l + 1) * exp((q / n) * x)
    if k:
        f = f * laguerre_of(k, 2 * l + 1, (-2.0 * q / n) * x)
    return f.renamed(f"zeta_coul[k={k}, l={l:g}, q={q:g}]")


def oscillator_eigenpair(p: OscillatorParams, k: int) -> EigenPair:
    k = _check_index(k)
    return EigenPair(k, p.energy(k), oscillator_wavefunction(p.l, p.b, k), True)


def coulomb_eigenpair(p: CoulombParams, k: int, require_normalizable: bool = True) -> EigenPair:
    k = _check_index(k)
    ok = p.is_normalizable(k)
    if require_normalizable and not ok:
        raise NotNormalizable(
            f"no square-integrable state k={k} for l={p.l}, q={p.q}: need "
            "(-3/2 < l < -1, q > 0, k = 0) or (l > -1, q < 0)"
        )
    return EigenPair(k, p.energy(k), coulomb_wavefunction(p.l, p.q, k), ok)
