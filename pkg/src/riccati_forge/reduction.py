"""Log-derivative reduction between Schroedinger and Riccati equations.

With w = +phi'/phi the equation -phi'' + (V - E) phi = 0 becomes
w' = -w^2 + (V - E); with w = -phi'/phi it becomes w' = w^2 - (V - E).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput
from .fnspace import ScalarFunction, constant, restrict_to_sign_intervals
from .riccati import RiccatiEquation


class SignConvention(enum.Enum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class SchrodingerProblem:
    potential: ScalarFunction
    energy: float

    @property
    def shift(self) -> ScalarFunction:
        """V - E."""
        return self.potential - self.energy


def _is_zero_on_window(phi: ScalarFunction) -> bool:
    xs = phi.domain.sample(400)
    with np.errstate(all="ignore"):
        vals = phi(xs)
    return not np.any(np.abs(vals) > 0)


def log_derivative(phi: ScalarFunction, sign: SignConvention = SignConvention.PLUS) -> ScalarFunction:
    """+-phi'/phi on the intervals between zeros of phi."""
    if phi.constant_value == 0.0 or _is_zero_on_window(phi):
        raise DegenerateInput("cannot take the log-derivative of the zero function")
    dom = restrict_to_sign_intervals(phi)
    w = phi.log_derivative().with_domain(dom)
    return w if sign is SignConvention.PLUS else -w


def schrodinger_to_riccati(p: SchrodingerProblem, sign: SignConvention = SignConvention.PLUS) -> RiccatiEquation:
    shift = p.shift
    one = constant(1.0, shift.domain)
    if sign is SignConvention.PLUS:
        return RiccatiEquation(-one, 0.0 * one, shift)
    return RiccatiEquation(one, 0.0 * one, -shift)


def _gk_integral(f, a: float, b: float) -> float:
    from .verify import _adaptive

    if a == b:
        return 0.0
    sgn = 1.0
    if b < a:
        a, b, sgn = b, a, -1.0
    val, _, _ = _adaptive(f, [(a, b)], 1e-14, 1e-13, 60)
    return sgn * val


def reconstruct_wavefunction(w: ScalarFunction, x0: float) -> ScalarFunction:
    """x -> exp(integral_{x0}^x w) on the component of ``w``'s domain containing ``x0``.

    The anchor fixes the free multiplicative constant: the result equals 1 at x0.
    """
    x0 = float(x0)
    comp = w.domain.component(x0)  # raises DomainError outside
    ev = w._eval

    def log_phi(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full(x.shape, np.nan)
        inside = (x > comp.lo) & (x < comp.hi)
        if not np.any(inside):
            return out
        xs = x[inside]
        order = np.argsort(xs)
        sorted_x = xs[order]
        vals = np.empty_like(sorted_x)
        # integrate outward from the anchor, segment by segment
        right = np.nonzero(sorted_x >= x0)[0]
        left = np.nonzero(sorted_x < x0)[0][::-1]
        for idx in (right, left):
            acc = 0.0
            prev = x0
            for i in idx:
                acc += _gk_integral(ev, prev, sorted_x[i])
                prev = sorted_x[i]
                vals[i] = acc
        res = np.empty_like(vals)
        res[order] = vals
        out[inside] = res
        return out

    def ev_phi(x):
        arr = np.asarray(x, dtype=float)
        return np.exp(log_phi(arr)).reshape(arr.shape)

    wc = w.with_domain(comp)
    phi = ScalarFunction._build(ev_phi, wc.domain, name="reconstructed")
    phi._dthunk = lambda: wc * phi
    phi._logd_thunk = lambda: wc
    return phi


def second_order_residual(p: SchrodingerProblem, phi: ScalarFunction, x):
    from .verify import schrodinger_residual

    return schrodinger_residual(p.potential, p.energy, phi, x)

