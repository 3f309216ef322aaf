"""Real scalar functions on unions of open intervals.

A :class:`ScalarFunction` is an immutable evaluator.  Arithmetic between
functions builds new evaluators and, when every operand knows its own
derivative, the derivative of the result is assembled from the operands'
derivatives (product rule, quotient rule, chain rule for powers, ``exp``,
``log`` and Laguerre compositions).  Anything without an analytic derivative
falls back to finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError

DEFAULT_WINDOW = (1e-6, 60.0)
GUARD_BAND = 1e-4
SCAN_SPAN_CAP = 100.0
SCAN_POINTS = 1000
ROOT_RTOL = 1e-12

ArrayLike = "float | np.ndarray"


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; either end may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi) or not lo < hi:
            raise DomainError(f"invalid interval ({self.lo}, {self.hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def span(self) -> float:
        return self.hi - self.lo

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x):
        return (np.asarray(x) > self.lo) & (np.asarray(x) < self.hi)

    def clip(self, window: tuple[float, float] | None = None) -> Interval | None:
        """Finite sub-interval used for sampling; ``None`` if nothing is left."""
        wlo, whi = window if window is not None else DEFAULT_WINDOW
        lo = max(self.lo, wlo) if math.isfinite(wlo) else self.lo
        hi = min(self.hi, whi) if math.isfinite(whi) else self.hi
        if not math.isfinite(lo):
            lo = hi - (whi - wlo)
        if not math.isfinite(hi):
            hi = lo + (whi - wlo)
        if not lo < hi:
            return None
        return Interval(lo, hi)

    def grid(self, n: int, log: bool | None = None) -> np.ndarray:
        """``n`` strictly interior points (log-spaced on long positive intervals)."""
        if not self.is_finite:
            raise DomainError("grid() needs a finite interval; clip() first")
        if log is None:
            log = self.lo > 0 and self.hi / self.lo > 10.0
        if log:
            pts = np.geomspace(self.lo, self.hi, n + 2)[1:-1]
        else:
            pts = np.linspace(self.lo, self.hi, n + 2)[1:-1]
        return pts

    def __repr__(self):
        return f"({self.lo:g}, {self.hi:g})"


def _as_interval(obj) -> Interval:
    if isinstance(obj, Interval):
        return obj
    lo, hi = obj
    return Interval(lo, hi)


@dataclass(frozen=True)
class Domain:
    """Ordered union of pairwise disjoint open intervals."""

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        ivs = tuple(sorted((_as_interval(i) for i in self.intervals), key=lambda i: i.lo))
        for left, right in zip(ivs, ivs[1:]):
            if right.lo < left.hi:
                raise DomainError(f"overlapping intervals {left} and {right}")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def of(cls, *pairs) -> Domain:
        return cls(tuple(_as_interval(p) for p in pairs))

    @classmethod
    def real_line(cls) -> Domain:
        return _REAL_LINE

    @classmethod
    def half_line(cls) -> Domain:
        return _HALF_LINE

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __repr__(self):
        return "Domain{" + ", ".join(repr(i) for i in self.intervals) + "}"

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for iv in self.intervals:
            out |= iv.contains(x)
        return out

    def component(self, x: float) -> Interval:
        for iv in self.intervals:
            if iv.lo < x < iv.hi:
                return iv
        raise DomainError(f"{x} is not inside {self!r}")

    def intersect(self, other: Domain) -> Domain:
        if other is self or other == self or other is _REAL_LINE:
            return self
        if self is _REAL_LINE:
            return other
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return Domain(tuple(out))

    def split_at(self, points: Iterable[float]) -> Domain:
        return self.excise(points, 0.0)

    def excise(self, points: Iterable[float], width: float = GUARD_BAND) -> Domain:
        """Remove ``[p - width, p + width]`` around each point (just ``p`` if width is 0)."""
        pts = sorted(float(p) for p in points)
        out = []
        for iv in self.intervals:
            pieces = [(iv.lo, iv.hi)]
            for p in pts:
                if not iv.lo < p < iv.hi:
                    continue
                nxt = []
                for lo, hi in pieces:
                    if hi <= p - width or lo >= p + width:
                        nxt.append((lo, hi))
                        continue
                    if lo < p - width:
                        nxt.append((lo, p - width))
                    if p + width < hi:
                        nxt.append((p + width, hi))
                pieces = nxt
            out.extend(Interval(lo, hi) for lo, hi in pieces if lo < hi)
        return Domain(tuple(out))

    def clipped(self, window: tuple[float, float] | None = None) -> list[Interval]:
        pieces = (iv.clip(window) for iv in self.intervals)
        return [p for p in pieces if p is not None]

    def sample(self, n: int, window: tuple[float, float] | None = None) -> np.ndarray:
        """About ``n`` interior sample points spread over all (clipped) intervals."""
        pieces = self.clipped(window)
        if not pieces:
            raise DomainError(f"no part of {self!r} lies inside window {window}")
        weights = []
        for p in pieces:
            if p.lo > 0 and p.hi / p.lo > 10.0:
                weights.append(math.log(p.hi / p.lo))
            else:
                weights.append(p.span)
        total = sum(weights)
        counts = [max(2, int(round(n * w / total))) for w in weights]
        return np.concatenate([p.grid(c) for p, c in zip(pieces, counts)])


_REAL_LINE = Domain((Interval(-math.inf, math.inf),))
_HALF_LINE = Domain((Interval(0.0, math.inf),))


def _coerce_domain(domain) -> Domain:
    if domain is None:
        return Domain.real_line()
    if isinstance(domain, Domain):
        return domain
    if isinstance(domain, Interval):
        return Domain((domain,))
    if isinstance(domain, tuple) and len(domain) == 2 and not isinstance(domain[0], (tuple, Interval)):
        return Domain((Interval(*domain),))
    return Domain(tuple(_as_interval(d) for d in domain))


class ScalarFunction:
    """Real function on a :class:`Domain`, evaluated vectorised over numpy arrays.

    ``deriv`` may be a plain callable (an analytic first derivative) or
    another :class:`ScalarFunction`.  Without it, :meth:`derivative` returns a
    finite-difference evaluator.
    """

    def __init__(self, eval: Callable, deriv=None, domain=None, *, name: str | None = None):
        self._eval = eval
        self.domain = _coerce_domain(domain)
        self.name = name
        self._const: float | None = None
        self._logd_thunk: Callable[[], ScalarFunction] | None = None
        if deriv is None:
            self._dthunk = None
        elif isinstance(deriv, ScalarFunction):
            self._dthunk = lambda: deriv
        else:
            self._dthunk = lambda: ScalarFunction(deriv, None, self.domain)

    @classmethod
    def _build(cls, eval, domain, dthunk=None, logd=None, const=None, name=None) -> ScalarFunction:
        f = cls.__new__(cls)
        f._eval = eval
        f.domain = domain
        f.name = name
        f._const = const
        f._logd_thunk = logd
        f._dthunk = dthunk
        return f

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self._eval(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        if arr.ndim == 0:
            return float(out)
        return out

    def __repr__(self):
        label = self.name or ("const" if self._const is not None else "fn")
        return f"<ScalarFunction {label} on {self.domain!r}>"

    @property
    def has_analytic_derivative(self) -> bool:
        return self._dthunk is not None

    @property
    def constant_value(self) -> float | None:
        return self._const

    @cached_property
    def _derivative(self) -> ScalarFunction:
        if self._dthunk is not None:
            return self._dthunk()
        return FiniteDifference(self, 1)

    def derivative(self) -> ScalarFunction:
        return self._derivative

    @cached_property
    def _log_derivative(self) -> ScalarFunction:
        if self._logd_thunk is not None:
            return self._logd_thunk()
        return self.derivative() / self

    def log_derivative(self) -> ScalarFunction:
        """f'/f, assembled factor by factor where the structure is known.

        Products, quotients, powers and exponentials never form f'/f
        directly, so the result stays finite where f itself under- or
        overflows.
        """
        return self._log_derivative

    def with_domain(self, domain) -> ScalarFunction:
        d = _coerce_domain(domain)
        parent = self
        return ScalarFunction._build(
            self._eval,
            d,
            lambda: parent.derivative().with_domain(d),
            lambda: parent.log_derivative().with_domain(d),
            self._const,
            self.name,
        )

    def renamed(self, name: str) -> ScalarFunction:
        return ScalarFunction._build(
            self._eval, self.domain, lambda: self.derivative(), lambda: self.log_derivative(), self._const, name
        )

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        return self._scaled(-1.0)

    def __pos__(self):
        return self

    def _scaled(self, c: float) -> ScalarFunction:
        c = float(c)
        if c == 1.0:
            return self
        if c == 0.0 or self._const is not None:
            return constant(c * (self._const if self._const is not None else 0.0), self.domain)
        f = self
        return ScalarFunction._build(
            lambda x: c * f._eval(x),
            f.domain,
            lambda: f.derivative()._scaled(c),
            lambda: f.log_derivative(),
        )

    def __add__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        f = self
        if g._const == 0.0:
            return f.with_domain(f.domain.intersect(g.domain)) if g.domain is not _REAL_LINE else f
        if f._const == 0.0:
            return g.with_domain(f.domain.intersect(g.domain)) if f.domain is not _REAL_LINE else g
        dom = f.domain.intersect(g.domain)
        if f._const is not None and g._const is not None:
            return constant(f._const + g._const, dom)
        return ScalarFunction._build(
            lambda x: f._eval(x) + g._eval(x),
            dom,
            lambda: f.derivative() + g.derivative(),
        )

    __radd__ = __add__

    def __sub__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        f = self
        if g._const is not None:
            out = f._scaled(g._const)
            return out if g.domain is _REAL_LINE else out.with_domain(out.domain.intersect(g.domain))
        if f._const is not None:
            out = g._scaled(f._const)
            return out if f.domain is _REAL_LINE else out.with_domain(out.domain.intersect(f.domain))
        return ScalarFunction._build(
            lambda x: f._eval(x) * g._eval(x),
            f.domain.intersect(g.domain),
            lambda: f.derivative() * g + f * g.derivative(),
            lambda: f.log_derivative() + g.log_derivative(),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        f = self
        if g._const is not None:
            if g._const == 0.0:
                raise ZeroDivisionError("division by the zero function")
            return f * (1.0 / g._const)
        if f._const == 0.0:
            return constant(0.0, f.domain.intersect(g.domain))
        return ScalarFunction._build(
            lambda x: f._eval(x) / g._eval(x),
            f.domain.intersect(g.domain),
            lambda: f.derivative() / g - f * g.derivative() / (g * g),
            lambda: f.log_derivative() - g.log_derivative(),
        )

    def __rtruediv__(self, other):
        g = _lift(other)
        if g is NotImplemented:
            return NotImplemented
        return g / self

    def __pow__(self, p):
        if isinstance(p, ScalarFunction):
            return NotImplemented
        return power(self, p)


def _lift(obj):
    if isinstance(obj, ScalarFunction):
        return obj
    if isinstance(obj, (int, float, np.floating, np.integer)):
        return constant(float(obj))
    return NotImplemented


# elementary builders -------------------------------------------------------


def make_function(eval: Callable, deriv: Callable | None = None, domain=None, *, name=None) -> ScalarFunction:
    """Wrap ``eval`` (and optionally its analytic derivative) on a non-empty domain."""
    dom = _coerce_domain(domain)
    if dom.is_empty:
        raise DomainError("make_function needs a non-empty domain")
    return ScalarFunction(eval, deriv, dom, name=name)


def derivative(f: ScalarFunction) -> ScalarFunction:
    return f.derivative()


def constant(c: float, domain=None) -> ScalarFunction:
    c = float(c)
    dom = _coerce_domain(domain)
    zero_d = lambda: constant(0.0, dom)
    return ScalarFunction._build(
        lambda x: np.full(np.shape(x), c),
        dom,
        zero_d,
        zero_d if c != 0.0 else None,
        const=c,
        name=f"{c:g}",
    )


def variable(domain=None) -> ScalarFunction:
    """The identity map x -> x."""
    dom = _coerce_domain(domain)
    return ScalarFunction._build(lambda x: x, dom, lambda: constant(1.0, dom), name="x")


def power(f: ScalarFunction, p: float) -> ScalarFunction:
    if f._const is not None:
        return constant(f._const**p, f.domain)
    if p == 0:
        return constant(1.0, f.domain)
    if p == 1:
        return f
    integral = float(p).is_integer()
    pi = int(p) if integral else None
    p = float(p)
    if integral:
        ev = lambda x: np.power(f._eval(x), float(pi)) if pi < 0 else f._eval(x) ** pi
    else:
        ev = lambda x: np.power(f._eval(x), p)
    return ScalarFunction._build(
        ev,
        f.domain,
        lambda: p * power(f, p - 1) * f.derivative(),
        lambda: p * f.log_derivative(),
    )


def sqrt(f: ScalarFunction) -> ScalarFunction:
    return power(f, 0.5)


def exp(f: ScalarFunction) -> ScalarFunction:
    if f._const is not None:
        return constant(math.exp(f._const), f.domain)
    out = ScalarFunction._build(lambda x: np.exp(f._eval(x)), f.domain)
    out._dthunk = lambda: out * f.derivative()
    out._logd_thunk = lambda: f.derivative()
    return out


def log(f: ScalarFunction) -> ScalarFunction:
    return ScalarFunction._build(lambda x: np.log(f._eval(x)), f.domain, lambda: f.log_derivative())


def sin(f: ScalarFunction) -> ScalarFunction:
    return ScalarFunction._build(lambda x: np.sin(f._eval(x)), f.domain, lambda: cos(f) * f.derivative())


def cos(f: ScalarFunction) -> ScalarFunction:
    return ScalarFunction._build(lambda x: np.cos(f._eval(x)), f.domain, lambda: -(sin(f) * f.derivative()))


def with_fallback(primary: ScalarFunction, backup: ScalarFunction) -> ScalarFunction:
    """``primary`` wherever it is finite, ``backup`` elsewhere; the two must agree as functions."""

    def ev(x):
        with np.errstate(all="ignore"):
            y = np.asarray(primary._eval(x), dtype=float)
            bad = ~np.isfinite(y)
            if np.any(bad):
                y = np.array(np.broadcast_to(y, np.shape(x)), dtype=float)
                y[bad] = np.broadcast_to(np.asarray(backup._eval(x), dtype=float), y.shape)[bad]
        return y

    return ScalarFunction._build(
        ev,
        primary.domain,
        lambda: with_fallback(primary.derivative(), backup.derivative()),
        lambda: primary.log_derivative(),
        name=primary.name,
    )


def laguerre_of(k: int, a: float, u: ScalarFunction) -> ScalarFunction:
    """x -> L_k^a(u(x)); d/du L_k^a = -L_{k-1}^{a+1}."""
    from .specfun import _laguerre

    if k == 0:
        return constant(1.0, u.domain)
    return ScalarFunction._build(
        lambda x: _laguerre(k, a, u._eval(x)),
        u.domain,
        lambda: -(laguerre_of(k - 1, a + 1, u) * u.derivative()),
        name=f"L_{k}^{a:g}",
    )


# finite differences ----------------------------------------------------------


def _containing_bounds(domain: Domain, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-point (lo, hi) of the interval holding x; nearest interval otherwise."""
    ivs = domain.intervals
    if len(ivs) == 1:
        return np.full(x.shape, ivs[0].lo), np.full(x.shape, ivs[0].hi)
    los = np.array([i.lo for i in ivs])
    his = np.array([i.hi for i in ivs])
    idx = np.clip(np.searchsorted(los, x, side="right") - 1, 0, len(ivs) - 1)
    return los[idx], his[idx]


def central_step(x):
    return np.maximum(1e-6, 1e-6 * np.abs(x))


class FiniteDifference(ScalarFunction):
    """n-th derivative of ``base`` by finite differences.

    Order 1: central difference, step max(1e-6, 1e-6|x|), switching to a
    second-order one-sided stencil next to an interval end.  Order 2: five-point
    central stencil with step 1e-4*max(1, |x|), capped at 1/50 of the distance
    to the nearest interval end.  Higher orders nest order 1 on top of order 2.
    """

    def __init__(self, base: ScalarFunction, order: int):
        self.base = base
        self.order = order
        super().__init__(self._fd_eval, None, base.domain, name=f"d{order}[{base.name or 'fn'}]")
        self._dthunk = self._next

    def _next(self) -> ScalarFunction:
        if self.order == 1:
            return FiniteDifference(self.base, 2)
        return FiniteDifference(self, 1)

    def _fd_eval(self, x):
        x = np.asarray(x, dtype=float)
        f = self.base._eval
        lo, hi = _containing_bounds(self.domain, x)
        if self.order == 1:
            h = central_step(x)
            room = np.minimum(x - lo, hi - x)
            out = np.empty(np.shape(x))
            central = room > h
            fwd = ~central & (x - lo < hi - x)
            bwd = ~central & ~fwd
            if np.any(central):
                xc, hc = x[central], h[central]
                out[central] = (f(xc + hc) - f(xc - hc)) / (2 * hc)
            if np.any(fwd):
                xf = x[fwd]
                hf = np.minimum(h[fwd], (hi[fwd] - xf) / 2.5)
                out[fwd] = (-3 * f(xf) + 4 * f(xf + hf) - f(xf + 2 * hf)) / (2 * hf)
            if np.any(bwd):
                xb = x[bwd]
                hb = np.minimum(h[bwd], (xb - lo[bwd]) / 2.5)
                out[bwd] = (3 * f(xb) - 4 * f(xb - hb) + f(xb - 2 * hb)) / (2 * hb)
            return out
        h = 1e-4 * np.maximum(1.0, np.abs(x))
        room = np.minimum(x - lo, hi - x)
        # near an end the step scales with the distance to it; a small
        # fraction keeps truncation low for power-law behaviour there
        h = np.minimum(h, room / 50.0)
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def second_derivative_fd(f: ScalarFunction, x) -> np.ndarray:
    """Five-point second difference of ``f`` at ``x``, ignoring any analytic derivative."""
    return FiniteDifference(f, 2)(x)


# zeros and sign intervals -----------------------------------------------------


def _scan_points(iv: Interval) -> np.ndarray:
    lo, hi = iv.lo, iv.hi
    if not math.isfinite(lo) and not math.isfinite(hi):
        lo, hi = -SCAN_SPAN_CAP / 2, SCAN_SPAN_CAP / 2
    elif not math.isfinite(hi):
        hi = lo + SCAN_SPAN_CAP
    elif not math.isfinite(lo):
        lo = hi - SCAN_SPAN_CAP
    span = hi - lo
    pts = [np.linspace(lo, hi, SCAN_POINTS + 2)[1:-1]]
    # resolve roots crowding a finite end (e.g. the origin of a half-line)
    offsets = span * np.geomspace(1e-9, 2e-3, 60)
    if math.isfinite(iv.lo):
        pts.append(iv.lo + offsets)
    if math.isfinite(iv.hi):
        pts.append(iv.hi - offsets)
    pts = np.unique(np.concatenate(pts))
    return pts[(pts > iv.lo) & (pts < iv.hi)]


def find_zeros(f: ScalarFunction, domain: Domain | None = None) -> list[float]:
    """Sign changes of ``f`` located by scanning and refined by bracketing."""
    dom = f.domain if domain is None else domain
    roots: list[float] = []
    scalar = lambda t: float(f(t))
    for iv in dom.intervals:
        xs = _scan_points(iv)
        with np.errstate(all="ignore"):
            vals = f(xs)
        ok = np.isfinite(vals) & (vals != 0.0)
        xs, vals = xs[ok], vals[ok]
        if xs.size < 2:
            continue
        flips = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        for i in flips:
            a, b = xs[i], xs[i + 1]
            r = brentq(scalar, a, b, xtol=1e-300, rtol=ROOT_RTOL, maxiter=500)
            roots.append(float(r))
    return roots


def restrict_to_sign_intervals(f: ScalarFunction) -> Domain:
    """Split ``f.domain`` at the detected zeros of ``f``."""
    return f.domain.split_at(find_zeros(f))
