"""Numerical oracles: adaptive quadrature, residual sweeps, inner products."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DegenerateInput
from .fnspace import DEFAULT_WINDOW, Domain, Interval, ScalarFunction, second_derivative_fd

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15)
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KW = np.concatenate([_WK[:-1], _WK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_depth: int = 200
    window: Interval = field(default_factory=lambda: Interval(0.0, math.inf))

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if not isinstance(self.window, Interval):
            object.__setattr__(self, "window", Interval(*self.window))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    tail: float
    segments: int


def _rule(g, a: float, b: float):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = g(c + h * _NODES)
    k = h * float(np.dot(_KW, y))
    gs = h * float(np.dot(_GW, y))
    if not np.all(np.isfinite(y)):
        return k, math.inf
    return k, abs(k - gs)


def _adaptive(g, pieces, abs_tol, rel_tol, max_depth, max_segments=20000):
    heap = []
    total = 0.0
    err = 0.0
    for a, b in pieces:
        val, e = _rule(g, a, b)
        total += val
        err += e
        heapq.heappush(heap, (-e, a, b, val, 0))
    frozen_err = 0.0
    segments = len(heap)
    while heap and err > max(abs_tol, rel_tol * abs(total)):
        neg_e, a, b, val, depth = heapq.heappop(heap)
        if depth >= max_depth or segments >= max_segments:
            frozen_err += -neg_e
            continue
        m = 0.5 * (a + b)
        v1, e1 = _rule(g, a, m)
        v2, e2 = _rule(g, m, b)
        total += v1 + v2 - val
        err += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, a, m, v1, depth + 1))
        heapq.heappush(heap, (-e2, m, b, v2, depth + 1))
        segments += 1
    if err > max(abs_tol, rel_tol * abs(total)) or not math.isfinite(total):
        raise ConvergenceError("adaptive quadrature exhausted max_depth", total, err)
    return total, err, segments


def quadrature(f, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Adaptive Gauss-Kronrod (7/15) over ``spec.window``; endpoints are never evaluated.

    An infinite end is split at the default evaluation window edge; the
    piece beyond it is integrated exactly through ``x = X + t/(1-t)`` and
    returned separately as ``tail``.
    """
    spec = spec or QuadratureSpec()
    ev = f._eval if isinstance(f, ScalarFunction) else (lambda x: np.asarray(f(x), dtype=float))
    lo, hi = spec.window.lo, spec.window.hi
    cut = DEFAULT_WINDOW[1]

    def finite(a, b):
        return _adaptive(ev, [(a, b)], spec.abs_tol, spec.rel_tol, spec.max_depth)

    def upper_tail(x0):
        g = lambda t: np.where(t < 1.0, ev(x0 + t / (1.0 - t)) / (1.0 - t) ** 2, 0.0)
        return _adaptive(g, [(0.0, 1.0)], spec.abs_tol, spec.rel_tol, spec.max_depth)

    def lower_tail(x0):
        g = lambda t: np.where(t < 1.0, ev(x0 - t / (1.0 - t)) / (1.0 - t) ** 2, 0.0)
        return _adaptive(g, [(0.0, 1.0)], spec.abs_tol, spec.rel_tol, spec.max_depth)

    tail = 0.0
    err = 0.0
    segs = 0
    if math.isfinite(lo) and math.isfinite(hi):
        body, err, segs = finite(lo, hi)
    elif math.isfinite(lo):
        split = max(cut, lo + cut) if lo >= cut else cut
        body, e1, s1 = finite(lo, split)
        tail, e2, s2 = upper_tail(split)
        err, segs = e1 + e2, s1 + s2
    elif math.isfinite(hi):
        split = min(-cut, hi - cut) if hi <= -cut else -cut
        body, e1, s1 = finite(split, hi)
        tail, e2, s2 = lower_tail(split)
        err, segs = e1 + e2, s1 + s2
    else:
        body, e1, s1 = finite(-cut, cut)
        t1, e2, s2 = upper_tail(cut)
        t2, e3, s3 = lower_tail(-cut)
        tail = t1 + t2
        err, segs = e1 + e2 + e3, s1 + s2 + s3
    return QuadratureResult(body + tail, err, tail, segs)


def integrate(f, spec: QuadratureSpec | None = None) -> float:
    return quadrature(f, spec).value


def inner_product(f: ScalarFunction, g: ScalarFunction, spec: QuadratureSpec | None = None) -> float:
    return integrate(f * g, spec)


def norm_squared(f: ScalarFunction, spec: QuadratureSpec | None = None) -> float:
    return integrate(f * f, spec)


def gram_matrix(funcs, spec: QuadratureSpec | None = None) -> np.ndarray:
    n = len(funcs)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = inner_product(funcs[i], funcs[j], spec)
    return out


def decay_cutoff(f: ScalarFunction, start: float = DEFAULT_WINDOW[1], rel: float = 1e-18) -> float:
    """Smallest start * 2^m beyond which |f|^2 (sampled) is below ``rel`` of its peak."""
    probe = np.geomspace(1e-3, start, 400)
    peak = float(np.nanmax(np.abs(f(probe)) ** 2))
    x = start
    for _ in range(30):
        tail = np.linspace(x, 2 * x, 200)
        vals = np.abs(f(tail)) ** 2 * tail
        if float(np.nanmax(vals)) <= rel * max(peak, 1e-300):
            return x
        x *= 2
    return x


@dataclass(frozen=True)
class ResidualSweep:
    grid_size: int
    max_abs: float
    max_rel: float
    worst_x: float


def schrodinger_residual(V: ScalarFunction, E: float, phi: ScalarFunction, x) -> np.ndarray:
    """-phi'' + (V - E) phi with phi'' from a five-point stencil on phi's values."""
    x = np.asarray(x, dtype=float)
    return -second_derivative_fd(phi, x) + (V(x) - E) * phi(x)


def schrodinger_residual_sweep(
    V: ScalarFunction,
    E: float,
    phi: ScalarFunction,
    grid_size: int = 500,
    window: tuple[float, float] | None = None,
    domain: Domain | None = None,
) -> ResidualSweep:
    """Residual of -phi'' + (V - E) phi over a (log-spaced on half-lines) grid.

    ``max_rel`` divides by max|phi| * (1 + max|V - E|) taken over the sweep.
    """
    dom = domain if domain is not None else phi.domain.intersect(V.domain)
    xs = dom.sample(grid_size, window)
    with np.errstate(all="ignore"):
        ph = phi(xs)
        if not np.any(np.abs(ph) > 0):
            raise DegenerateInput("wavefunction vanishes on the whole sweep")
        res = schrodinger_residual(V, E, phi, xs)
        shift = V(xs) - E
    ok = np.isfinite(res)
    if not np.all(ok):
        return ResidualSweep(xs.size, math.inf, math.inf, float(xs[~ok][0]))
    i = int(np.argmax(np.abs(res)))
    scale = float(np.max(np.abs(ph))) * (1.0 + float(np.max(np.abs(shift))))
    max_abs = float(abs(res[i]))
    return ResidualSweep(xs.size, max_abs, max_abs / scale, float(xs[i]))
