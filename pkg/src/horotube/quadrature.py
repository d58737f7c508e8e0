"""Adaptive numerical integration.

Three entry points: 1D adaptive Gauss-Kronrod panels with error control
(``integrate_1d``), integration over the upper half-plane against the
hyperbolic area element with decay-driven truncation
(``integrate_hyperbolic``), and the radial reduction for distance-only
integrands (``integrate_radial``).

Integrands must be vectorized: they receive numpy arrays of abscissae and
return arrays of values, and must be side-effect-free (panels may be
evaluated in any order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Callable

import numpy as np

from .plane import DomainError, HPoint

# 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1].
_XK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])          # 15 ascending nodes
_KW = np.concatenate([_WK[:-1], _WK[::-1]])              # Kronrod weights
_GW = np.zeros(15)
_GW[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])      # Gauss weights (odd slots)


class AccuracyError(RuntimeError):
    """Requested tolerance not reached; carries the best estimate."""

    def __init__(self, message: str, result: "QuadratureResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    truncation_margin: float = 3.0

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    truncation_radius: float = 0.0

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise DomainError("error_estimate must be >= 0")


def _panel(f, a: float, b: float) -> tuple[complex, float, int]:
    """Gauss-Kronrod value and error estimate on [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(mid + half * _NODES))
    k = half * np.sum(_KW * fx)
    g = half * np.sum(_GW * fx)
    resk = abs(complex(k - g))
    # standard Kronrod error model: sharper than the raw difference
    scale = half * float(np.sum(_KW * np.abs(fx - k / (b - a))))
    err = resk
    if scale > 0.0 and resk > 0.0:
        err = scale * min(1.0, (200.0 * resk / scale) ** 1.5)
    return complex(k), err, 15


def integrate_1d(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
    decay_rate: float | None = None,
) -> QuadratureResult:
    """Adaptive panel integration of a vectorized integrand on [a, b].

    ``b`` may be ``inf`` if the caller certifies |f(u)| <~ e^{-decay_rate*u}
    and passes the rate; the interval is then truncated where the tail bound
    drops ``truncation_margin`` e-foldings below ``abs_tol``.
    """
    trunc = 0.0
    if math.isinf(b):
        if decay_rate is None or decay_rate <= 0.0:
            raise DomainError("infinite interval requires a positive decay_rate")
        b = a + (math.log(10.0 / (decay_rate * spec.abs_tol)) + spec.truncation_margin) / decay_rate
        trunc = b
    if not (a < b):
        raise DomainError(f"integrate_1d requires a < b, got [{a}, {b}]")

    val, err, n = _panel(f, a, b)
    heap = [(-err, a, b, val, err)]
    total_val, total_err, total_abs = val, err, abs(val)
    evals = n

    def target() -> float:
        # no subdivision can push the error below the rounding noise of the
        # accumulated panel magnitudes, so that floor is part of the target
        return max(spec.abs_tol, spec.rel_tol * abs(total_val), 5e-15 * total_abs)

    for _ in range(spec.max_subdivisions):
        if total_err <= target():
            return QuadratureResult(total_val, total_err, evals, trunc)
        neg_err, pa, pb, pval, perr = heappop(heap)
        pm = 0.5 * (pa + pb)
        lv, le, ln_ = _panel(f, pa, pm)
        rv, re, rn = _panel(f, pm, pb)
        evals += ln_ + rn
        total_val += lv + rv - pval
        # the running sums can cancel slightly below zero in floating point
        total_err = max(total_err + le + re - perr, 0.0)
        total_abs = max(total_abs + abs(lv) + abs(rv) - abs(pval), 0.0)
        heappush(heap, (-le, pa, pm, lv, le))
        heappush(heap, (-re, pm, pb, rv, re))
    if total_err <= target():
        return QuadratureResult(total_val, total_err, evals, trunc)
    best = QuadratureResult(total_val, total_err, evals, trunc)
    raise AccuracyError(
        f"1D quadrature: error {total_err:.3e} after {spec.max_subdivisions} subdivisions",
        best,
    )


def integrate_radial(
    g: Callable[[np.ndarray], np.ndarray],
    c_decay: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> QuadratureResult:
    """Integral over [1, inf) of a function of u = cosh r decaying like
    e^{-c_decay * u}."""
    if c_decay <= 0.0:
        raise DomainError("integrate_radial requires c_decay > 0")
    return integrate_1d(g, 1.0, math.inf, spec, decay_rate=c_decay)


def truncation_cosh_radius(decay_rate: float, spec: QuadratureSpec) -> float:
    """cosh R for the half-plane truncation ball: chooses R so that the
    analytic tail bound 2*pi*e^{-decay_rate*cosh R}/decay_rate is a factor
    exp(truncation_margin) below abs_tol/10."""
    if decay_rate <= 0.0:
        raise DomainError("decay_rate must be positive")
    return 1.0 + (
        math.log(20.0 * math.pi / (decay_rate * spec.abs_tol)) + spec.truncation_margin
    ) / decay_rate


def integrate_hyperbolic(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    center: HPoint,
    decay_rate: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> QuadratureResult:
    """Integral of f over the upper half-plane against dA = dx dy / y^2.

    The caller certifies |f| <= C e^{-decay_rate * cosh dist(z, center)} up to
    slow factors; the domain is truncated to the hyperbolic ball around the
    center whose Euclidean footprint is the disk of center
    (x0, y0 cosh R) and radius y0 sinh R.  Iterated adaptive panels: outer in
    y, inner in x, with the 1/y^2 weight folded into the integrand.
    """
    if decay_rate <= 0.0:
        raise DomainError("integrate_hyperbolic requires decay_rate > 0")
    cosh_r = truncation_cosh_radius(decay_rate, spec)
    sinh_r = math.sqrt(cosh_r * cosh_r - 1.0)
    x0, y0 = center.x, center.y
    yc = y0 * cosh_r
    rad = y0 * sinh_r
    y_lo, y_hi = yc - rad, yc + rad
    evals = 0

    inner_spec = QuadratureSpec(
        rel_tol=max(spec.rel_tol / 10.0, 1e-14),
        abs_tol=spec.abs_tol / max(10.0 * (y_hi - y_lo), 1.0),
        max_subdivisions=spec.max_subdivisions,
    )

    def outer(ys: np.ndarray) -> np.ndarray:
        nonlocal evals
        out = np.empty(len(ys), dtype=complex)
        for i, y in enumerate(ys):
            half_w = math.sqrt(max(rad * rad - (y - yc) ** 2, 0.0))
            if half_w <= 0.0:
                out[i] = 0.0
                continue
            r = integrate_1d(
                lambda xs, y=y: np.asarray(f(xs, np.full_like(xs, y))) / (y * y),
                x0 - half_w,
                x0 + half_w,
                inner_spec,
            )
            evals += r.evaluations
            out[i] = r.value
        return out

    res = integrate_1d(outer, y_lo, y_hi, spec)
    return QuadratureResult(res.value, res.error_estimate, evals, cosh_r)
