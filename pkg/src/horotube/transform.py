"""Selberg-type transform S(eta, tau, s) by three routes (2D half-plane
quadrature, 1D radial formula with a Gauss hypergeometric density, and a
steepest-descent asymptote), analytic continuation of eigenfunctions into the
tube, and the slice weight B(P).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .kernel import (
    B0,
    c_param,
    complex_critical_point,
    phi_field,
    phi_max,
    phi_max_exact,
)
from .plane import DomainError, HPoint, SpectralParams
from .quadrature import (
    AccuracyError,
    QuadratureResult,
    QuadratureSpec,
    integrate_1d,
    integrate_hyperbolic,
    integrate_radial,
)
from .tube import CPoint, TubeError, tube_coords_from_point

# Constant linking the 1D radial formula to the 2D half-plane definition of
# the transform: 2*pi from the circle of directions, and a phase e^{i*pi*tau}
# from the principal-branch gauge factor at the antipodal direction (verified
# against the 2D route over a (tau mod 1) sweep).
def _formula_const(tau: float) -> complex:
    return 2.0 * math.pi * cmath.exp(1j * math.pi * tau)

ROUTE_FORMULA_MAX_TAU = 10.0
ROUTE_QUADRATURE_MAX_TAU = 200.0
HYP2F1_MAX_TERMS = 100_000
_HYP2F1_CANCEL_LIMIT = 1e8  # max-term / result ratio before mpmath fallback


class RouteUnavailableError(DomainError):
    """Requested transform route is outside its validity guard."""


@dataclass(frozen=True)
class Mollifier:
    """Smooth nonnegative bump supported in [t1, t2]: the standard
    exp(-1/(1-u^2)) profile rescaled to the interval."""

    t1: float
    t2: float

    def __post_init__(self):
        if not (0.0 < self.t1 < self.t2 < 1.0):
            raise DomainError("Mollifier requires 0 < t1 < t2 < 1")

    def __call__(self, eta):
        eta = np.asarray(eta, dtype=float)
        u = (2.0 * eta - (self.t1 + self.t2)) / (self.t2 - self.t1)
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class STransformResult:
    value: complex
    route: str  # quadrature2d | formula1d | laplace
    params: tuple[float, float, float]  # (eta, tau, s)
    error_estimate: float
    log_abs: float = field(default=0.0)  # log|value|, finite even when value underflows
    b3_estimate: float | None = None

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise DomainError("error_estimate must be >= 0")


def hyp2f1(a: complex, b: complex, c: complex, x: float) -> complex:
    """Gauss hypergeometric function for real x in [0, 1).

    Direct series with a cancellation monitor; falls back to arbitrary
    precision when intermediate terms exceed the result by more than the
    double-precision cancellation budget.
    """
    if not (0.0 <= x < 1.0):
        raise DomainError(f"hyp2f1 requires x in [0, 1), got {x}")
    cc = complex(c)
    if cc.imag == 0.0 and cc.real <= 0.0 and cc.real == int(cc.real):
        raise DomainError("hyp2f1 pole: c is a nonpositive integer")
    if x == 0.0:
        return 1.0 + 0j
    term = 1.0 + 0j
    total = 1.0 + 0j
    max_term = 1.0
    for k in range(HYP2F1_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * x
        total += term
        max_term = max(max_term, abs(term))
        if abs(term) <= 1e-17 * max(abs(total), 1e-300):
            break
    else:
        raise AccuracyError(
            "hyp2f1 series did not converge",
            QuadratureResult(total, abs(term), HYP2F1_MAX_TERMS),
        )
    if max_term > _HYP2F1_CANCEL_LIMIT * max(abs(total), 1e-300):
        with mpmath.workdps(30 + int(math.log10(max_term / max(abs(total), 1e-300)))):
            v = mpmath.hyp2f1(a, b, c, x)
            return complex(v)
    return total


def spherical_density(s: float, tau: float, u) -> np.ndarray:
    """P_{s,tau} as a function of u = cosh r: (1-w)^st * 2F1(st-tau, st+tau, 1; w)
    with w = tanh^2(r/2) = (u-1)/(u+1) and st the principal root of
    st*(st-1) = -s^2."""
    st = SpectralParams(tau, s).s_tilde
    u = np.atleast_1d(np.asarray(u, dtype=float))
    w = (u - 1.0) / (u + 1.0)
    out = np.empty(u.shape, dtype=complex)
    for i, wi in enumerate(w):
        out[i] = (1.0 - wi) ** st * hyp2f1(st - tau, st + tau, 1.0, float(wi))
    return out


def selberg_S_formula(
    eta: float, tau: float, s: float, spec: QuadratureSpec = QuadratureSpec()
) -> STransformResult:
    """1D radial route: 2*pi * integral over [1, inf) of
    e^{-tau*c_eta*u} * P_{s,tau}(r(u)) du."""
    if tau > 30.0:
        raise RouteUnavailableError("formula route guarded to tau <= 30")
    c = c_param(eta)
    rate = max(tau, 1.0) * c

    def g(u: np.ndarray) -> np.ndarray:
        return np.exp(-tau * c * u) * spherical_density(s, tau, u)

    res = integrate_radial(g, rate, spec)
    value = _formula_const(tau) * res.value
    la = math.log(abs(value)) if value != 0 else -math.inf
    return STransformResult(
        value, "formula1d", (eta, tau, s), 2.0 * math.pi * res.error_estimate, la
    )


def selberg_S_quadrature(
    eta: float, tau: float, s: float, spec: QuadratureSpec = QuadratureSpec()
) -> STransformResult:
    """2D route: integral over the half-plane of y^st * exp(tau*Phi_eta(z, i))
    against the hyperbolic area element."""
    if tau <= 0.0:
        raise DomainError("quadrature route requires tau > 0")
    st = SpectralParams(tau, s).s_tilde
    c = c_param(eta)
    center = HPoint(0.0, 1.0)
    P = CPoint.from_hpoint(center)
    # peel off the exponential scale to avoid underflow:
    # |exp(tau*Phi)| <= exp(-tau*c) since cosh >= 1 and |gauge factor| = 1
    # for a real basepoint
    shift = -tau * c
    def f(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.exp(st * np.log(y) + tau * phi_field(x, y, P, eta) - shift)

    res = integrate_hyperbolic(f, center, tau * c, spec)
    if res.value == 0:
        raise AccuracyError("transform quadrature underflowed to zero", res)
    log_abs = math.log(abs(res.value)) + shift
    value = cmath.exp(cmath.log(res.value) + shift) if log_abs > -700 else 0.0
    err = res.error_estimate * math.exp(min(shift, 0.0))
    return STransformResult(value, "quadrature2d", (eta, tau, s), err, log_abs)


def laplace_asymptote_S(eta: float, tau: float, s: float) -> STransformResult:
    """Leading steepest-descent term at the interior critical point of the
    holomorphic phase; exact exponential rate phi(eta, eta, pi)."""
    if tau <= 0.0:
        raise DomainError("laplace route requires tau > 0")
    st = SpectralParams(tau, s).s_tilde
    Pstar, H = complex_critical_point(eta)
    det = np.linalg.det(-tau * H)
    phi_crit = _phi_at_critical(eta, Pstar)
    log_value = (
        math.log(2.0 * math.pi)
        - 0.5 * cmath.log(det)
        + tau * phi_crit
        + st * cmath.log(Pstar.Y)
    )
    log_abs = log_value.real
    value = cmath.exp(log_value) if log_abs > -700 else 0.0
    b3 = math.exp(log_abs + math.log(tau) - tau * phi_max_exact(eta, math.pi))
    return STransformResult(
        value, "laplace", (eta, tau, s), 0.0, log_abs, b3_estimate=b3
    )


def _phi_at_critical(eta: float, P: CPoint) -> complex:
    from .kernel import _phi_value

    return _phi_value(1j, P.Z, P.Zt, c_param(eta))


def selberg_S(
    eta: float, tau: float, s: float, spec: QuadratureSpec = QuadratureSpec()
) -> STransformResult:
    """Route selector: formula for tau <= 10, quadrature for 10 < tau <= 200,
    steepest-descent asymptote beyond."""
    if tau <= ROUTE_FORMULA_MAX_TAU:
        return selberg_S_formula(eta, tau, s, spec)
    if tau <= ROUTE_QUADRATURE_MAX_TAU:
        return selberg_S_quadrature(eta, tau, s, spec)
    return laplace_asymptote_S(eta, tau, s)


def continue_eigenfunction(
    u: Callable[[np.ndarray, np.ndarray], np.ndarray],
    eta: float,
    tau: float,
    P: CPoint,
    spec: QuadratureSpec = QuadratureSpec(),
) -> complex:
    """Analytic continuation v(P) = integral of u(z) exp(tau*Phi_eta(z, P))
    over the half-plane.  For an eigenfunction u this equals
    S(eta, tau, s) times the continuation of u to P.

    The integrand is vectorized: u(x_array, y_array) -> complex array.
    """
    hc = tube_coords_from_point(P)  # raises TubeError outside the tube
    c = c_param(eta)
    Y1 = P.Y.real
    # Re cosh_c(z, P) = cosh dist(z, zc) - t^2 |Y|^2 / (2 y Y1) with the
    # Euclidean center below; the residual is bounded by t^2 cosh dist, so
    # the decay rate (1 - t^2) * tau * c is certified.
    xc = P.X.real + P.X.imag * P.Y.imag / Y1
    yc = Y1 + P.Y.imag ** 2 / Y1
    center = HPoint(xc, yc)
    rate = tau * c * (1.0 - hc.t ** 2)
    if rate <= 0.0:
        raise DomainError("decay certificate vanished: P on the tube boundary")

    def f(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.asarray(u(x, y)) * np.exp(tau * phi_field(x, y, P, eta))

    res = integrate_hyperbolic(f, center, rate, spec)
    return complex(res.value)


def b_weight(
    P: CPoint,
    moll: Mollifier,
    tau: float,
    s: float,
    spec: QuadratureSpec = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-30),
) -> float:
    """Slice weight B(P): integral over [t1, t2] of
    g(eta) |S(eta, tau, s)|^2 e^{-2 tau phi(t, eta, theta(P))} d eta.

    Each abscissa needs a full transform evaluation, so the inner transform
    runs one decade tighter than the requested outer tolerance.
    """
    hc = tube_coords_from_point(P)
    if not (moll.t1 < hc.t < moll.t2):
        raise DomainError("b_weight requires t(P) strictly inside supp g")
    if hc.theta is None:
        raise DomainError("b_weight requires a non-real point")
    t, theta = hc.t, hc.theta
    s_spec = QuadratureSpec(
        rel_tol=max(spec.rel_tol / 10.0, 1e-12),
        abs_tol=1e-300,
        max_subdivisions=spec.max_subdivisions,
    )

    # log|S(eta)| is analytic in eta; a Chebyshev interpolant over supp g
    # replaces a transform evaluation at every quadrature abscissa.
    n_cheb = 33
    k = np.arange(n_cheb)
    nodes = 0.5 * (moll.t1 + moll.t2) + 0.5 * (moll.t2 - moll.t1) * np.cos(
        np.pi * (2 * k + 1) / (2 * n_cheb)
    )
    vals = np.array([selberg_S(float(e), tau, s, s_spec).log_abs for e in nodes])
    scaled = (2.0 * nodes - (moll.t1 + moll.t2)) / (moll.t2 - moll.t1)
    cheb = np.polynomial.chebyshev.Chebyshev.fit(scaled, vals, n_cheb - 1, domain=[-1, 1])

    def log_abs_S(eta: float) -> float:
        u = (2.0 * eta - (moll.t1 + moll.t2)) / (moll.t2 - moll.t1)
        return float(cheb(u))

    def integrand(etas: np.ndarray) -> np.ndarray:
        out = np.empty(len(etas))
        for i, eta in enumerate(etas):
            g = moll(float(eta))
            if g <= 0.0:
                out[i] = 0.0
                continue
            expo = 2.0 * log_abs_S(float(eta)) - 2.0 * tau * phi_max(t, float(eta), theta)
            out[i] = g * math.exp(expo) if expo > -700 else 0.0
        return out

    res = integrate_1d(integrand, moll.t1, moll.t2, spec)
    return float(res.value.real)
