"""Automorphic kernel K_eta(z, P), its single-valued phase, maximizers over
horocycle slices, the growth function B0, and the microlocal slice map with
its inverse.

Conventions: the phase is Phi_eta(z, P) = log_gauge(z, P) - c_eta *
cosh_dist_c(z, P) with c_eta = 4/(4*eta - eta^3); non-integer powers of the
kernel are exp(tau * Phi) on the principal branch fixed in tube.log_gauge.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .plane import CotangentVector, DomainError, HPoint
from .tube import (
    CPoint,
    ConvergenceError,
    TubeError,
    cosh_dist_c,
    horocycle_point_c,
    log_gauge,
    _rot_scalar,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KernelEval:
    phi: complex
    eta: float
    z: HPoint
    P: CPoint


@dataclass(frozen=True)
class MaximizerResult:
    Q: CPoint
    basepoint: HPoint
    phi_max: float
    hessian: np.ndarray  # 2x2, negative definite


def c_param(t: float) -> float:
    """Kernel width 4/(4t - t^3), defined for t in (0, 1)."""
    if not (0.0 < t < 1.0):
        raise DomainError(f"c_param needs t in (0, 1), got {t}")
    return 4.0 / (4.0 * t - t ** 3)


def log_kernel(z: HPoint, P: CPoint, eta: float) -> KernelEval:
    phi = log_gauge(z, P) - c_param(eta) * cosh_dist_c(z, P)
    return KernelEval(phi=phi, eta=eta, z=z, P=P)


def B0(t: float, theta: float) -> float:
    """Growth exponent on the tube; <= 0, vanishing iff t = 0 or theta = pi."""
    if not (0.0 <= t < 1.0):
        raise DomainError(f"B0 needs t in [0, 1), got {t}")
    m = 1.0 + math.cos(theta)
    num = 2.0 + (t * t - 2.0 * t) * m
    den = 2.0 + (t * t + 2.0 * t) * m
    if num <= 0.0 or den <= 0.0:
        raise DomainError("B0 logarithm argument not positive")
    return math.log(num / den)


def phi_max_exact(t: float, theta: float) -> float:
    """Closed form of the matched-width phase maximum phi(t, t, theta)."""
    m = 1.0 + math.cos(theta)
    num = m * (t * t + 2.0 * t) + 2.0
    den = m * (t * t - 2.0 * t) + 2.0
    return (
        0.5 * math.log(num / den)
        + math.log((2.0 - t) / (2.0 + t))
        - (4.0 - 2.0 * t * t) / (4.0 * t - t ** 3)
    )


# -- analytic derivatives of Phi ---------------------------------------------
#
# With A = z - Z, B = conj(z) - Zt, C = z - conj(z):
#   cosh_dist_c = 1 - 2 A B / (C (Z - Zt))
#   Phi = Log(z - Zt) - Log(conj(z) - Z) - c * cosh_dist_c


def _phi_value(z: complex, Z: complex, Zt: complex, c: float) -> complex:
    w1 = z - Zt
    w2 = z.conjugate() - Z
    cosh = 1.0 - 2.0 * (z - Z) * (z.conjugate() - Zt) / ((z - z.conjugate()) * (Z - Zt))
    return cmath.log(w1) - cmath.log(w2) - c * cosh


def _phi_grad_P(z: complex, Z: complex, Zt: complex, c: float) -> tuple[complex, complex]:
    """(dPhi/dZ, dPhi/dZt) at fixed z."""
    A = z - Z
    B = z.conjugate() - Zt
    C = z - z.conjugate()
    dZZt2 = (Z - Zt) ** 2
    dcosh_dZ = 2.0 * B * (z - Zt) / (C * dZZt2)
    dcosh_dZt = -2.0 * A * (z.conjugate() - Z) / (C * dZZt2)
    phi_Z = 1.0 / (z.conjugate() - Z) - c * dcosh_dZ
    phi_Zt = -1.0 / (z - Zt) - c * dcosh_dZt
    return phi_Z, phi_Zt


def _phi_grad_z(z: complex, Z: complex, Zt: complex, c: float) -> tuple[complex, complex]:
    """(dPhi/dz, dPhi/dzbar) at fixed P (Wirtinger derivatives)."""
    A = z - Z
    B = z.conjugate() - Zt
    C = z - z.conjugate()
    dZZt = Z - Zt
    phi_z = 1.0 / (z - Zt) + 2.0 * c * B * (C - A) / (C * C * dZZt)
    phi_zbar = -1.0 / (z.conjugate() - Z) + 2.0 * c * A * (C + B) / (C * C * dZZt)
    return phi_z, phi_zbar


def _slice_endpoints(theta: float, t: float) -> tuple[complex, complex]:
    """Constants r+, r- with Z = x + y*r+, Zt = x + y*r- on Sigma_{t, theta}."""
    return (
        _rot_scalar(theta + math.pi, 1j * (t + 1.0)),
        _rot_scalar(theta + math.pi, 1j * (t - 1.0)),
    )


def _slice_phase_grad(
    z: complex, w: np.ndarray, t: float, theta: float, c: float
) -> tuple[float, np.ndarray]:
    """Re Phi and its gradient in the slice basepoint w = (wx, wy)."""
    rp, rm = _slice_endpoints(theta, t)
    Z = w[0] + w[1] * rp
    Zt = w[0] + w[1] * rm
    val = _phi_value(z, Z, Zt, c).real
    phi_Z, phi_Zt = _phi_grad_P(z, Z, Zt, c)
    gx = (phi_Z + phi_Zt).real
    gy = (phi_Z * rp + phi_Zt * rm).real
    return val, np.array([gx, gy])


def kernel_max(
    z: HPoint,
    t: float,
    eta: float,
    theta: float,
    grad_tol: float = 1e-10,
    max_iter: int = 50,
) -> MaximizerResult:
    """Unique maximizer of Re Phi_eta(z, .) over the slice Sigma_{t, theta}.

    Damped Newton in the slice basepoint, seeded at w = z.  Enforces the
    |eta - t| <= 0.1 closeness guard under which the maximum is known to
    exist and be non-degenerate.
    """
    if not (0.0 < t < 1.0):
        raise DomainError(f"kernel_max needs t in (0, 1), got {t}")
    if abs(eta - t) > 0.1:
        raise DomainError("kernel_max guard: |eta - t| must be <= 0.1")
    c = c_param(eta)
    zz = z.z
    w = np.array([z.x, z.y], dtype=float)

    def grad(wv: np.ndarray) -> np.ndarray:
        return _slice_phase_grad(zz, wv, t, theta, c)[1]

    def value(wv: np.ndarray) -> float:
        return _slice_phase_grad(zz, wv, t, theta, c)[0]

    converged = False
    for _ in range(max_iter):
        g = grad(w)
        if np.linalg.norm(g) <= grad_tol:
            converged = True
            break
        H = _fd_jacobian2(grad, w)
        H = 0.5 * (H + H.T)
        try:
            step = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            step = g  # fall back to ascent
        lam = 1.0
        f0 = value(w)
        while lam > 1e-6:
            wn = w + lam * step
            if wn[1] > 0.0 and value(wn) >= f0 - 1e-14:
                break
            lam *= 0.5
        w = w + lam * step
        if w[1] <= 0.0:
            raise ConvergenceError("kernel_max left the upper half-plane")
    if not converged:
        g = grad(w)
        if np.linalg.norm(g) > grad_tol:
            raise ConvergenceError(
                f"kernel_max gradient {np.linalg.norm(g):.2e} after {max_iter} iterations"
            )

    H = _fd_jacobian2(grad, w)
    H = 0.5 * (H + H.T)
    eigs = np.linalg.eigvalsh(H)
    if not np.all(eigs < 0.0):
        raise ConvergenceError(f"kernel_max Hessian not negative definite: {eigs}")
    base = HPoint(w[0], w[1])
    Q = horocycle_point_c(base, theta, t)
    return MaximizerResult(Q=Q, basepoint=base, phi_max=value(w), hessian=H)


def _fd_jacobian2(g, w: np.ndarray, h_rel: float = 1e-6) -> np.ndarray:
    J = np.empty((2, 2))
    for j in range(2):
        h = h_rel * (abs(w[j]) + 1.0)
        wp, wm = w.copy(), w.copy()
        wp[j] += h
        wm[j] -= h
        J[:, j] = (g(wp) - g(wm)) / (2.0 * h)
    return J


def phi_max(t: float, eta: float, theta: float) -> float:
    """Phase maximum phi(t, eta, theta); independent of z, computed at z = i."""
    if abs(eta - t) <= 1e-14:
        return phi_max_exact(t, theta)
    return kernel_max(HPoint(0.0, 1.0), t, eta, theta).phi_max


def t_map(z: HPoint, t: float, eta: float, theta: float) -> CotangentVector:
    """Microlocal map: Im of the z-differential of Phi_eta at the maximizer."""
    res = kernel_max(z, t, eta, theta)
    c = c_param(eta)
    phi_z, phi_zbar = _phi_grad_z(z.z, res.Q.Z, res.Q.Zt, c)
    dphi_dx = phi_z + phi_zbar
    dphi_dy = 1j * (phi_z - phi_zbar)
    return CotangentVector(z, dphi_dx.imag, dphi_dy.imag)


def theta_eta_inverse(
    z: HPoint, t: float, xi: CotangentVector, tol: float = 1e-10, max_iter: int = 40
) -> tuple[float, float]:
    """Invert (eta, theta) -> t_map(z, t, eta, theta) near the null level set
    of the b = -1 magnetic Hamiltonian."""
    y = z.y
    h_m1 = 0.5 * ((y * xi.xi1 + 1.0) ** 2 + (y * xi.xi2) ** 2)
    if abs(h_m1 - 0.5) > 0.05:
        raise DomainError(f"covector too far from the null level set: H_-1 = {h_m1}")
    theta = math.atan2(-y * xi.xi2, -1.0 - y * xi.xi1)
    u = np.array([t, theta], dtype=float)
    target = np.array([xi.xi1, xi.xi2], dtype=float)

    def F(uv: np.ndarray) -> np.ndarray:
        tm = t_map(z, t, uv[0], uv[1])
        return np.array([tm.xi1, tm.xi2]) - target

    for _ in range(max_iter):
        f = F(u)
        if np.linalg.norm(f) <= tol:
            return float(u[0]), float(u[1] % TWO_PI)
        J = np.empty((2, 2))
        for j in range(2):
            h = 1e-6
            up, um = u.copy(), u.copy()
            up[j] += h
            um[j] -= h
            J[:, j] = (F(up) - F(um)) / (2.0 * h)
        try:
            step = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian in theta_eta_inverse") from exc
        # stay inside the |eta - t| guard
        un = u + step
        un[0] = min(max(un[0], t - 0.099), t + 0.099)
        u = un
    raise ConvergenceError("theta_eta_inverse did not converge")


def _phi_holo_grad(eta: float, P: CPoint) -> np.ndarray:
    """Holomorphic gradient (d/dX, d/dY) of Phi_eta(i, .) at P."""
    c = c_param(eta)
    z = 1j
    phi_Z, phi_Zt = _phi_grad_P(z, P.Z, P.Zt, c)
    return np.array([phi_Z + phi_Zt, 1j * (phi_Z - phi_Zt)])


def complex_critical_point(
    eta: float, tol: float = 1e-10, max_iter: int = 50
) -> tuple[CPoint, np.ndarray]:
    """Stationary point of the holomorphic phase P -> Phi_eta(i, P), plus the
    complex Hessian in (X, Y).  The stationary point is (i*eta, 1)."""
    if not (0.0 < eta < 1.0):
        raise DomainError(f"complex_critical_point needs eta in (0, 1), got {eta}")
    u = np.array([1j * eta, 1.0 + 0j])

    def grad(uv: np.ndarray) -> np.ndarray:
        return _phi_holo_grad(eta, CPoint(uv[0], uv[1]))

    def hess(uv: np.ndarray) -> np.ndarray:
        H = np.empty((2, 2), dtype=complex)
        h = 1e-6
        for j in range(2):
            up, um = uv.copy(), uv.copy()
            up[j] += h
            um[j] -= h
            H[:, j] = (grad(up) - grad(um)) / (2.0 * h)
        return 0.5 * (H + H.T)

    for _ in range(max_iter):
        g = grad(u)
        if np.linalg.norm(g) <= tol:
            break
        H = hess(u)
        u = u + np.linalg.solve(H, -g)
    else:
        raise ConvergenceError("complex_critical_point Newton did not converge")

    H = hess(u)
    det = np.linalg.det(H)
    if abs(det) < 1e-10:
        raise ConvergenceError(f"degenerate critical point: |det H| = {abs(det):.2e}")
    return CPoint(u[0], u[1]), H


# -- vectorized field for quadrature -----------------------------------------


def phi_field(x: np.ndarray, y: np.ndarray, P: CPoint, eta: float) -> np.ndarray:
    """Phi_eta(x + iy, P) on arrays; principal-branch gauge logarithm."""
    c = c_param(eta)
    z = x + 1j * y
    w1 = z - P.Zt
    w2 = np.conj(z) - P.Z
    cosh = 1.0 + ((x - P.X) ** 2 + (y - P.Y) ** 2) / (2.0 * y * P.Y)
    return np.log(w1) - np.log(w2) - c * cosh
