"""Complexified plane C x C: gauge logarithm, horocycle flow at imaginary
time, Grauert-tube membership and horocycle-coordinate inversion.

A point P = (X, Y) carries the analytic continuations Z = X + iY and
Zt = X - iY of z and conj(z).  The radius-1 tube is the image of
(z, t, theta) -> h_{-it}(z, theta) for t in [0, 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .plane import DomainError, HPoint, Isometry

_REAL_EPS = 1e-13


class TubeError(DomainError):
    """Point not in the horocycle Grauert tube / branch condition violated."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance."""


@dataclass(frozen=True)
class CPoint:
    """Point of the complexified plane (no membership constraint)."""

    X: complex
    Y: complex

    @staticmethod
    def from_hpoint(z: HPoint) -> "CPoint":
        return CPoint(complex(z.x), complex(z.y))

    @staticmethod
    def from_zzt(Z: complex, Zt: complex) -> "CPoint":
        return CPoint((Z + Zt) / 2.0, (Z - Zt) / 2j)

    @property
    def Z(self) -> complex:
        return self.X + 1j * self.Y

    @property
    def Zt(self) -> complex:
        return self.X - 1j * self.Y

    def is_real(self, tol: float = _REAL_EPS) -> bool:
        scale = 1.0 + abs(self.X) + abs(self.Y)
        return abs(self.X.imag) <= tol * scale and abs(self.Y.imag) <= tol * scale


@dataclass(frozen=True)
class HoroCoords:
    """Horocycle coordinates (x, y, t, theta); theta is None on the real axis
    t = 0, where the angular coordinate is undefined."""

    x: float
    y: float
    t: float
    theta: float | None

    def __post_init__(self):
        if not (self.y > 0.0):
            raise DomainError("HoroCoords requires y > 0")
        if not (0.0 <= self.t < 1.0):
            raise DomainError("HoroCoords requires 0 <= t < 1")

    @property
    def base(self) -> HPoint:
        return HPoint(self.x, self.y)


def z_tilde_z(P: CPoint) -> tuple[complex, complex]:
    return P.Z, P.Zt


def cosh_dist_c(z: HPoint, P: CPoint) -> complex:
    """Holomorphic continuation of cosh of the hyperbolic distance."""
    if P.Y == 0:
        raise TubeError("cosh_dist_c is singular at Y = 0")
    dx = z.x - P.X
    dy = z.y - P.Y
    return 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * P.Y)


def mobius_apply_c(iso: Isometry, P: CPoint) -> CPoint:
    """Componentwise complexified Moebius action."""
    c, d = iso.c, iso.d
    den = (c * P.X + d) ** 2 + (c * P.Y) ** 2
    if den == 0:
        raise TubeError("complexified Moebius map hit a vanishing denominator")
    Xn = (iso.a * P.X + iso.b) * (c * P.X + d) + iso.a * c * P.Y * P.Y
    return CPoint(Xn / den, P.Y / den)


def log_gauge(z: HPoint, P: CPoint) -> complex:
    """Single-valued logarithm of the complexified gauge factor
    (z - Zt) / (conj(z) - Z), via principal logs of the two factors.

    Requires Im(z - Zt) > 0 and Im(conj(z) - Z) < 0, which hold on the tube
    where Re Y > |Im X|.
    """
    w1 = z.z - P.Zt
    w2 = z.z.conjugate() - P.Z
    if not (w1.imag > 0.0 and w2.imag < 0.0):
        raise TubeError("gauge logarithm branch condition violated (P outside tube?)")
    return cmath.log(w1) - cmath.log(w2)


def _rot_scalar(theta: float, w: complex) -> complex:
    """Scalar Moebius action of the rotation around i by angle theta."""
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return (ch * w + sh) / (-sh * w + ch)


def horocycle_point(z: HPoint, theta: float, t: float) -> HPoint:
    """Right horocycle flow for real time t: unit speed, curvature 1."""
    w = z.x + z.y * _rot_scalar(theta + math.pi, complex(-t, 1.0))
    return HPoint(w.real, w.imag)


def horocycle_point_c(z: HPoint, theta: float, t: float) -> CPoint:
    """Horocycle flow at imaginary time -i*t, t in [0, 1).

    Z and Zt of the image are the analytic-in-time continuations of the
    real-time path and of its conjugate:
        Z  = x + y * R(i*(t+1)),   Zt = x + y * R(i*(t-1)),
    R the rotation around i by theta + pi.
    """
    if not (0.0 <= t < 1.0):
        raise DomainError(f"imaginary horocycle time needs t in [0, 1), got {t}")
    Z = z.x + z.y * _rot_scalar(theta + math.pi, 1j * (t + 1.0))
    Zt = z.x + z.y * _rot_scalar(theta + math.pi, 1j * (t - 1.0))
    return CPoint.from_zzt(Z, Zt)


def m_t_map(z: HPoint, theta: float, t: float) -> CPoint:
    """Level-set-to-slice map: sends the null-energy covector of direction
    theta at z to the corresponding tube point (alias of horocycle_point_c)."""
    return horocycle_point_c(z, theta, t)


def _forward_xy(x: float, y: float, t: float, theta: float) -> np.ndarray:
    P = horocycle_point_c(HPoint(x, y), theta, t)
    return np.array([P.X.real, P.X.imag, P.Y.real, P.Y.imag])


def _theta_candidates(alpha: float, beta: float, delta: float) -> list[float]:
    """Solutions of alpha*sin(th) + beta*cos(th) + delta = 0."""
    r = math.hypot(alpha, beta)
    if r == 0.0:
        return [0.0, math.pi]
    q = -delta / r
    if abs(q) > 1.0:
        if abs(q) > 1.0 + 1e-9:
            return []
        q = math.copysign(1.0, q)
    psi = math.atan2(beta, alpha)
    base = math.asin(q)
    return [base - psi, math.pi - base - psi]


def tube_coords_from_point(P: CPoint, newton_steps: int = 5) -> HoroCoords:
    """Invert the horocycle parametrization.

    Closed-form seed: t from t^2 = (Im X^2 + Im Y^2)/(Re Y^2 + Im Y^2), theta
    from the linear-in-(sin, cos) relation implied by y/Y = 1 - t^2
    cos^2(theta/2) + i t sin(theta); then a short Newton polish on the
    forward map.  Raises TubeError when P is not in the radius-1 tube.
    """
    X1, X2 = P.X.real, P.X.imag
    Y1, Y2 = P.Y.real, P.Y.imag
    if P.is_real():
        if Y1 <= 0.0:
            raise TubeError("real point below the axis y > 0")
        return HoroCoords(X1, Y1, 0.0, None)
    if not (Y1 > abs(X2)):
        raise TubeError("necessary tube condition Re Y > |Im X| fails")

    yabs2 = Y1 * Y1 + Y2 * Y2
    t2sq = (X2 * X2 + Y2 * Y2) / yabs2
    t = math.sqrt(t2sq)
    if not (0.0 < t < 1.0):
        raise TubeError(f"tube depth out of range: t = {t}")

    A = Y1 / yabs2
    Bv = Y2 / yabs2
    best: tuple[float, np.ndarray] | None = None
    target = np.array([X1, X2, Y1, Y2])
    scale = float(np.linalg.norm(target)) + 1.0
    for theta in _theta_candidates(A * t, -Bv * t2sq / 2.0, Bv * (1.0 - t2sq / 2.0)):
        y = (1.0 - t2sq * (1.0 + math.cos(theta)) / 2.0) / A
        if y <= 0.0:
            continue
        x = (P.Z - y * _rot_scalar(theta + math.pi, 1j * (t + 1.0))).real
        guess = np.array([x, y, t, theta])
        try:
            res = float(np.linalg.norm(_forward_xy(*guess) - target))
        except DomainError:
            continue
        if best is None or res < best[0]:
            best = (res, guess)
    if best is None:
        raise TubeError("horocycle-coordinate inversion infeasible")

    u = best[1]
    for _ in range(newton_steps):
        F = _forward_xy(*u) - target
        if np.linalg.norm(F) <= 1e-14 * scale:
            break
        J = np.empty((4, 4))
        for j in range(4):
            h = 1e-7 * (abs(u[j]) + 1.0)
            up, um = u.copy(), u.copy()
            up[j] += h
            um[j] -= h
            um[2] = min(max(um[2], 1e-12), 1.0 - 1e-12)
            up[2] = min(max(up[2], 1e-12), 1.0 - 1e-12)
            J[:, j] = (_forward_xy(*up) - _forward_xy(*um)) / (up[j] - um[j])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        u = u - step
        u[2] = min(max(u[2], 1e-12), 1.0 - 1e-12)
        if u[1] <= 0.0:
            u[1] = best[1][1]
            break

    res = float(np.linalg.norm(_forward_xy(*u) - target))
    if res > 1e-9 * scale:
        raise TubeError(f"inversion residual {res:.3e} exceeds tolerance")
    return HoroCoords(u[0], u[1], u[2], u[3] % (2.0 * math.pi))


def in_tube(P: CPoint, radius: float) -> bool:
    """Whether P lies in the horocycle Grauert tube of the given radius."""
    if not (0.0 < radius <= 1.0):
        raise DomainError("tube radius must lie in (0, 1]")
    try:
        hc = tube_coords_from_point(P)
    except DomainError:
        return False
    return hc.t < radius


def tube_coords_grid(X: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized closed-form inversion: arrays of t and theta (NaN where the
    point is not in the punctured tube).  No Newton polish; intended for
    dense slice grids where the closed form is exact up to roundoff."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    X1, X2 = X.real, X.imag
    Y1, Y2 = Y.real, Y.imag
    yabs2 = Y1 * Y1 + Y2 * Y2
    with np.errstate(invalid="ignore", divide="ignore"):
        t2sq = (X2 * X2 + Y2 * Y2) / yabs2
        t = np.sqrt(t2sq)
        ok = (Y1 > np.abs(X2)) & (t > 0.0) & (t < 1.0)
        A = Y1 / yabs2
        Bv = Y2 / yabs2
        alpha = A * t
        beta = -Bv * t2sq / 2.0
        delta = Bv * (1.0 - t2sq / 2.0)
        r = np.hypot(alpha, beta)
        q = np.clip(-delta / np.where(r > 0, r, 1.0), -1.0, 1.0)
        psi = np.arctan2(beta, alpha)
        base = np.arcsin(q)
        th_a = base - psi
        th_b = np.pi - base - psi

        # pick the candidate whose implied (x, y) reproduces Z
        Z = X + 1j * Y
        res_a = _grid_residual(Z, Y, A, t, th_a)
        res_b = _grid_residual(Z, Y, A, t, th_b)
        theta = np.where(res_a <= res_b, th_a, th_b) % (2.0 * np.pi)
    t = np.where(ok, t, np.nan)
    theta = np.where(ok, theta, np.nan)
    return t, theta


def _grid_residual(Z, Y, A, t, theta):
    y = (1.0 - t * t * (1.0 + np.cos(theta)) / 2.0) / A
    ph = (theta + np.pi) / 2.0
    ch, sh = np.cos(ph), np.sin(ph)
    w = 1j * (t + 1.0)
    rot = (ch * w + sh) / (-sh * w + ch)
    x = (Z - y * rot).real
    D = 1.0 - t * t * (1.0 + np.cos(theta)) / 2.0 + 1j * t * np.sin(theta)
    bad = y <= 0.0
    res = np.abs(x + y * rot - Z) + np.abs(y / np.where(np.abs(Y) > 0, Y, 1.0) - D)
    return np.where(bad, np.inf, res)
