"""Real hyperbolic-plane primitives.

Upper half-plane model: points x+iy with y > 0, metric (dx^2+dy^2)/y^2.
Orientation-preserving isometries are kept in canonical Moebius form
(a, b, c, d real, ad - bc = 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

DET_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the domain of validity of an operation."""


@dataclass(frozen=True)
class HPoint:
    """Point of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0.0) or not math.isfinite(self.y) or not math.isfinite(self.x):
            raise DomainError(f"HPoint requires finite x and y > 0, got ({self.x}, {self.y})")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @staticmethod
    def from_complex(z: complex) -> "HPoint":
        return HPoint(z.real, z.imag)


@dataclass(frozen=True)
class Isometry:
    """Orientation-preserving isometry in canonical form, ad - bc = 1.

    Entries are normalized at construction: divided by sqrt(ad - bc) and
    sign-fixed so that c > 0, or c == 0 and d > 0.  The sign fix pins the
    branch of the gauge cocycle for non-integer weights.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det <= 0.0 or not math.isfinite(det):
            raise DomainError(f"Isometry requires ad - bc > 0, got {det}")
        r = math.sqrt(det)
        a, b, c, d = self.a / r, self.b / r, self.c / r, self.d / r
        if c < 0.0 or (c == 0.0 and d < 0.0):
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        if abs(self.a * self.d - self.b * self.c - 1.0) > DET_TOL:
            raise DomainError("Isometry normalization failed")

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def affine(x0: float, y0: float) -> "Isometry":
        """z -> y0*z + x0 with y0 > 0; maps i to x0 + i*y0."""
        if y0 <= 0.0:
            raise DomainError("affine isometry needs y0 > 0")
        r = math.sqrt(y0)
        return Isometry(r, x0 / r, 0.0, 1.0 / r)

    @staticmethod
    def rotation(theta: float) -> "Isometry":
        """Rotation of the plane around i by angle theta."""
        ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
        return Isometry(ch, sh, -sh, ch)

    def compose(self, other: "Isometry") -> "Isometry":
        """Matrix product self @ other, renormalized."""
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Isometry":
        return Isometry(self.d, -self.b, -self.c, self.a)

    def scalar(self, w: complex) -> complex:
        """Apply as a scalar Moebius map (also valid for complex arguments)."""
        return (self.a * w + self.b) / (self.c * w + self.d)


@dataclass(frozen=True)
class TangentVector:
    base: HPoint
    v_x: float
    v_y: float

    @staticmethod
    def unit(base: HPoint, theta: float) -> "TangentVector":
        """Unit tangent vector y*(cos(theta) d/dx + sin(theta) d/dy)."""
        return TangentVector(base, base.y * math.cos(theta), base.y * math.sin(theta))


@dataclass(frozen=True)
class CotangentVector:
    base: HPoint
    xi1: float
    xi2: float


@dataclass(frozen=True)
class SpectralParams:
    """Spectral data (tau, s) of a magnetic eigenfunction.

    ``s_tilde`` is the principal root of w*(w-1) = -s^2, namely
    1/2 + i*sqrt(s^2 - 1/4).  It doubles as the eigenfunction exponent:
    y**s_tilde solves the eigenvalue equation with eigenvalue s^2.
    """

    tau: float
    s: float
    s_tilde: complex = field(init=False)

    def __post_init__(self):
        if self.tau < 0.0 or self.s < 0.0:
            raise DomainError("SpectralParams requires tau >= 0 and s >= 0")
        lam = cmath.sqrt(complex(self.s * self.s - 0.25))
        st = 0.5 + 1j * lam
        object.__setattr__(self, "s_tilde", st)
        if abs(st * (st - 1.0) + self.s * self.s) > 1e-12:
            raise DomainError("s_tilde root residual too large")


def mobius_apply(iso: Isometry, z: HPoint) -> HPoint:
    w = iso.scalar(z.z)
    return HPoint(w.real, w.imag)


def cosh_dist(z: HPoint, w: HPoint) -> float:
    dz = z.z - w.z
    return 1.0 + (dz.real * dz.real + dz.imag * dz.imag) / (2.0 * z.y * w.y)


def magnetic_hamiltonian(b: float, p: CotangentVector) -> float:
    y = p.base.y
    return 0.5 * ((y * p.xi1 - b) ** 2 + (y * p.xi2) ** 2)


def psi1(v: TangentVector) -> CotangentVector:
    """Identification of T(H) with T*(H) generated by the b=1 Hamiltonian."""
    y = v.base.y
    return CotangentVector(v.base, (v.v_x + y) / (y * y), v.v_y / (y * y))


def apply_D_tau_fd(
    u: Callable[[HPoint], complex], tau: float, z: HPoint, h: float | None = None
) -> complex:
    """Magnetic operator -y^2(u_xx + u_yy) + 2i*tau*y*u_x by centered differences.

    Second-order stencil; h defaults to 1e-4 * y so the stencil scales with
    height and stays inside the upper half-plane.
    """
    if h is None:
        h = 1e-4 * z.y
    if z.y - h <= 0.0:
        raise DomainError("finite-difference stencil leaves the upper half-plane")
    x, y = z.x, z.y
    uc = u(z)
    uxp = u(HPoint(x + h, y))
    uxm = u(HPoint(x - h, y))
    uyp = u(HPoint(x, y + h))
    uym = u(HPoint(x, y - h))
    uxx = (uxp - 2.0 * uc + uxm) / (h * h)
    uyy = (uyp - 2.0 * uc + uym) / (h * h)
    ux = (uxp - uxm) / (2.0 * h)
    return -y * y * (uxx + uyy) + 2j * tau * y * ux
