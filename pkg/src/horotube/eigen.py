"""Test eigenfunctions of the magnetic operator (model and gauge-translated
superpositions), their exact complexifications into the tube, growth
profiling against exp(tau*B0), and nodal-zero extraction on complex slices
by the argument principle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .kernel import B0
from .plane import DomainError, HPoint, Isometry, SpectralParams
from .tube import (
    CPoint,
    ConvergenceError,
    TubeError,
    in_tube,
    mobius_apply_c,
    tube_coords_from_point,
    tube_coords_grid,
)


@dataclass(frozen=True)
class EigenSpec:
    """Finite superposition of gauge translates of the model eigenfunction.

    Each term (c, iso) denotes c * ((C*zbar + D)/(C*z + D))^tau * (Im gz)^st
    with (C, D) the bottom row of iso, g the Moebius action of iso, and
    st the principal root of st*(st-1) = -s^2.
    """

    terms: tuple[tuple[complex, Isometry], ...]
    params: SpectralParams

    def __post_init__(self):
        if not self.terms:
            raise DomainError("EigenSpec requires at least one term")
        object.__setattr__(self, "terms", tuple((complex(c), g) for c, g in self.terms))


@dataclass(frozen=True)
class SliceSpec:
    """A 2-parameter probe surface inside the tube.

    kind "theta_slice": points h_{-it}(z_base, theta) for (t, theta) on the
    rectangle bounds = (t_min, t_max, theta_min, theta_max).

    kind "line_slice": affine complex line w -> P0 + w*V in C^2 for w on the
    rectangle bounds = (re_min, re_max, im_min, im_max).
    """

    kind: str
    bounds: tuple[float, float, float, float]
    resolution: int
    z_base: HPoint | None = None
    P0: CPoint | None = None
    V: tuple[complex, complex] | None = None

    def __post_init__(self):
        if self.kind not in ("theta_slice", "line_slice"):
            raise DomainError(f"unknown slice kind {self.kind!r}")
        a, b, c, d = self.bounds
        if not (a < b and c < d):
            raise DomainError("slice bounds must be ordered")
        if self.resolution < 2:
            raise DomainError("slice resolution must be >= 2")
        if self.kind == "theta_slice":
            if self.z_base is None:
                raise DomainError("theta_slice requires z_base")
            if not (0.0 <= a and b < 1.0):
                raise DomainError("theta_slice requires 0 <= t < 1")
        else:
            if self.P0 is None or self.V is None:
                raise DomainError("line_slice requires P0 and V")

    def line_point(self, w: complex) -> CPoint:
        if self.kind != "line_slice":
            raise DomainError("line_point only applies to line slices")
        return CPoint(self.P0.X + w * self.V[0], self.P0.Y + w * self.V[1])

    def check_in_tube(self, samples: int = 9) -> None:
        """Invariant check: sampled slice image lies inside the radius-1 tube."""
        a, b, c, d = self.bounds
        for p in np.linspace(a, b, samples):
            for q in np.linspace(c, d, samples):
                if self.kind == "theta_slice":
                    from .tube import horocycle_point_c

                    P = horocycle_point_c(self.z_base, float(q), float(p))
                else:
                    P = self.line_point(complex(p, q))
                if not P.is_real() and not in_tube(P, 1.0):
                    raise TubeError(f"slice leaves the tube at parameter ({p}, {q})")


@dataclass(frozen=True)
class NodalReport:
    zeros: tuple[tuple[complex, int], ...]
    total_count: int
    area: float
    b0_density_integral: float = 0.0

    def __post_init__(self):
        if any(m < 1 for _, m in self.zeros):
            raise DomainError("multiplicities must be >= 1")
        if self.total_count != sum(m for _, m in self.zeros):
            raise DomainError("total_count must equal the multiplicity sum")


def eval_eigen(spec: EigenSpec, z: HPoint) -> complex:
    """Value of the superposition on the real half-plane."""
    tau = spec.params.tau
    st = spec.params.s_tilde
    total = 0j
    for coef, iso in spec.terms:
        zz = z.z
        num = iso.c * zz.conjugate() + iso.d
        den = iso.c * zz + iso.d
        gz = iso.scalar(zz)
        total += coef * cmath.exp(tau * (cmath.log(num) - cmath.log(den))) * gz.imag ** st
    return total


def eval_eigen_c(spec: EigenSpec, P: CPoint) -> complex:
    """Exact analytic continuation of eval_eigen to the tube.

    Each term continues with principal logarithms of C*Zt + D and C*Z + D
    (nonvanishing imaginary parts on the tube when C != 0; positive real
    values when C = 0 by the canonical-form sign fix) and the principal
    power of Y at the moved point (valid since Re Y > 0 on the tube).
    """
    tau = spec.params.tau
    st = spec.params.s_tilde
    total = 0j
    for coef, iso in spec.terms:
        num = iso.c * P.Zt + iso.d
        den = iso.c * P.Z + iso.d
        if num == 0 or den == 0:
            raise TubeError("complexified gauge factor hit a vanishing denominator")
        gP = mobius_apply_c(iso, P)
        if gP.Y.real <= 0.0:
            raise TubeError("moved point left the principal-power domain Re Y > 0")
        total += coef * cmath.exp(
            tau * (cmath.log(num) - cmath.log(den)) + st * cmath.log(gP.Y)
        )
    return total


@dataclass(frozen=True)
class GrowthRow:
    t: float
    theta: float
    P: CPoint
    abs_u_sq: float
    b0: float
    normalized: float  # tau^{1/2} |u|^2 exp(tau*B0)
    rate_gap: float  # (1/tau) log|u|^2 + B0


def growth_profile(spec: EigenSpec, slc: SliceSpec) -> list[GrowthRow]:
    """Observational growth table over a slice; asserts nothing about
    convergence (single superpositions are never quantum-ergodic)."""
    from .tube import horocycle_point_c

    tau = spec.params.tau
    a, b, c, d = slc.bounds
    rows: list[GrowthRow] = []
    for p in np.linspace(a, b, slc.resolution):
        for q in np.linspace(c, d, slc.resolution):
            if slc.kind == "theta_slice":
                t, theta = float(p), float(q)
                P = horocycle_point_c(slc.z_base, theta, t)
            else:
                P = slc.line_point(complex(p, q))
                hc = tube_coords_from_point(P)
                t, theta = hc.t, (hc.theta if hc.theta is not None else math.pi)
            u = eval_eigen_c(spec, P)
            usq = abs(u) ** 2
            b0 = B0(t, theta)
            normalized = math.sqrt(tau) * usq * math.exp(tau * b0) if tau > 0 else usq
            rate_gap = (math.log(usq) / tau if tau > 0 and usq > 0 else 0.0) + b0
            rows.append(GrowthRow(t, theta, P, usq, b0, normalized, rate_gap))
    return rows


# -- argument-principle zero finding ------------------------------------------


class PartitionError(RuntimeError):
    """Could not isolate zeros: boundary-zero ambiguity persisted through the
    subdivision budget."""


@dataclass(frozen=True)
class NodalSolverSpec:
    max_depth: int = 40
    boundary_floor: float = 1e-13
    min_cell: float = 1e-9
    newton_tol: float = 1e-11
    jitter: float = 1e-3


def _segment_winding_integral(
    f: Callable[[complex], complex], wa: complex, wb: complex, spec: NodalSolverSpec
) -> complex:
    """(1/2 pi i) * integral of f'/f along the straight segment [wa, wb],
    by adaptive Gauss-Kronrod (error-controlled, robust to zeros lying close
    to but off the segment)."""
    from .quadrature import AccuracyError as QAccuracyError
    from .quadrature import QuadratureSpec as QSpec
    from .quadrature import integrate_1d

    dw = wb - wa
    h = 1e-6 * (abs(wa) + abs(wb) + 1.0)

    def integrand(ss: np.ndarray) -> np.ndarray:
        out = np.empty(len(ss), dtype=complex)
        for i, s in enumerate(ss):
            w = wa + s * dw
            fw = f(w)
            if abs(fw) < spec.boundary_floor:
                raise PartitionError("zero on or near the contour")
            out[i] = (f(w + h) - f(w - h)) / (2.0 * h * fw)
        return out

    try:
        res = integrate_1d(
            integrand, 0.0, 1.0,
            QSpec(rel_tol=1e-6, abs_tol=5e-3, max_subdivisions=400),
        )
    except QAccuracyError as exc:
        raise PartitionError("contour integral did not converge (zero nearby?)") from exc
    return res.value * dw / (2j * math.pi)


def _boundary_winding(
    f: Callable[[complex], complex],
    x0: float,
    x1: float,
    y0: float,
    y1: float,
    spec: NodalSolverSpec,
) -> int:
    """Winding number of f along the rectangle boundary."""
    corners = [
        complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1),
        complex(x0, y0),
    ]
    total = 0j
    for k in range(4):
        total += _segment_winding_integral(f, corners[k], corners[k + 1], spec)
    n = total.real
    if abs(n - round(n)) > 0.1 or abs(total.imag) > 0.1:
        raise PartitionError(f"winding integral not near an integer: {total}")
    return int(round(n))


def _newton_polish(
    f: Callable[[complex], complex], w: complex, spec: NodalSolverSpec, h: float
) -> complex:
    """Newton iteration with a finite-difference derivative.  For a zero of
    multiplicity m the attainable position accuracy is only ~eps^(1/m), so
    the loop returns its last iterate rather than failing when the step
    cannot reach the simple-zero tolerance; the caller's winding check is
    the actual acceptance test."""
    for _ in range(60):
        fw = f(w)
        dfw = (f(w + h) - f(w - h)) / (2.0 * h)
        if dfw == 0:
            return w
        step = fw / dfw
        w = w - step
        if abs(step) < spec.newton_tol * (1.0 + abs(w)):
            return w
    return w


def nodal_slice_zeros(
    f: Callable[[complex], complex],
    region: tuple[float, float, float, float],
    spec: NodalSolverSpec = NodalSolverSpec(),
) -> NodalReport:
    """Zeros of an analytic function on a rectangle, with multiplicities.

    Recursive bisection driven by boundary winding numbers; cells whose
    winding count is isolated are polished by Newton iteration, and the
    cell's winding number is its multiplicity.  Rectangles with a zero too
    close to their boundary are jittered by a fixed fraction of the cell
    size before subdividing further.
    """
    x0, x1, y0, y1 = region
    if not (x0 < x1 and y0 < y1):
        raise DomainError("nodal region bounds must be ordered")
    diam0 = math.hypot(x1 - x0, y1 - y0)
    zeros: list[tuple[complex, int]] = []

    def root_winding() -> tuple[int, tuple[float, float, float, float]]:
        # a zero on the outer boundary is resolved by slightly growing the
        # region (the only place the region itself may move)
        a, b, c, d = x0, x1, y0, y1
        for k in range(8):
            try:
                return _boundary_winding(f, a, b, c, d, spec), (a, b, c, d)
            except PartitionError:
                j = spec.jitter * (k + 1)
                a, b = a - j * (x1 - x0), b + j * (x1 - x0)
                c, d = c - j * (y1 - y0), d + j * (y1 - y0)
        raise PartitionError("could not free the outer boundary of zeros")

    def circle_winding(w0: complex, r: float) -> int:
        # 64-gon inscribed contour: the winding number of an analytic f is
        # unchanged under this homotopy as long as no zero crosses, and the
        # segment integrals are already error-controlled
        pts = w0 + r * np.exp(2j * math.pi * np.linspace(0.0, 1.0, 9))
        total = 0j
        for wa, wb in zip(pts[:-1], pts[1:]):
            total += _segment_winding_integral(f, wa, wb, spec)
        n = total.real
        if abs(n - round(n)) > 0.1 or abs(total.imag) > 0.1:
            raise PartitionError(f"circle winding not near an integer: {total}")
        return int(round(n))

    def try_settle(a, b, c, d, n, diam) -> bool:
        """Attempt to resolve a small cell: Newton from the center, then the
        winding of a shrunken circle must account for all n zeros."""
        w0 = complex(0.5 * (a + b), 0.5 * (c + d))
        w = _newton_polish(f, w0, spec, h=max(1e-9, 1e-6 * diam))
        if not (
            a - diam <= w.real <= b + diam and c - diam <= w.imag <= d + diam
        ):
            return False
        # the circle must clear the |f| floor even for an order-n zero
        # (|f| ~ r^n on it) yet stay well inside the cell so it cannot
        # swallow zeros the boundary winding attributed to siblings
        r = min(
            max((1e-11) ** (1.0 / n), 1e-4) * (1.0 + abs(w)),
            0.45 * diam,
        )
        try:
            m = circle_winding(w, r)
        except PartitionError:
            return False
        if m != n:
            return False
        zeros.append((w, n))
        return True

    def recurse(a, b, c, d, depth, n):
        if n < 0:
            raise PartitionError("negative winding: f not analytic on the region?")
        if n == 0:
            return
        diam = math.hypot(b - a, d - c)
        if diam < 0.05 * diam0 + 1e-12 and try_settle(a, b, c, d, n, diam):
            return
        if depth >= spec.max_depth or diam < spec.min_cell * (1.0 + diam0):
            # unresolvable cluster: report the cell center with the full count
            zeros.append((complex(0.5 * (a + b), 0.5 * (c + d)), n))
            return
        # split points jittered deterministically, children tile the parent;
        # later attempts swing wide so a zero sitting at the cell center
        # cannot block every candidate seam
        for k in range(12):
            scale = spec.jitter if k < 6 else 0.06
            fx = 0.5 + scale * ((k * 7) % 12 - 5.5)
            fy = 0.5 + scale * ((k * 5) % 12 - 5.5)
            am = a + fx * (b - a)
            cm = c + fy * (d - c)
            quads = [(a, am, c, cm), (am, b, c, cm), (a, am, cm, d), (am, b, cm, d)]
            try:
                counts = [_boundary_winding(f, *q, spec) for q in quads]
            except PartitionError:
                continue
            if sum(counts) != n:
                continue
            for q, m in zip(quads, counts):
                recurse(*q, depth + 1, m)
            return
        raise PartitionError("could not split a cell with a zero-free seam")

    n0, root = root_winding()
    recurse(*root, 0, n0)
    zeros.sort(key=lambda z: (z[0].real, z[0].imag))
    total = sum(m for _, m in zeros)
    return NodalReport(tuple(zeros), total, (x1 - x0) * (y1 - y0))


def nodal_density_vs_b0(
    spec: EigenSpec,
    slc: SliceSpec,
    solver: NodalSolverSpec = NodalSolverSpec(),
) -> NodalReport:
    """Diagnostic: zero count of the continued eigenfunction on a complex
    line slice, reported next to the B0-density integral
    (1/2 pi) * integral of Laplacian_w(-B0/2 on the slice) dA(w).

    No equality is asserted: the nodal-current limit concerns quantum-ergodic
    sequences, not individual superpositions.
    """
    if slc.kind != "line_slice":
        raise DomainError("nodal_density_vs_b0 requires a line_slice")
    a, b, c, d = slc.bounds

    def f(w: complex) -> complex:
        return eval_eigen_c(spec, slc.line_point(w))

    report = nodal_slice_zeros(f, (a, b, c, d), solver)
    dens = b0_density_integral(slc)
    return NodalReport(report.zeros, report.total_count, report.area, dens)


def b0_density_integral(slc: SliceSpec, n: int | None = None) -> float:
    """(1/2 pi) * integral over the slice rectangle of the w-Laplacian of
    -B0(t(w), theta(w))/2, by second-order finite differences."""
    if slc.kind != "line_slice":
        raise DomainError("b0_density_integral requires a line_slice")
    n = n or max(slc.resolution, 64)
    a, b, c, d = slc.bounds
    re = np.linspace(a, b, n)
    im = np.linspace(c, d, n)
    hx = re[1] - re[0]
    hy = im[1] - im[0]
    W = re[None, :] + 1j * im[:, None]
    X = slc.P0.X + W * slc.V[0]
    Y = slc.P0.Y + W * slc.V[1]
    t, theta = tube_coords_grid(X, Y)
    if np.isnan(t).any():
        raise TubeError("slice grid leaves the tube; shrink the bounds")
    m = 1.0 + np.cos(theta)
    num = 2.0 + (t * t - 2.0 * t) * m
    den = 2.0 + (t * t + 2.0 * t) * m
    field_vals = -0.5 * np.log(num / den)
    lap = (
        (field_vals[1:-1, 2:] - 2.0 * field_vals[1:-1, 1:-1] + field_vals[1:-1, :-2]) / hx**2
        + (field_vals[2:, 1:-1] - 2.0 * field_vals[1:-1, 1:-1] + field_vals[:-2, 1:-1]) / hy**2
    )
    return float(np.sum(lap) * hx * hy / (2.0 * math.pi))
