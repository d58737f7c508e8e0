import math

import numpy as np
import pytest

from horotube.plane import DomainError, HPoint
from horotube.quadrature import (
    AccuracyError,
    QuadratureSpec,
    integrate_1d,
    integrate_hyperbolic,
    integrate_radial,
    truncation_cosh_radius,
)

RNG = np.random.default_rng(3)
SPEC = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14)


def test_polynomials_exact():
    for k in range(8):
        r = integrate_1d(lambda x, k=k: x ** k, 0.0, 1.0, SPEC)
        assert abs(r.value - 1.0 / (k + 1)) < 1e-13


def test_oscillatory():
    r = integrate_1d(lambda x: np.sin(7.5 * x), 0.0, 2.0, SPEC)
    assert abs(r.value - (1 - math.cos(15.0)) / 7.5) < 1e-12


def test_complex_integrand():
    r = integrate_1d(lambda x: np.exp(1j * x), 0.0, math.pi, SPEC)
    assert abs(r.value - 2j) < 1e-12


def test_infinite_interval_with_decay_rate():
    for a in (0.5, 2.0):
        r = integrate_1d(lambda x, a=a: np.exp(-a * x), 0.0, math.inf, SPEC,
                         decay_rate=a)
        assert abs(r.value - 1.0 / a) < 1e-12
        assert r.truncation_radius > 0


def test_infinite_interval_requires_rate():
    with pytest.raises(DomainError):
        integrate_1d(lambda x: np.exp(-x), 0.0, math.inf, SPEC)


def test_error_estimate_honest():
    r = integrate_1d(lambda x: 1.0 / (x + 0.3), 0.0, 1.0,
                     QuadratureSpec(rel_tol=1e-8, abs_tol=1e-12))
    true_err = abs(r.value - math.log(1.3 / 0.3))
    assert true_err <= max(3.0 * r.error_estimate, 1e-14 * (1 + abs(r.value)))


def test_accuracy_error_raised_and_carries_result():
    spec = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=3)
    with pytest.raises(AccuracyError) as exc:
        integrate_1d(lambda x: np.sin(40.0 * x) / (1.0 + x * x), 0.0, 10.0, spec)
    assert exc.value.result.evaluations > 0


def test_radial_matches_hyperbolic_ball_integral():
    # rotation-invariant integrand: 2D tube integral = 2*pi * radial integral
    spec = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-13)
    for c in (0.7, 1.5, 2.5):
        def f2(x, y, c=c):
            u = 1.0 + (x * x + (y - 1.0) ** 2) / (2.0 * y)
            return (1.0 + u) * np.exp(-c * u)

        a = integrate_hyperbolic(f2, HPoint(0, 1), c, spec).value
        b = 2 * math.pi * integrate_radial(
            lambda u, c=c: (1.0 + u) * np.exp(-c * u), c, spec
        ).value
        assert abs(a - b) < 1e-8 * abs(b)


def test_hyperbolic_center_invariance():
    # the integrand depends only on the distance to the center, so the value
    # cannot depend on where the center sits
    spec = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-13)
    vals = []
    for cx, cy in ((0.0, 1.0), (1.5, 0.4), (-0.7, 2.5)):
        def f2(x, y, cx=cx, cy=cy):
            u = 1.0 + ((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * y * cy)
            return np.exp(-2.0 * u)

        vals.append(integrate_hyperbolic(f2, HPoint(cx, cy), 2.0, spec).value)
    assert abs(vals[0] - vals[1]) < 1e-9 * abs(vals[0])
    assert abs(vals[0] - vals[2]) < 1e-9 * abs(vals[0])


def test_truncation_radius_grows_with_tolerance():
    tight = truncation_cosh_radius(1.0, QuadratureSpec(rel_tol=1e-10, abs_tol=1e-14))
    loose = truncation_cosh_radius(1.0, QuadratureSpec(rel_tol=1e-4, abs_tol=1e-6))
    assert tight > loose > 1.0


def test_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(rel_tol=-1.0)
    with pytest.raises(DomainError):
        integrate_1d(lambda x: x, 1.0, 0.0, SPEC)
