import math

import numpy as np
import pytest

from horotube.kernel import phi_max_exact
from horotube.plane import DomainError, HPoint, SpectralParams
from horotube.quadrature import QuadratureSpec
from horotube.transform import (
    Mollifier,
    RouteUnavailableError,
    b_weight,
    continue_eigenfunction,
    laplace_asymptote_S,
    selberg_S,
    selberg_S_formula,
    selberg_S_quadrature,
)
from horotube.tube import horocycle_point_c

SPEC = QuadratureSpec(rel_tol=1e-9, abs_tol=1e-14)


def test_mollifier_support_and_smoothness():
    g = Mollifier(0.4, 0.6)
    assert g(0.39) == 0.0 and g(0.61) == 0.0
    assert g(0.5) > 0.0
    with pytest.raises(DomainError):
        Mollifier(0.6, 0.4)


def test_cross_route_consistency_small_grid():
    for eta in (0.4, 0.6):
        for tau in (2.0, 7.5):
            q = selberg_S_quadrature(eta, tau, 0.5, SPEC).value
            f = selberg_S_formula(eta, tau, 0.5, SPEC).value
            assert abs(q - f) < 1e-5 * abs(q)


def test_route_selector():
    assert selberg_S(0.5, 5.0, 0.5, SPEC).route == "formula1d"
    assert selberg_S(0.5, 50.0, 0.5, SPEC).route == "quadrature2d"
    assert selberg_S(0.5, 500.0, 0.5, SPEC).route == "laplace"


def test_formula_route_guard():
    with pytest.raises(RouteUnavailableError):
        selberg_S_formula(0.5, 31.0, 0.5, SPEC)


def test_laplace_ratio_tends_to_one():
    ratios = []
    for tau in (20.0, 40.0, 80.0):
        q = selberg_S_quadrature(0.5, tau, 0.5, SPEC)
        l = laplace_asymptote_S(0.5, tau, 0.5)
        ratios.append(math.exp(l.log_abs - q.log_abs))
    gaps = [abs(r - 1.0) for r in ratios]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.01


def test_rate_gap_decreases():
    for eta in (0.4, 0.5, 0.6):
        gaps = []
        for tau in (10.0, 20.0, 40.0):
            r = selberg_S(eta, tau, 0.5, SPEC)
            gaps.append(abs(r.log_abs / tau - phi_max_exact(eta, math.pi)))
        assert gaps[0] > gaps[1] > gaps[2]


def test_continuation_oracle_model_eigenfunction():
    eta, tau, s = 0.5, 5.0, 0.5
    st = SpectralParams(tau, s).s_tilde
    S = selberg_S(eta, tau, s, SPEC).value
    for _ in range(3):
        P = horocycle_point_c(HPoint(0.1, 1.2), 2.0, 0.35)

        def u(x, y):
            return np.exp(st * np.log(np.asarray(y, dtype=complex)))

        v = continue_eigenfunction(u, eta, tau, P, SPEC)
        ref = S * np.exp(st * np.log(P.Y))
        assert abs(v - ref) < 1e-8 * abs(ref)


def test_continuation_linearity():
    eta, tau = 0.5, 5.0
    st1 = SpectralParams(tau, 0.5).s_tilde
    st2 = SpectralParams(tau, 1.0).s_tilde
    P = horocycle_point_c(HPoint(0.2, 1.1), 1.3, 0.4)

    def u1(x, y):
        return np.exp(st1 * np.log(y))

    def u2(x, y):
        return np.exp(st2 * np.log(y))

    a, b = 0.7 - 0.2j, -1.1 + 0.4j
    vc = continue_eigenfunction(lambda x, y: a * u1(x, y) + b * u2(x, y),
                                eta, tau, P, SPEC)
    v1 = continue_eigenfunction(u1, eta, tau, P, SPEC)
    v2 = continue_eigenfunction(u2, eta, tau, P, SPEC)
    assert abs(vc - (a * v1 + b * v2)) < 1e-10 * (1 + abs(vc))


def test_b_weight_positive_and_rate():
    moll = Mollifier(0.4, 0.6)
    P = horocycle_point_c(HPoint(0.0, 1.0), 2.0, 0.5)
    gaps = []
    for tau in (10.0, 20.0):
        val = b_weight(P, moll, tau, 0.5)
        assert val > 0.0
        from horotube.kernel import B0
        from horotube.tube import tube_coords_from_point

        hc = tube_coords_from_point(P)
        gaps.append(abs(math.log(val) / tau - B0(hc.t, hc.theta)))
    assert gaps[1] < gaps[0]


def test_underflow_reported_via_log_abs():
    r = selberg_S_quadrature(0.5, 180.0, 0.5, QuadratureSpec(rel_tol=1e-7, abs_tol=1e-14))
    assert r.log_abs < -300.0
    assert math.isfinite(r.log_abs)
