import cmath
import math

import numpy as np
import pytest

from horotube.plane import DomainError, HPoint, Isometry
from horotube.tube import (
    CPoint,
    cosh_dist_c,
    horocycle_point,
    horocycle_point_c,
    in_tube,
    log_gauge,
    mobius_apply_c,
    tube_coords_from_point,
    tube_coords_grid,
)

RNG = np.random.default_rng(7)


def rand_point():
    return HPoint(RNG.uniform(-2, 2), RNG.uniform(0.3, 3.0))


def rand_tube_point(t_hi=0.95):
    z = rand_point()
    theta = RNG.uniform(0, 2 * math.pi)
    t = RNG.uniform(0.05, t_hi)
    return z, theta, t, horocycle_point_c(z, theta, t)


def test_forward_anchor_theta_pi():
    # at z = i, theta = pi the tube point is (it, 1)
    for t in (0.1, 0.5, 0.9):
        P = horocycle_point_c(HPoint(0, 1), math.pi, t)
        assert abs(P.X - 1j * t) < 1e-14
        assert abs(P.Y - 1.0) < 1e-14


def test_forward_anchor_theta_zero():
    for t in (0.1, 0.5, 0.9):
        P = horocycle_point_c(HPoint(0, 1), 0.0, t)
        assert abs(P.X - (-1j * t / (1 - t * t))) < 1e-13
        assert abs(P.Y - 1.0 / (1 - t * t)) < 1e-13


def test_t_zero_is_real_point():
    z = rand_point()
    P = horocycle_point_c(z, 1.2, 0.0)
    assert P.is_real()
    assert abs(P.X - z.x) < 1e-15 and abs(P.Y - z.y) < 1e-15


def test_tube_condition_on_samples():
    for _ in range(500):
        _, _, _, P = rand_tube_point()
        assert P.Y.real > abs(P.X.imag)
        assert in_tube(P, 1.0)


def test_round_trip():
    for _ in range(500):
        z, theta, t, P = rand_tube_point()
        hc = tube_coords_from_point(P)
        assert abs(hc.t - t) < 1e-10
        assert abs((hc.theta - theta + math.pi) % (2 * math.pi) - math.pi) < 1e-9
        P2 = horocycle_point_c(hc.base, hc.theta, hc.t)
        scale = abs(P.X) + abs(P.Y) + 1.0
        assert (abs(P2.X - P.X) + abs(P2.Y - P.Y)) / scale < 1e-9


def test_real_point_inverse():
    hc = tube_coords_from_point(CPoint(0.4 + 0j, 1.3 + 0j))
    assert hc.t == 0.0
    assert hc.theta is None  # undefined direction at zero depth


def test_horocycle_real_flow_unit_speed():
    z = HPoint(0.2, 1.5)
    h = 1e-6
    for t in (-0.8, 0.0, 1.2):
        zp, zm = horocycle_point(z, 0.9, t + h), horocycle_point(z, 0.9, t - h)
        zc = horocycle_point(z, 0.9, t)
        assert abs(abs(zp.z - zm.z) / (2 * h) / zc.y - 1.0) < 1e-6


def test_log_gauge_matches_ratio():
    for _ in range(200):
        z = rand_point()
        _, _, _, P = rand_tube_point(t_hi=0.9)
        direct = (z.z - P.Zt) / (z.z.conjugate() - P.Z)
        assert abs(cmath.exp(log_gauge(z, P)) - direct) < 1e-12 * (1 + abs(direct))


def test_cosh_dist_c_real_restriction():
    z, w = rand_point(), rand_point()
    from horotube.plane import cosh_dist

    assert abs(cosh_dist_c(z, CPoint.from_hpoint(w)) - cosh_dist(z, w)) < 1e-13


def test_mobius_apply_c_consistent_with_real():
    for _ in range(100):
        a, b, c, d = RNG.uniform(-2, 2, 4)
        if a * d - b * c <= 0.1:
            continue
        g = Isometry(a, b, c, d)
        z = rand_point()
        gP = mobius_apply_c(g, CPoint.from_hpoint(z))
        from horotube.plane import mobius_apply

        gz = mobius_apply(g, z)
        assert abs(gP.X - gz.x) < 1e-12 and abs(gP.Y - gz.y) < 1e-12


def test_tube_coords_grid_matches_scalar():
    X = np.array([[0.1j * 0.3, 0.2 + 0.05j], [0.4 - 0.02j, 0.15j]])
    Y = np.array([[1.0 + 0j, 1.1 + 0.03j], [0.9 - 0.01j, 1.2 + 0j]])
    t, theta = tube_coords_grid(X, Y)
    for i in range(2):
        for j in range(2):
            hc = tube_coords_from_point(CPoint(X[i, j], Y[i, j]))
            assert abs(t[i, j] - hc.t) < 1e-9
            if hc.theta is not None:
                dth = abs((theta[i, j] - hc.theta + math.pi) % (2 * math.pi) - math.pi)
                assert dth < 1e-8


def test_out_of_tube_rejected():
    with pytest.raises(DomainError):
        tube_coords_from_point(CPoint(0.0 + 2.0j, 1.0 + 0j))
