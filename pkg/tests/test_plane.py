import cmath
import math

import numpy as np
import pytest

from horotube.plane import (
    CotangentVector,
    DomainError,
    HPoint,
    Isometry,
    SpectralParams,
    TangentVector,
    apply_D_tau_fd,
    cosh_dist,
    magnetic_hamiltonian,
    mobius_apply,
    psi1,
)

RNG = np.random.default_rng(42)


def rand_point():
    return HPoint(RNG.uniform(-2, 2), RNG.uniform(0.3, 3.0))


def rand_iso():
    while True:
        a, b, c, d = RNG.uniform(-2, 2, 4)
        if a * d - b * c > 0.1:
            return Isometry(a, b, c, d)


def test_hpoint_requires_positive_y():
    with pytest.raises(DomainError):
        HPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        HPoint(1.0, -0.5)


def test_isometry_normalized_and_sign_fixed():
    g = Isometry(2.0, 0.0, 0.0, 2.0)
    assert math.isclose(g.a * g.d - g.b * g.c, 1.0, rel_tol=1e-15)
    assert g.c > 0 or (g.c == 0 and g.d > 0)
    h = Isometry(-1.0, 0.0, 0.0, -1.0)
    assert h.d > 0  # sign pinned to the canonical representative


def test_isometry_rejects_nonpositive_determinant():
    with pytest.raises(DomainError):
        Isometry(1.0, 2.0, 2.0, 1.0)  # det = -3


def test_rotation_fixes_i_and_identity():
    for theta in (0.0, 0.7, math.pi, 5.0):
        assert abs(mobius_apply(Isometry.rotation(theta), HPoint(0, 1)).z - 1j) < 1e-14
    z = rand_point()
    assert abs(mobius_apply(Isometry.identity(), z).z - z.z) < 1e-15


def test_group_law_and_inverse():
    for _ in range(200):
        g1, g2 = rand_iso(), rand_iso()
        z = rand_point()
        lhs = mobius_apply(g1.compose(g2), z).z
        rhs = mobius_apply(g1, mobius_apply(g2, z)).z
        assert abs(lhs - rhs) < 1e-12
        back = mobius_apply(g1.inverse(), mobius_apply(g1, z)).z
        assert abs(back - z.z) < 1e-12


def test_cosh_dist_known_values():
    # points on the imaginary axis: dist(i, iy) = |log y|
    for y in (0.5, 2.0, 7.0):
        assert math.isclose(
            cosh_dist(HPoint(0, 1), HPoint(0, y)), math.cosh(abs(math.log(y))),
            rel_tol=1e-14,
        )
    assert math.isclose(cosh_dist(rand_point(), rand_point()),
                        cosh_dist(rand_point(), rand_point()), rel_tol=10) # smoke


def test_cosh_dist_isometry_invariant():
    for _ in range(300):
        g = rand_iso()
        z, w = rand_point(), rand_point()
        assert abs(
            cosh_dist(mobius_apply(g, z), mobius_apply(g, w)) - cosh_dist(z, w)
        ) < 1e-12


def test_psi1_lands_on_null_level_set():
    for _ in range(300):
        v = TangentVector.unit(rand_point(), RNG.uniform(0, 2 * math.pi))
        assert abs(magnetic_hamiltonian(1.0, psi1(v)) - 0.5) < 1e-14


def test_magnetic_hamiltonian_formula():
    p = CotangentVector(HPoint(0.0, 2.0), 0.25, -0.5)
    # ((y xi1 - b)^2 + (y xi2)^2) / 2 with y=2
    assert math.isclose(
        magnetic_hamiltonian(1.0, p), ((0.5 - 1.0) ** 2 + 1.0) / 2.0, rel_tol=1e-15
    )


def test_spectral_params_s_tilde_invariant():
    for s in (0.3, 0.5, 0.9, 2.0):
        st = SpectralParams(3.0, s).s_tilde
        assert abs(st * (st - 1.0) + s * s) < 1e-12
        assert abs(st - (0.5 + 1j * cmath.sqrt(s * s - 0.25))) < 1e-14


def test_apply_D_tau_fd_eigen_exponent():
    params = SpectralParams(2.5, 0.8)
    st = params.s_tilde
    z = HPoint(0.3, 1.7)
    val = apply_D_tau_fd(lambda p: p.y ** st, params.tau, z)
    assert abs(val - params.s ** 2 * z.y ** st) / abs(val) < 1e-5
