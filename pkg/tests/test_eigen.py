import math

import numpy as np
import pytest

from horotube.eigen import (
    EigenSpec,
    SliceSpec,
    eval_eigen,
    eval_eigen_c,
    growth_profile,
)
from horotube.plane import (
    DomainError,
    HPoint,
    Isometry,
    SpectralParams,
    apply_D_tau_fd,
)
from horotube.tube import CPoint, TubeError, horocycle_point_c

RNG = np.random.default_rng(23)

PARAMS = SpectralParams(4.0, 0.7)
SPEC = EigenSpec(
    ((1.0, Isometry.identity()), (0.6 - 0.3j, Isometry(1.2, 0.3, 0.4, 1.0))),
    PARAMS,
)


def test_eigenspec_requires_terms():
    with pytest.raises(DomainError):
        EigenSpec((), PARAMS)


def test_eigen_residual():
    for _ in range(25):
        z = HPoint(RNG.uniform(-1, 1), RNG.uniform(0.5, 2.0))
        lhs = apply_D_tau_fd(lambda p: eval_eigen(SPEC, p), PARAMS.tau, z)
        rhs = PARAMS.s ** 2 * eval_eigen(SPEC, z)
        assert abs(lhs - rhs) < 1e-4 * (1e-300 + abs(rhs))


def test_eval_eigen_c_restricts_to_real():
    for _ in range(50):
        z = HPoint(RNG.uniform(-1, 1), RNG.uniform(0.5, 2.0))
        a = eval_eigen(SPEC, z)
        b = eval_eigen_c(SPEC, CPoint.from_hpoint(z))
        assert abs(a - b) < 1e-12 * (1 + abs(a))


def test_model_term_closed_form():
    # single identity term: u_C(P) = Y^s_tilde
    spec = EigenSpec(((1.0, Isometry.identity()),), PARAMS)
    P = horocycle_point_c(HPoint(0.3, 1.4), 1.0, 0.5)
    import cmath

    assert abs(eval_eigen_c(spec, P) - cmath.exp(PARAMS.s_tilde * cmath.log(P.Y))) < 1e-13


def test_slice_spec_validation():
    with pytest.raises(DomainError):
        SliceSpec("bogus", (0, 1, 0, 1), 8)
    with pytest.raises(DomainError):
        SliceSpec("theta_slice", (0.2, 0.1, 0, 1), 8, z_base=HPoint(0, 1))
    with pytest.raises(DomainError):
        SliceSpec("line_slice", (0, 1, 0, 1), 8)  # missing P0/V


def test_out_of_tube_slice_detected():
    slc = SliceSpec(
        "line_slice", (-4.0, 4.0, -4.0, 4.0), 8,
        P0=CPoint(0.45j, 1.0 + 0j), V=(0.5j, 0.0 + 0j),
    )
    with pytest.raises(TubeError):
        slc.check_in_tube()


def test_growth_profile_theta_pi_has_zero_b0():
    slc = SliceSpec(
        "theta_slice", (0.1, 0.6, math.pi - 1e-12, math.pi + 1e-12), 4,
        z_base=HPoint(0.0, 1.0),
    )
    rows = growth_profile(SPEC, slc)
    assert rows
    for r in rows:
        assert abs(r.b0) < 1e-10


def test_growth_profile_schema_and_normalization():
    slc = SliceSpec("theta_slice", (0.1, 0.5, 0.0, 2.0), 3, z_base=HPoint(0.0, 1.0))
    rows = growth_profile(SPEC, slc)
    assert len(rows) == 9
    tau = PARAMS.tau
    for r in rows:
        assert r.abs_u_sq >= 0.0
        assert math.isclose(
            r.normalized, math.sqrt(tau) * r.abs_u_sq * math.exp(tau * r.b0),
            rel_tol=1e-12,
        )
        if r.abs_u_sq > 0:
            assert math.isclose(
                r.rate_gap, math.log(r.abs_u_sq) / tau + r.b0, rel_tol=1e-10,
                abs_tol=1e-12,
            )


def test_gauge_translation_invariance_of_abs():
    # |u(gamma z)| weighted by the unimodular cocycle equals |translated spec|
    g = Isometry(1.0, 0.5, 0.0, 1.0)  # affine: gauge factor is exactly 1
    spec_t = EigenSpec(
        tuple((c, iso.compose(g)) for c, iso in SPEC.terms), PARAMS
    )
    for _ in range(20):
        z = HPoint(RNG.uniform(-1, 1), RNG.uniform(0.5, 2.0))
        from horotube.plane import mobius_apply

        a = eval_eigen(SPEC, mobius_apply(g, z))
        b = eval_eigen(spec_t, z)
        assert abs(a - b) < 1e-12 * (1 + abs(a))
