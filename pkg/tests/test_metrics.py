import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import DIAG12, ROT2, make_instance
from phm import decompose, random_parameters
from phm.errors import NotSqhError, ParameterError
from phm.matrices import SIGMA_X, SIGMA_Y, SIGMA_Z
from phm.metrics import (
    CanonicalClass,
    MetricParameters,
    block_rotation,
    build_M,
    build_m,
    build_m0,
    canonical_metric,
    enumerate_classes,
    gauge_absorb,
    inertia_of_matrix,
    inertia_of_params,
    intertwining_residual,
    is_global_representative,
    m_inner_product,
    negate_class,
    pair_block,
    sqh_factorization,
)

nonzero_complex = st.complex_numbers(
    min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False
)


# ---------------------------------------------------------------- parameters


def test_parameters_reject_zero():
    with pytest.raises(ParameterError):
        MetricParameters(mu=[0.0], tau=[1.0])
    with pytest.raises(ParameterError):
        MetricParameters(mu=[1.0], tau=[0.0])
    with pytest.raises(ParameterError):
        MetricParameters(mu=[np.inf], tau=[])


def test_parameters_counts():
    params = MetricParameters(mu=[1.0, -2.0], tau=[1.0j])
    assert (params.r, params.p) == (2, 1)
    neg = params.negated()
    assert_allclose(neg.mu, [-1.0, 2.0], atol=0)
    assert_allclose(neg.tau, [-1.0j], atol=0)


def test_canonical_class_validation():
    with pytest.raises(ParameterError):
        CanonicalClass(signs=(2,), n=(), theta=())
    with pytest.raises(ParameterError):
        CanonicalClass(signs=(), n=(0,), theta=(7.0,))  # phase outside [0, 2pi)
    with pytest.raises(ParameterError):
        CanonicalClass(signs=(), n=(0, 1), theta=(0.0,))
    # the global-flip convention is a property of enumerated representatives,
    # not a constructor constraint
    CanonicalClass(signs=(-1,), n=(1,), theta=(1.0,))


# ------------------------------------------------------------ block algebra


def test_pair_block_structure():
    tau = 2.0 - 1.0j
    B = pair_block(tau)
    assert_allclose(B, tau.real * SIGMA_X + tau.imag * SIGMA_Y, atol=0)
    assert_allclose(sorted(np.linalg.eigvalsh(B)), [-abs(tau), abs(tau)], atol=1e-14)


def test_build_m_layout():
    params = MetricParameters(mu=[3.0], tau=[1.0j])
    m = build_m(params)
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 0] = 3.0
    expected[1:, 1:] = pair_block(1.0j)
    assert_allclose(m, expected, atol=0)


@settings(deadline=None)
@given(tau=nonzero_complex, n=st.integers(0, 1))
def test_block_rotation_diagonalizes(tau, n):
    W = block_rotation(tau, n)
    assert_allclose(W @ W.conj().T, np.eye(2), atol=1e-14)
    got = W @ pair_block(tau) @ W.conj().T
    assert_allclose(got, (-1.0) ** n * abs(tau) * SIGMA_Z, atol=1e-13 * abs(tau))


def test_build_m0_is_signature():
    m0 = build_m0((1, -1), (1,))
    assert_allclose(m0, np.diag([1.0, -1.0, -1.0, 1.0]), atol=0)
    assert_allclose(m0 @ m0, np.eye(4), atol=0)


# ------------------------------------------------------------ golden metrics


def test_golden_rotation_metrics():
    sd = decompose(ROT2)
    res_z = build_M(sd, MetricParameters(mu=[], tau=[1.0]))
    assert_allclose(res_z.M, SIGMA_Z, atol=1e-12)
    assert res_z.inertia == (1, 1, 0)
    res_x = build_M(sd, MetricParameters(mu=[], tau=[1.0j]))
    assert_allclose(res_x.M, SIGMA_X, atol=1e-12)
    # direct substitution into the intertwining relation
    for M in (SIGMA_Z, SIGMA_X):
        assert_allclose(ROT2.conj().T @ M, M @ ROT2, atol=0)
    assert intertwining_residual(ROT2, SIGMA_Y) > 0.1


def test_golden_diagonal_metric():
    sd = decompose(DIAG12)
    res = build_M(sd, MetricParameters(mu=[1.0, -3.0], tau=[]))
    assert_allclose(res.M, np.diag([1.0, -3.0]), atol=0)
    assert res.inertia == (1, 1, 0)
    assert res.residual == 0.0


def test_observable_product_is_compatible():
    # A = sigma_x, M = sigma_z: the product A M solves the intertwining
    # relation with metric M by construction.
    Phi = SIGMA_X @ SIGMA_Z
    assert_allclose(Phi, np.array([[0.0, -1.0], [1.0, 0.0]]), atol=0)
    assert intertwining_residual(Phi, SIGMA_Z) == 0.0


def test_residual_rejects_shape_mismatch():
    with pytest.raises(Exception):
        intertwining_residual(np.eye(2), np.eye(3))


def test_residual_frozen_value():
    # H = diag(1,2), M = sigma_x: H^dagger M - M H = [[0,-1],[1,0]], so the
    # relative residual is sqrt(2) / (sqrt(5) sqrt(2)) = 1/sqrt(5).
    res = intertwining_residual(np.diag([1.0, 2.0]), SIGMA_X)
    assert res == pytest.approx(1.0 / math.sqrt(5.0), rel=1e-15)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 10**6))
def test_family_solves_intertwining(seed):
    inst = make_instance(6, 2, 2, seed=seed % 1000)
    params = random_parameters(2, 2, seed=seed)
    res = build_M(inst.sd, params)
    assert res.residual <= 1e-11
    assert np.array_equal(res.M, res.M.conj().T)


def test_build_M_count_mismatch():
    inst = make_instance(4, 2, 1, seed=1)
    with pytest.raises(ParameterError):
        build_M(inst.sd, MetricParameters(mu=[1.0], tau=[1.0]))


def test_inner_product_conjugate_linearity():
    M = SIGMA_Z
    a = np.array([1.0, 1.0j])
    b = np.array([2.0, 0.0])
    assert m_inner_product(M, 1.0j * a, b) == pytest.approx(
        -1.0j * m_inner_product(M, a, b)
    )


# ------------------------------------------------------- canonical form


def test_canonical_double_cover():
    sd = decompose(ROT2)
    m_a = canonical_metric(sd, CanonicalClass(signs=(), n=(0,), theta=(0.0,))).M
    m_b = canonical_metric(sd, CanonicalClass(signs=(), n=(1,), theta=(math.pi,))).M
    assert_allclose(m_a, SIGMA_Z, atol=1e-12)
    assert_allclose(m_b, SIGMA_Z, atol=1e-12)


def test_canonical_identity_class_is_positive():
    sd = decompose(DIAG12)
    res = canonical_metric(sd, CanonicalClass(signs=(1, 1), n=(), theta=()))
    assert_allclose(res.M, np.eye(2), atol=0)
    assert res.inertia == (2, 0, 0)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10**6))
def test_gauge_absorption_identity(seed):
    inst = make_instance(5, 1, 2, seed=seed % 500)
    params = random_parameters(1, 2, seed=seed)
    direct = build_M(inst.sd, params).M
    sd2, cls = gauge_absorb(inst.sd, params)
    absorbed = canonical_metric(sd2, cls).M
    assert_allclose(absorbed, direct, atol=1e-12 * np.abs(direct).max())


def test_gauge_absorb_extracts_signs_and_phases():
    inst = make_instance(4, 2, 1, seed=11)
    params = MetricParameters(mu=[-2.0, 0.5], tau=[3.0 * cmath.exp(1.0j)])
    _, cls = gauge_absorb(inst.sd, params)
    assert cls.signs == (-1, 1)
    assert cls.n == (0,)
    assert cls.theta[0] == pytest.approx(1.0)


# ------------------------------------------------------------------ inertia


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10**6))
def test_inertia_matches_sylvester(seed):
    inst = make_instance(6, 2, 2, seed=seed % 300)
    params = random_parameters(2, 2, seed=seed)
    res = build_M(inst.sd, params)
    ip, im = inertia_of_params(params, inst.sd.p)
    assert res.inertia == (ip, im, 0)
    assert inertia_of_matrix(res.M) == (ip, im, 0)


def test_inertia_of_params_floor():
    params = MetricParameters(mu=[2.0], tau=[1.0j])
    assert inertia_of_params(params, 1) == (2, 1)


def test_inertia_of_matrix_counts_null():
    assert inertia_of_matrix(np.diag([2.0, -1.0, 0.0])) == (1, 1, 1)


# ------------------------------------------------------------- enumeration


def test_negate_class_involution():
    signs, bits = negate_class((1, -1), (0, 1))
    assert (signs, bits) == ((-1, 1), (1, 0))
    assert negate_class(signs, bits) == ((1, -1), (0, 1))


def test_negation_flips_metric_sign():
    # the signature matrix of the negated class is exactly -m0
    m0 = build_m0((1, -1), (0, 1))
    s2, b2 = negate_class((1, -1), (0, 1))
    assert_allclose(build_m0(s2, b2), -m0, atol=0)


def test_enumerate_counts_and_representatives():
    classes = enumerate_classes(2, 1)
    assert len(classes) == 2 ** (2 + 1 - 1)
    assert all(is_global_representative(s, b) for s, b in classes)
    full = enumerate_classes(2, 1, mod_global=False)
    assert len(full) == 2 ** 3
    # quotient check: every full assignment is a representative or the
    # negation of one, and representatives are pairwise non-negations
    reps = set(classes)
    for s, b in full:
        assert (s, b) in reps or negate_class(s, b) in reps
    for s, b in classes:
        assert negate_class(s, b) not in reps


def test_enumerate_lexicographic_order():
    classes = enumerate_classes(1, 1, mod_global=False)
    assert classes == [
        ((1,), (0,)),
        ((1,), (1,)),
        ((-1,), (0,)),
        ((-1,), (1,)),
    ]


def test_enumerate_r0_representative_uses_first_bit():
    classes = enumerate_classes(0, 2)
    assert all(b[0] == 0 for _, b in classes)
    assert len(classes) == 2


def test_enumerate_cap():
    from phm.errors import EnumerationCapError

    with pytest.raises(EnumerationCapError):
        enumerate_classes(40, 40)


# ------------------------------------------------------------------- sqh


def test_sqh_positive_definite():
    inst = make_instance(4, 4, 0, seed=21)
    res = sqh_factorization(inst.sd)
    np.linalg.cholesky(res.M)  # raises if not positive definite
    assert res.inertia == (4, 0, 0)
    assert res.residual <= 1e-11


def test_sqh_refuses_pairs():
    inst = make_instance(4, 2, 1, seed=22)
    with pytest.raises(NotSqhError):
        sqh_factorization(inst.sd)
