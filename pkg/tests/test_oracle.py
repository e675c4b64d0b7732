import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import DIAG12, ROT2, make_instance
from phm import decompose, random_hermitian
from phm.errors import DimensionError, EnumerationCapError, FamilyMismatchError
from phm.matrices import SIGMA_X, SIGMA_Y, SIGMA_Z
from phm.oracle import (
    family_vs_kernel,
    hermitian_basis,
    hermitian_coords,
    intertwining_operator_matrix,
    matrix_from_coords,
    solution_space,
)


def test_basis_is_trace_orthonormal():
    basis = hermitian_basis(3)
    assert basis.dim == 9
    E = basis.elements
    gram = np.einsum("aij,bji->ab", E, E)
    assert_allclose(gram, np.eye(9), atol=1e-15)
    for mat in E:
        assert_allclose(mat, mat.conj().T, atol=0)


@settings(deadline=None, max_examples=30)
@given(n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_coords_round_trip(n, seed):
    basis = hermitian_basis(n)
    M = random_hermitian(n, seed)
    x = hermitian_coords(basis, M)
    assert x.dtype == np.float64
    assert_allclose(matrix_from_coords(basis, x), M, atol=1e-14)


def test_operator_matrix_eigenvalues_are_spectral_differences():
    # The operator matrix represents M -> -i (H^dagger M - M H), whose
    # complexification has eigenvalues -i (conj(lambda_k) - lambda_l) over
    # all index pairs; an independent handle on its spectrum.
    inst = make_instance(4, 2, 1, seed=5)
    L = intertwining_operator_matrix(inst.H)
    got = list(np.linalg.eigvals(L))
    lam = inst.sd.lam
    expected = [-1j * (lam[k].conjugate() - lam[l]) for k in range(4) for l in range(4)]
    # multiset comparison by greedy nearest matching; sorting complex values
    # lexicographically is unstable when real parts tie up to rounding
    worst = 0.0
    for z in expected:
        k = int(np.argmin([abs(z - w) for w in got]))
        worst = max(worst, abs(z - got.pop(k)))
    assert worst <= 1e-8


def test_operator_matrix_is_real_and_square():
    L = intertwining_operator_matrix(ROT2)
    assert L.dtype == np.float64
    assert L.shape == (4, 4)


def test_kernel_golden_rotation():
    report = solution_space(ROT2)
    assert report.dimension == 2
    # the kernel is span{sigma_z, sigma_x}: identity and sigma_y are not in it
    basis = hermitian_basis(2)
    K = np.stack([hermitian_coords(basis, B) for B in report.basis])

    def proj_defect(M):
        x = hermitian_coords(basis, M)
        return np.linalg.norm(x - K.T @ (K @ x)) / np.linalg.norm(x)

    assert proj_defect(SIGMA_Z) <= 1e-12
    assert proj_defect(SIGMA_X) <= 1e-12
    assert proj_defect(np.eye(2)) > 0.9
    assert proj_defect(SIGMA_Y) > 0.9


def test_kernel_golden_diagonal():
    report = solution_space(DIAG12)
    assert report.dimension == 2
    for B in report.basis:
        assert_allclose(B, np.diag(np.diag(B)), atol=1e-14)


def test_kernel_matrices_are_hermitian():
    inst = make_instance(5, 1, 2, seed=8)
    report = solution_space(inst.H)
    assert report.dimension == 5
    for B in report.basis:
        assert np.array_equal(B, B.conj().T)
    assert report.gap_ratio > 100.0
    assert not report.rank_ambiguous


def test_degenerate_spectrum_has_larger_kernel():
    report = solution_space(np.eye(2))
    assert report.dimension == 4


def test_family_vs_kernel_agreement():
    inst = make_instance(6, 2, 2, seed=13)
    report = solution_space(inst.H)
    match = family_vs_kernel(inst.sd, report, n_samples=5, seed=99)
    assert match.max_projection_defect <= 1e-8
    assert match.max_recovery_defect <= 1e-8
    assert match.params_recovered


def test_family_vs_kernel_rejects_wrong_dimension():
    sd = decompose(DIAG12)
    degenerate_report = solution_space(np.eye(2))
    with pytest.raises(FamilyMismatchError):
        family_vs_kernel(sd, degenerate_report)


def test_dimension_cap():
    with pytest.raises(EnumerationCapError):
        solution_space(np.zeros((33, 33)))


def test_basis_dimension_mismatch():
    with pytest.raises(DimensionError):
        intertwining_operator_matrix(ROT2, basis=hermitian_basis(3))
