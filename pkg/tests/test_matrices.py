import numpy as np
import pytest
from numpy.testing import assert_allclose

from phm.errors import DimensionError, NonHermitianError
from phm.matrices import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    as_square_matrix,
    block_diag,
    frobenius,
    hermiticity_defect,
    hermitize,
    lock,
    require_hermitian,
)


def test_pauli_algebra():
    assert_allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z, atol=0)
    assert_allclose(SIGMA_Y @ SIGMA_Z, 1j * SIGMA_X, atol=0)
    for s in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert_allclose(s @ s, np.eye(2), atol=0)
        assert not s.flags.writeable


def test_as_square_matrix_accepts_lists():
    m = as_square_matrix([[1, 2], [3, 4]])
    assert m.dtype == np.complex128
    assert m.shape == (2, 2)


@pytest.mark.parametrize(
    "bad",
    [
        [[1, 2, 3], [4, 5, 6]],
        [1, 2, 3],
        np.zeros((0, 0)),
        [[np.inf, 0], [0, 1]],
        [[np.nan, 0], [0, 1]],
    ],
)
def test_as_square_matrix_rejects(bad):
    with pytest.raises(DimensionError):
        as_square_matrix(bad)


def test_hermitize_and_defect():
    a = np.array([[1.0, 2.0 + 1.0j], [0.0, 3.0]])
    h = hermitize(a)
    assert_allclose(h, h.conj().T, atol=0)
    assert hermiticity_defect(h) <= 1e-15
    assert hermiticity_defect(a) > 0.1
    assert hermiticity_defect(np.zeros((3, 3))) == 0.0


def test_require_hermitian():
    require_hermitian(SIGMA_Y)
    with pytest.raises(NonHermitianError):
        require_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_block_diag_layout():
    b = block_diag(np.array([[2.0]]), SIGMA_X)
    expected = np.array([[2, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128)
    assert_allclose(b, expected, atol=0)
    assert block_diag().shape == (0, 0)


def test_frobenius():
    assert frobenius(np.array([[3.0, 4.0]])) == pytest.approx(5.0)


def test_lock_blocks_writes():
    a = lock(np.zeros(3))
    with pytest.raises(ValueError):
        a[0] = 1.0
