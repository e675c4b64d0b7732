"""Small dense-matrix helpers shared across the package.

Matrices are plain ``numpy.ndarray`` of dtype complex128 throughout; these
helpers centralize validation, hermitian symmetrization and the couple of
2x2 constants the canonical forms are written in.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, NonHermitianError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)

SIGMA_X.setflags(write=False)
SIGMA_Y.setflags(write=False)
SIGMA_Z.setflags(write=False)


def as_square_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and convert input to a square, finite complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(m)):
        raise DimensionError(f"{name} contains non-finite entries")
    return m


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Project onto the hermitian part, (a + a^dagger)/2."""
    return (a + a.conj().T) / 2.0


def hermiticity_defect(a: np.ndarray) -> float:
    """Relative Frobenius distance from ``a`` to its hermitian part.

    Zero for an exactly hermitian matrix; defined as 0 for the zero matrix.
    """
    na = frobenius(a)
    if na == 0.0:
        return 0.0
    return frobenius(a - a.conj().T) / na


def require_hermitian(a: np.ndarray, tol: float = 1e-10, name: str = "matrix") -> np.ndarray:
    """Raise unless ``a`` is hermitian to relative tolerance ``tol``."""
    m = as_square_matrix(a, name=name)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NonHermitianError(
            f"{name} is not hermitian: relative defect {defect:.3e} > {tol:.1e}"
        )
    return m


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    """Assemble a block-diagonal complex matrix from square blocks.

    Scalars count as 1x1 blocks. An empty argument list yields a 0x0 matrix.
    """
    mats = [np.atleast_2d(np.asarray(b, dtype=np.complex128)) for b in blocks]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.complex128)
    k = 0
    for m in mats:
        s = m.shape[0]
        if m.shape != (s, s):
            raise DimensionError(f"block of shape {m.shape} is not square")
        out[k : k + s, k : k + s] = m
        k += s
    return out


def lock(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only (containers in this package are immutable)."""
    a.setflags(write=False)
    return a
