"""The metric family, its canonical form, inertia and class enumeration.

Every hermitian M with H^dagger M = M H, for H with r real eigenvalues
and p non-degenerate conjugate pairs, is M = S^dagger m S where m is
block-diagonal: one real number mu_i per real eigenvalue and one 2x2
block [[0, conj(tau)], [tau, 0]] per conjugate pair. Invertibility
requires every parameter nonzero. Each pair block has eigenvalues
+-|tau|, which pins the signature floor: at least p positive and p
negative metric eigenvalues, however the parameters are chosen.

A unitary built from the pair phases rotates every pair block onto
+-sigma_z, separating the "physical" data (sign pattern and phases) from
the pure-gauge magnitudes, which can be absorbed into the diagonalizer.
The discrete part of the solution space is a sign assignment per real
eigenvalue plus a binary orientation per pair, modulo one global sign
flip; the continuous part is one phase per pair.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (
    DimensionError,
    EnumerationCapError,
    NotSqhError,
    ParameterError,
)
from .matrices import (
    SIGMA_Z,
    as_square_matrix,
    block_diag,
    frobenius,
    hermitize,
    hermiticity_defect,
    lock,
    require_hermitian,
)
from .spectral import SpectralData

TWO_PI = 2.0 * math.pi

# exp(i pi/4 sigma_y): quarter turn taking the x axis onto the z axis.
_ROT_X_TO_Z = np.array([[1.0, 1.0], [-1.0, 1.0]], dtype=np.complex128) / math.sqrt(2.0)
_ROT_X_TO_Z.setflags(write=False)

ENUMERATION_CAP = 62  # 2**(r+p) must fit a machine word


@dataclass(frozen=True)
class MetricParameters:
    """Free parameters of the metric family: r reals and p complex numbers.

    All entries must be nonzero, otherwise the resulting metric would be
    singular; non-invertible boundary metrics are out of scope.
    """

    mu: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray([] if self.mu is None else self.mu, dtype=np.float64))
        tau = np.atleast_1d(np.asarray([] if self.tau is None else self.tau, dtype=np.complex128))
        if mu.ndim != 1 or tau.ndim != 1:
            raise ParameterError("mu and tau must be flat sequences")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(tau))):
            raise ParameterError("metric parameters must be finite")
        if np.any(mu == 0.0):
            raise ParameterError("every mu must be nonzero (metric would be singular)")
        if np.any(tau == 0.0):
            raise ParameterError("every tau must be nonzero (metric would be singular)")
        object.__setattr__(self, "mu", lock(mu))
        object.__setattr__(self, "tau", lock(tau))

    @property
    def r(self) -> int:
        return self.mu.shape[0]

    @property
    def p(self) -> int:
        return self.tau.shape[0]

    def negated(self) -> "MetricParameters":
        return MetricParameters(mu=-self.mu, tau=-self.tau)


@dataclass(frozen=True)
class CanonicalClass:
    """One point of the canonical solution space: signs, pair bits, phases.

    ``signs`` is the sign of each real-sector diagonal entry, ``n`` the
    orientation bit of each pair block (flipping +sigma_z to -sigma_z) and
    ``theta`` the phase of each pair block, in [0, 2pi). The global-flip
    quotient convention (first diagonal entry of the induced signature
    matrix equal to +1) applies to enumerated representatives, not to
    every instance; see :func:`enumerate_classes`.
    """

    signs: tuple[int, ...]
    n: tuple[int, ...]
    theta: tuple[float, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        bits = tuple(int(b) for b in self.n)
        theta = tuple(float(t) for t in self.theta)
        if any(s not in (-1, 1) for s in signs):
            raise ParameterError(f"signs must be +1 or -1, got {signs}")
        if any(b not in (0, 1) for b in bits):
            raise ParameterError(f"pair bits must be 0 or 1, got {bits}")
        if len(theta) != len(bits):
            raise ParameterError("need exactly one phase per pair bit")
        if any(not (0.0 <= t < TWO_PI) for t in theta):
            raise ParameterError("phases must lie in [0, 2pi)")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "n", bits)
        object.__setattr__(self, "theta", theta)

    @property
    def r(self) -> int:
        return len(self.signs)

    @property
    def p(self) -> int:
        return len(self.n)


@dataclass(frozen=True)
class MetricResult:
    """A hermitian metric with its inertia and intertwining residual."""

    M: np.ndarray
    inertia: tuple[int, int, int]
    residual: float

    def __post_init__(self):
        lock(self.M)


def pair_block(tau: complex) -> np.ndarray:
    """The 2x2 hermitian block [[0, conj(tau)], [tau, 0]] of a conjugate pair."""
    return np.array([[0.0, np.conj(tau)], [tau, 0.0]], dtype=np.complex128)


def build_m(params: MetricParameters, r: int | None = None, p: int | None = None) -> np.ndarray:
    """Assemble the block-diagonal metric in the eigenbasis.

    block-diag(mu_1 ... mu_r, B(tau_1), ..., B(tau_p)) with
    B(tau) = [[0, conj(tau)], [tau, 0]]. Hermitian and invertible for
    valid parameters.
    """
    if r is not None and r != params.r:
        raise ParameterError(f"expected {r} real parameters, got {params.r}")
    if p is not None and p != params.p:
        raise ParameterError(f"expected {p} pair parameters, got {params.p}")
    blocks = [np.array([[m]], dtype=np.complex128) for m in params.mu]
    blocks.extend(pair_block(t) for t in params.tau)
    return block_diag(*blocks)


def intertwining_residual(
    H,
    M,
    check_hermitian: bool = True,
    herm_tol: float = 1e-10,
) -> float:
    """Relative Frobenius norm of H^dagger M - M H.

    Returns ||H^dagger M - M H||_F / (||H||_F ||M||_F), the figure of
    merit for M being a metric compatible with H. For hermitian M the
    residual matrix is anti-hermitian as an algebraic identity, which is
    asserted; ``check_hermitian=False`` skips the hermiticity gate (used
    when diagnosing arbitrary candidate matrices).
    """
    H = as_square_matrix(H, name="H")
    M = as_square_matrix(M, name="M")
    if H.shape != M.shape:
        raise DimensionError(f"H has shape {H.shape} but M has shape {M.shape}")
    if check_hermitian:
        require_hermitian(M, tol=herm_tol, name="M")
    R = H.conj().T @ M - M @ H
    den = frobenius(H) * frobenius(M)
    if check_hermitian:
        anti = frobenius(R + R.conj().T)
        assert anti <= 1e-12 * (1.0 + den), "residual of a hermitian M must be anti-hermitian"
    if den == 0.0:
        return 0.0
    return frobenius(R) / den


def build_M(sd: SpectralData, params: MetricParameters) -> MetricResult:
    """Map family parameters to a metric for sd's matrix: M = S^dagger m S.

    The result is hermitian-symmetrized; its inertia follows from the
    parameter signs alone and its intertwining residual is computed
    against the matrix the decomposition was built from.
    """
    if (params.r, params.p) != (sd.r, sd.p):
        raise ParameterError(
            f"parameter counts (r={params.r}, p={params.p}) do not match "
            f"spectrum (r={sd.r}, p={sd.p})"
        )
    m = build_m(params)
    M = hermitize(sd.S.conj().T @ m @ sd.S)
    ip, im = inertia_of_params(params, sd.p)
    res = intertwining_residual(sd.matrix, M)
    return MetricResult(M=M, inertia=(ip, im, 0), residual=res)


def m_inner_product(M, a, b) -> complex:
    """Indefinite inner product <a|M b> (conjugate-linear in ``a``)."""
    M = require_hermitian(M, name="M")
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.shape[0] != M.shape[0] or b.shape[0] != M.shape[0]:
        raise DimensionError(
            f"vectors of lengths {a.shape[0]}, {b.shape[0]} do not match "
            f"metric of dimension {M.shape[0]}"
        )
    return complex(np.vdot(a, M @ b))


def _phase_rotation(theta: float) -> np.ndarray:
    """exp(i theta/2 sigma_z) = diag(e^{i theta/2}, e^{-i theta/2})."""
    return np.array(
        [[cmath.exp(0.5j * theta), 0.0], [0.0, cmath.exp(-0.5j * theta)]],
        dtype=np.complex128,
    )


def pair_rotation(theta: float) -> np.ndarray:
    """Unitary taking the phase-theta pair block onto |tau| sigma_z."""
    return _ROT_X_TO_Z @ _phase_rotation(theta)


def block_rotation(tau: complex, n: int) -> np.ndarray:
    """Unitary W with W B(tau) W^dagger = (-1)^n |tau| sigma_z.

    W first rotates the pair block in the xy plane onto the x axis, then
    around y onto z; the bit ``n`` appends a half-turn that flips the
    sign of the diagonalized block.
    """
    tau = complex(tau)
    if tau == 0:
        raise ParameterError("tau must be nonzero")
    if n not in (0, 1):
        raise ParameterError(f"orientation bit must be 0 or 1, got {n}")
    return pair_rotation(cmath.phase(tau)) @ _phase_rotation(n * math.pi)


def build_m0(signs, n) -> np.ndarray:
    """Signature matrix: block-diag(signs, (-1)^{n_1} sigma_z, ...).

    All diagonal entries are +-1, so the square is the identity; this
    carries exactly the inertia data of a family member.
    """
    signs = tuple(int(s) for s in signs)
    bits = tuple(int(b) for b in n)
    if any(s not in (-1, 1) for s in signs):
        raise ParameterError(f"signs must be +-1, got {signs}")
    if any(b not in (0, 1) for b in bits):
        raise ParameterError(f"bits must be 0/1, got {bits}")
    blocks = [np.array([[float(s)]], dtype=np.complex128) for s in signs]
    blocks.extend(((-1.0) ** b) * SIGMA_Z for b in bits)
    return block_diag(*blocks)


def _gauge_unitary(theta: tuple[float, ...], r: int) -> np.ndarray:
    """block-diag(1,...,1, U(theta_1), ..., U(theta_p)) acting on the eigenbasis."""
    blocks = [np.eye(r, dtype=np.complex128)] if r else []
    blocks.extend(pair_rotation(t) for t in theta)
    return block_diag(*blocks)


def canonical_metric(sd: SpectralData, cls: CanonicalClass) -> MetricResult:
    """Metric in unitary gauge: M = S^dagger U^dagger m0 U S.

    U collects the per-pair phase rotations (orientation bits enter only
    through the signature matrix m0). The inertia is p plus the number of
    positive signs, and p plus the number of negative signs.
    """
    if (cls.r, cls.p) != (sd.r, sd.p):
        raise ParameterError(
            f"class shape (r={cls.r}, p={cls.p}) does not match spectrum "
            f"(r={sd.r}, p={sd.p})"
        )
    U = _gauge_unitary(cls.theta, sd.r)
    m0 = build_m0(cls.signs, cls.n)
    M = hermitize(sd.S.conj().T @ U.conj().T @ m0 @ U @ sd.S)
    pos = sum(1 for s in cls.signs if s > 0)
    neg = cls.r - pos
    res = intertwining_residual(sd.matrix, M)
    return MetricResult(M=M, inertia=(sd.p + pos, sd.p + neg, 0), residual=res)


def gauge_absorb(sd: SpectralData, params: MetricParameters) -> tuple[SpectralData, CanonicalClass]:
    """Split a family member into pure-gauge magnitudes and canonical data.

    The positive diagonal D0 = block-diag(|mu_i|^(1/2), |tau_s|^(1/2) I_2)
    commutes with the eigenvalue matrix, so replacing S by D0 S leaves the
    decomposed matrix untouched while absorbing all parameter magnitudes.
    What remains is the canonical class: the signs of mu, zero orientation
    bits, and the phases of tau. ``canonical_metric`` on the returned pair
    reproduces ``build_M(sd, params)`` exactly up to round-off.
    """
    if (params.r, params.p) != (sd.r, sd.p):
        raise ParameterError(
            f"parameter counts (r={params.r}, p={params.p}) do not match "
            f"spectrum (r={sd.r}, p={sd.p})"
        )
    d0 = np.concatenate(
        [np.sqrt(np.abs(params.mu)), np.repeat(np.sqrt(np.abs(params.tau)), 2)]
    )
    S_prime = d0[:, np.newaxis] * sd.S
    sd_prime = SpectralData(
        matrix=sd.matrix,
        lam=sd.lam,
        S=S_prime,
        r=sd.r,
        p=sd.p,
        min_gap=sd.min_gap,
        cond_S=float(np.linalg.cond(S_prime)),
        sym_shift=sd.sym_shift,
    )
    theta = tuple(cmath.phase(t) % TWO_PI for t in params.tau)
    cls = CanonicalClass(
        signs=tuple(1 if m > 0 else -1 for m in params.mu),
        n=(0,) * params.p,
        theta=theta,
    )
    return sd_prime, cls


def inertia_of_params(params: MetricParameters, p: int) -> tuple[int, int]:
    """Inertia of any family member from its parameter signs alone.

    Each pair block contributes one positive and one negative eigenvalue
    regardless of tau, so p is a floor for both counts.
    """
    if p != params.p:
        raise ParameterError(f"expected {p} pair parameters, got {params.p}")
    pos = int(np.sum(params.mu > 0))
    return (p + pos, p + (params.r - pos))


def inertia_of_matrix(M, tol: float = 1e-10) -> tuple[int, int, int]:
    """Counts of positive, negative and null eigenvalues of a hermitian matrix.

    Eigenvalues within tol * ||M|| of zero count as null. Congruence
    invariance (Sylvester) makes this agree with
    :func:`inertia_of_params` for any metric built from valid parameters.
    """
    M = require_hermitian(M, tol=tol if tol > 0 else 1e-10, name="M")
    w = np.linalg.eigvalsh(hermitize(M))
    cut = tol * (float(np.max(np.abs(w))) if w.size else 0.0)
    pos = int(np.sum(w > cut))
    neg = int(np.sum(w < -cut))
    return (pos, neg, w.size - pos - neg)


def negate_class(signs: tuple[int, ...], n: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The discrete data of -M: every sign flips, every orientation bit toggles."""
    return tuple(-s for s in signs), tuple(1 - b for b in n)


def is_global_representative(signs: tuple[int, ...], n: tuple[int, ...]) -> bool:
    """True if the first diagonal entry of the induced signature matrix is +1."""
    if signs:
        return signs[0] == 1
    if n:
        return n[0] == 0
    return True


def enumerate_classes(
    r: int, p: int, mod_global: bool = True
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All discrete classes (sign vector, orientation bits), lexicographic.

    With ``mod_global`` every {x, -x} orbit is represented once, by the
    member whose first signature entry is +1, giving 2**(r+p-1) classes;
    without it all 2**(r+p) assignments are returned. Ordering is
    lexicographic with +1 before -1 and 0 before 1.
    """
    if r < 0 or p < 0:
        raise ParameterError("r and p must be nonnegative")
    if r + p > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"2**{r + p} classes exceed the machine-word cap (r + p <= {ENUMERATION_CAP})"
        )
    out = []
    for signs in product((1, -1), repeat=r):
        for bits in product((0, 1), repeat=p):
            if mod_global and not is_global_representative(signs, bits):
                continue
            out.append((signs, bits))
    return out


def sqh_factorization(sd: SpectralData) -> MetricResult:
    """The positive-definite metric S^dagger S of a real-spectrum matrix.

    Exists only when p = 0: with complex pairs present, every compatible
    metric has at least p negative eigenvalues, so the request is refused.
    """
    if sd.p != 0:
        raise NotSqhError(
            f"spectrum has {sd.p} complex pair(s); any compatible metric has "
            f"at least {sd.p} negative eigenvalue(s), so no positive-definite "
            "metric exists"
        )
    M = hermitize(sd.S.conj().T @ sd.S)
    res = intertwining_residual(sd.matrix, M)
    return MetricResult(M=M, inertia=(sd.n, 0, 0), residual=res)
