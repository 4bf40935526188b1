"""Truncated Fock-space linear algebra for two bosonic modes.

Everything here works on plain numpy arrays.  States on the joint space
(mode A tensor mode B) are stored with mode A as the slow index, i.e. the
basis vector |nA, nB> sits at flat index nA * dimB + nB.  That ordering is
fixed once and relied upon by the partial trace and by every consumer of
TwoModeState.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NumericalError, PrecisionError

DEFAULT_HERM_TOL = 1e-10
DEFAULT_PSD_TOL = 1e-10


def annihilation_matrix(dim: int) -> np.ndarray:
    """Ladder operator a on a dim-level Fock space: a[n-1, n] = sqrt(n)."""
    if dim < 2:
        raise DimensionError(f"Fock dimension must be >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    n = np.arange(1, dim)
    a[n - 1, n] = np.sqrt(n)
    return a


def creation_matrix(dim: int) -> np.ndarray:
    """Ladder operator a^dag, the conjugate transpose of annihilation_matrix."""
    return annihilation_matrix(dim).conj().T


def number_matrix(dim: int) -> np.ndarray:
    """Number operator a^dag a = diag(0, 1, ..., dim-1)."""
    if dim < 2:
        raise DimensionError(f"Fock dimension must be >= 2, got {dim}")
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def basis_vector(n: int, dim: int) -> np.ndarray:
    """Fock basis vector |n> as a length-dim complex array."""
    if not 0 <= n < dim:
        raise DimensionError(f"level {n} outside truncated basis of size {dim}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor as the slow index.

    Consistent with the TwoModeState flat ordering: (A x B) acting on a
    vector indexed nA * dimB + nB applies A to mode A and B to mode B.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(b.real))):
        raise ValueError("tensor_product requires finite entries")
    return np.kron(a, b)


# Pade-13 numerator coefficients for the scaling-and-squaring core.
_PADE13_B = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
# Largest 1-norm at which the order-13 Pade approximant has backward error
# below double-precision roundoff (Higham 2005).
_THETA13 = 5.371920351148152


def matrix_exponential(m: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """exp(m) by scaling-and-squaring with an order-13 Pade core.

    The scaling exponent is chosen from the 1-norm so the core's backward
    error stays below roundoff, which satisfies any tol down to a few ulps.
    For anti-Hermitian m the result is unitary to ~10 * tol.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix_exponential needs a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix_exponential requires finite entries")
    if tol < 4 * np.finfo(float).eps:
        raise NumericalError(
            f"requested tolerance {tol:g} is below double-precision reach")

    norm = np.linalg.norm(m, 1)
    s = 0
    if norm > _THETA13:
        s = int(np.ceil(np.log2(norm / _THETA13)))
    a = m * 2.0 ** (-s)

    ident = np.eye(m.shape[0], dtype=complex)
    b = _PADE13_B
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    try:
        x = np.linalg.solve(v - u, v + u)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Pade denominator is singular: {exc}") from exc

    for _ in range(s):
        x = x @ x
    return x


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix on a truncated Fock basis.

    Checks Hermiticity, unit trace, and positive semidefiniteness at
    construction time; the tolerances travel with the object.
    """

    mat: np.ndarray
    herm_tol: float = DEFAULT_HERM_TOL
    psd_tol: float = DEFAULT_PSD_TOL

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"density matrix must be square, got {mat.shape}")
        herm_dev = np.max(np.abs(mat - mat.conj().T))
        if herm_dev > self.herm_tol:
            raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e}")
        tr_dev = abs(np.trace(mat) - 1.0)
        if tr_dev > self.herm_tol:
            raise ValueError(f"trace deviates from 1 by {tr_dev:.3e}")
        min_eig = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2).min())
        if min_eig < -self.psd_tol:
            raise ValueError(f"not positive semidefinite: min eigenvalue {min_eig:.3e}")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def diagonal(self) -> np.ndarray:
        return self.mat.diagonal().real.copy()


@dataclass(frozen=True)
class TwoModeState:
    """Pure state on mode A (slow index) tensor mode B (fast index)."""

    amplitudes: np.ndarray
    dim_a: int
    dim_b: int
    norm_tol: float = field(default=1e-12)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if self.dim_a < 2 or self.dim_b < 2:
            raise DimensionError("both mode dimensions must be >= 2")
        if amp.shape != (self.dim_a * self.dim_b,):
            raise DimensionError(
                f"amplitude vector of length {amp.shape} does not match "
                f"dims ({self.dim_a}, {self.dim_b})")
        deficit = abs(np.vdot(amp, amp).real - 1.0)
        if deficit > self.norm_tol:
            raise ValueError(f"state not normalized: deficit {deficit:.3e}")

    def as_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to (dim_a, dim_b)."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)


def product_state(vec_a: np.ndarray, vec_b: np.ndarray) -> TwoModeState:
    """|psi_A> tensor |psi_B> as a TwoModeState."""
    vec_a = np.asarray(vec_a, dtype=complex)
    vec_b = np.asarray(vec_b, dtype=complex)
    return TwoModeState(np.kron(vec_a, vec_b), len(vec_a), len(vec_b))


def partial_trace_over_a(state) -> DensityMatrix:
    """Reduced density matrix of mode B, Tr_A |psi><psi| or Tr_A rho.

    Accepts a TwoModeState, or a raw (dim_a * dim_b,) vector together with
    explicit dims via TwoModeState, or a joint density matrix reshaped as
    (dim_a * dim_b, dim_a * dim_b) wrapped in a (matrix, dim_a, dim_b) tuple.
    """
    if isinstance(state, TwoModeState):
        psi = state.as_matrix()
        rho_b = psi.T @ psi.conj()
    elif isinstance(state, tuple) and len(state) == 3:
        joint, dim_a, dim_b = state
        joint = np.asarray(joint, dtype=complex)
        if joint.shape != (dim_a * dim_b, dim_a * dim_b):
            raise DimensionError(
                f"joint matrix {joint.shape} does not match dims ({dim_a}, {dim_b})")
        rho_b = np.einsum("aibj->ij", joint.reshape(dim_a, dim_b, dim_a, dim_b))
    else:
        raise TypeError("expected TwoModeState or (matrix, dim_a, dim_b) tuple")
    rho_b = (rho_b + rho_b.conj().T) / 2
    return DensityMatrix(rho_b)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2), in (0, 1] up to roundoff.

    For Hermitian rho this is the squared Frobenius norm, so no matrix
    product is needed.
    """
    return float(np.sum(np.abs(rho.mat) ** 2))


def expectation(rho: DensityMatrix, op: np.ndarray) -> float:
    """Tr(rho X) for Hermitian X (real part returned)."""
    return float(np.trace(rho.mat @ op).real)


def fidelity_to_coherent(rho: DensityMatrix, alpha: complex) -> float:
    """Fidelity of rho to the coherent state |alpha>.

    Because the reference is pure, F = sqrt(<alpha|rho|alpha>) exactly; no
    matrix square roots are required.  The coherent vector is built on the
    same truncated basis as rho, and its truncation tail must be below
    1e-12 or the comparison is rejected.
    """
    from .states import coherent_state  # local import to avoid a cycle

    vec = coherent_state(alpha, rho.dim, tail_tol=1e-12)
    overlap = np.vdot(vec, rho.mat @ vec).real
    if overlap < -rho.psd_tol:
        raise PrecisionError(f"negative overlap {overlap:.3e} exceeds psd tolerance")
    return float(np.sqrt(max(overlap, 0.0)))
