"""Reference states of light and their photon-number statistics.

Constructors return plain numpy vectors (pure states) or DensityMatrix
objects (mixed states).  Factorial-heavy coefficients are evaluated in log
space with the sign and phase carried separately, so squeezed-vacuum
amplitudes stay finite at any truncation used here ((2n)! overflows a
double near n = 86).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PrecisionError, UndefinedStatisticError
from .fock import DensityMatrix


@dataclass(frozen=True)
class SqueezeParam:
    """Squeezing parameter zeta = magnitude * exp(i * phase)."""

    magnitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.magnitude) or self.magnitude < 0:
            raise ValueError(f"squeeze magnitude must be finite and >= 0, got {self.magnitude}")
        # wrap phase to (-pi, pi]
        wrapped = math.remainder(self.phase, 2 * math.pi)
        if wrapped <= -math.pi:
            wrapped += 2 * math.pi
        object.__setattr__(self, "phase", wrapped)

    @staticmethod
    def from_mean_photons(nbar: float, phase: float = 0.0) -> "SqueezeParam":
        """Magnitude chosen so the squeezed vacuum has <n> = sinh^2|zeta| = nbar."""
        if nbar < 0:
            raise ValueError(f"mean photon number must be >= 0, got {nbar}")
        return SqueezeParam(math.asinh(math.sqrt(nbar)), phase)


@dataclass(frozen=True)
class PhotonNumberDistribution:
    """p(n) over the truncated basis, with the truncation tail made explicit."""

    probs: np.ndarray
    tail: float

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if np.any(probs < -1e-14) or np.any(probs > 1 + 1e-12):
            raise ValueError("probabilities out of [0, 1]")

    @property
    def dim(self) -> int:
        return len(self.probs)

    def mean(self) -> float:
        return float(np.dot(self.probs, np.arange(self.dim)))


def coherent_state(alpha: complex, dim: int, tail_tol: float = 1e-12) -> np.ndarray:
    """Coherent state |alpha> = e^{-|a|^2/2} sum alpha^n / sqrt(n!) |n>.

    Raises PrecisionError if the Poissonian truncation tail at dim exceeds
    tail_tol.
    """
    if dim < 2:
        raise DimensionError(f"Fock dimension must be >= 2, got {dim}")
    alpha = complex(alpha)
    vec = np.zeros(dim, dtype=complex)
    if alpha == 0:
        vec[0] = 1.0
        return vec
    n = np.arange(dim)
    mag2 = abs(alpha) ** 2
    log_mag = -mag2 / 2 + n * math.log(abs(alpha)) - 0.5 * np.array(
        [math.lgamma(k + 1) for k in n])
    vec = np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))
    tail = 1.0 - float(np.vdot(vec, vec).real)
    if tail > tail_tol:
        raise PrecisionError(
            f"coherent-state tail {tail:.3e} exceeds {tail_tol:g} at dim {dim}")
    return vec


def thermal_density(nbar: float, dim: int, tail_tol: float = 1e-12) -> DensityMatrix:
    """Thermal (Bose-Einstein) state: diagonal p(n) = nbar^n / (1+nbar)^(n+1)."""
    if dim < 2:
        raise DimensionError(f"Fock dimension must be >= 2, got {dim}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    if nbar == 0:
        probs = np.zeros(dim)
        probs[0] = 1.0
    else:
        ratio = nbar / (1.0 + nbar)
        n = np.arange(dim)
        probs = np.exp(n * math.log(ratio) - math.log1p(nbar))
    tail = 1.0 - float(probs.sum())
    if tail > tail_tol:
        raise PrecisionError(
            f"thermal tail {tail:.3e} exceeds {tail_tol:g} at dim {dim} (nbar={nbar})")
    # renormalization is deliberately NOT applied; the tail stays auditable
    return DensityMatrix(np.diag(probs).astype(complex), herm_tol=max(tail_tol, 1e-10))


def squeezed_vacuum(zeta, dim: int, tail_tol: float = 1e-10) -> np.ndarray:
    """Squeezed vacuum sum_n c_n |2n> on a dim-level basis.

    c_n = sqrt(sech|zeta| (2n)!) / n! * (-(e^{i phase}/2) tanh|zeta|)^n,
    evaluated in log space.  Only even Fock levels are populated; odd
    levels are exactly zero.  The truncation tail is checked through the
    normalization deficit.
    """
    if not isinstance(zeta, SqueezeParam):
        zeta = SqueezeParam(float(zeta))
    if dim < 2:
        raise DimensionError(f"Fock dimension must be >= 2, got {dim}")
    vec = np.zeros(dim, dtype=complex)
    r = zeta.magnitude
    if r == 0:
        vec[0] = 1.0
        return vec
    n_pairs = (dim - 1) // 2  # highest n with 2n <= dim-1
    log_sech = -math.log(math.cosh(r))
    log_tanh_half = math.log(math.tanh(r) / 2.0)
    for n in range(n_pairs + 1):
        log_mag = (0.5 * (log_sech + math.lgamma(2 * n + 1))
                   - math.lgamma(n + 1) + n * log_tanh_half)
        phase = n * (zeta.phase + math.pi)  # (-1)^n e^{i n phase}
        vec[2 * n] = math.exp(log_mag) * complex(math.cos(phase), math.sin(phase))
    deficit = 1.0 - float(np.vdot(vec, vec).real)
    if deficit > tail_tol:
        raise PrecisionError(
            f"squeezed-vacuum tail {deficit:.3e} exceeds {tail_tol:g} at dim {dim}")
    return vec


def photon_number_distribution(state) -> PhotonNumberDistribution:
    """p(n) from a pure state vector (|c_n|^2) or a DensityMatrix (diagonal)."""
    if isinstance(state, DensityMatrix):
        probs = state.diagonal()
    else:
        vec = np.asarray(state, dtype=complex)
        if vec.ndim != 1:
            raise DimensionError("expected a state vector or DensityMatrix")
        probs = np.abs(vec) ** 2
    tail = 1.0 - float(probs.sum())
    return PhotonNumberDistribution(probs, tail)


def coherence_order(state, k: int) -> float:
    """Normally ordered coherence g^(k) = <a^dag^k a^k> / <a^dag a>^k.

    Computed from the photon-number distribution as
    sum p(n) n!/(n-k)! / (sum p(n) n)^k.  Raises UndefinedStatisticError
    when the mean photon number vanishes.
    """
    if k < 1:
        raise ValueError(f"coherence order k must be >= 1, got {k}")
    if isinstance(state, PhotonNumberDistribution):
        probs = state.probs
    else:
        probs = photon_number_distribution(state).probs
    n = np.arange(len(probs), dtype=float)
    mean = float(np.dot(probs, n))
    if mean <= 0:
        raise UndefinedStatisticError("coherence order undefined at zero mean photon number")
    falling = np.ones_like(n)
    for j in range(k):
        falling *= np.clip(n - j, 0, None)
    moment = float(np.dot(probs, falling))
    return moment / mean ** k
