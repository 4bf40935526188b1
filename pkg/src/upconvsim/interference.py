"""Spectral model of the biphoton interferometer with doubled phase sensitivity.

The two photons of a pair at detunings +Omega and -Omega around the
degenerate frequency omega0 each acquire the spectral phase phi(omega).
The summed exponent phi(omega0+Omega) + phi(omega0-Omega) cancels every
odd order of the expansion identically, doubles the constant term, and
keeps the quadratic term once per photon.  The upconverted amplitude is
the weighted integral of that phase over the effective joint spectrum.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConfigError, InvalidRateError, ResolutionError

SPEED_OF_LIGHT = 299792458.0  # m/s
OMEGA0_1064NM = 2 * math.pi * SPEED_OF_LIGHT / 1064e-9  # degenerate center, rad/s

# Fringe frequency parameter of the doubled-sensitivity interferometer: the
# fitted model oscillates as cos(phi / nu), so nu = 0.5 means the fringe
# repeats after half of a 2*pi phase period (period pi), while nu = 1.0
# would be an ordinary single-photon fringe.
DOUBLED_FRINGE_FREQUENCY = 0.5


@dataclass(frozen=True)
class SpectralPhase:
    """Polynomial phase law around omega0 plus a geometric path term.

    phi(omega0 +/- Omega) = phi0 +/- alpha*Omega + (beta/2)*Omega^2
                            +/- (gamma/6)*Omega^3 + (omega0 +/- Omega)*z/c
    """

    phi0: float = 0.0    # rad
    alpha: float = 0.0   # s
    beta: float = 0.0    # s^2
    gamma: float = 0.0   # s^3
    z: float = 0.0       # m

    def __post_init__(self):
        for name in ("phi0", "alpha", "beta", "gamma", "z"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"SpectralPhase.{name} must be finite")

    def single(self, detuning: float, omega0: float = 0.0) -> float:
        """phi evaluated at omega0 + detuning (one photon)."""
        w = detuning
        return (self.phi0 + self.alpha * w + self.beta / 2 * w ** 2
                + self.gamma / 6 * w ** 3 + (omega0 + w) * self.z / SPEED_OF_LIGHT)


def phase_sum(phase: SpectralPhase, detuning, omega0: float = 0.0):
    """phi(omega0+Omega) + phi(omega0-Omega) with odd orders cancelled.

    The cancellation of alpha, gamma, and the detuning-linear part of the
    path term is performed analytically, so the result is exactly
    2*(phi0 + omega0*z/c) + beta*Omega^2 for any input.
    """
    detuning = np.asarray(detuning, dtype=float)
    const = 2.0 * (phase.phi0 + omega0 * phase.z / SPEED_OF_LIGHT)
    out = const + phase.beta * detuning ** 2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EffectiveJSA:
    """Effective joint spectral amplitude Gamma(omega0, Omega) on a grid.

    detunings must be symmetric about zero; weights are quadrature weights
    for integrals over the grid (trapezoid weights are derived when not
    given).  The default constructor gaussian_jsa uses composite
    Gauss-Legendre nodes, which are spectrally accurate for the smooth
    integrands used here.
    """

    omega0: float
    sigma: float
    detunings: np.ndarray
    amplitudes: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        det = np.asarray(self.detunings, dtype=float)
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "detunings", det)
        object.__setattr__(self, "amplitudes", amp)
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if det.ndim != 1 or det.shape != amp.shape:
            raise ValueError("detunings and amplitudes must be matching 1-d arrays")
        if not np.all(np.isfinite(amp.real)) or not np.all(np.isfinite(amp.imag)):
            raise ValueError("amplitudes must be finite")
        span = max(abs(det[0]), abs(det[-1]))
        if abs(det[0] + det[-1]) > 1e-9 * span:
            raise ValueError("detuning grid must be symmetric about zero")
        if self.weights is None:
            w = np.gradient(det)
            object.__setattr__(self, "weights", w)
        else:
            object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))

    @property
    def nodes(self) -> int:
        return len(self.detunings)


def gaussian_jsa(omega0: float = OMEGA0_1064NM, sigma: float = None,
                 coherence_time: float = 50e-15, span_sigmas: float = 6.0,
                 nodes: int = 2048) -> EffectiveJSA:
    """Gaussian effective JSA, Gamma(Omega) = exp(-(Omega/sigma)^2).

    sigma defaults to 1/coherence_time (50 fs biphoton coherence time).
    The grid is composite Gauss-Legendre over [-span_sigmas*sigma,
    +span_sigmas*sigma] with 16-node panels.
    """
    if sigma is None:
        if coherence_time <= 0:
            raise ValueError("coherence_time must be positive")
        sigma = 1.0 / coherence_time
    per_panel = 16
    panels = max(1, nodes // per_panel)
    x16, w16 = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(-span_sigmas * sigma, span_sigmas * sigma, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    det = (mid[:, None] + half[:, None] * x16[None, :]).ravel()
    wts = (half[:, None] * w16[None, :]).ravel()
    amp = np.exp(-((det / sigma) ** 2))
    return EffectiveJSA(omega0, sigma, det, amp, wts)


def g_amplitude(jsa: EffectiveJSA, phase: SpectralPhase) -> complex:
    """Upconverted amplitude g = int Gamma e^{i [phi(w0+W)+phi(w0-W)]} dW.

    Normalized to the integral of Gamma, so g = 1 at zero phase.  Only the
    quadratic term oscillates across the grid (odd orders cancel in the
    summed exponent), and the grid must sample the fastest local
    oscillation with at least 8 points per period.
    """
    det = jsa.detunings
    omega_max = max(abs(det[0]), abs(det[-1]))
    # fastest local phase slope: d/dW (beta W^2) = 2 beta W at the grid edge
    max_slope = 2.0 * abs(phase.beta) * omega_max
    if max_slope > 0:
        spacing = 2.0 * omega_max / len(det)
        min_period = 2.0 * math.pi / max_slope
        if spacing > min_period / 8:
            raise ResolutionError(
                f"grid of {len(det)} nodes under-resolves the quadratic phase; "
                f"need >= {int(16 * omega_max ** 2 * abs(phase.beta) / math.pi) + 1} nodes")
    total = phase_sum(phase, det, jsa.omega0)
    numer = np.sum(jsa.weights * jsa.amplitudes * np.exp(1j * total))
    denom = np.sum(jsa.weights * jsa.amplitudes)
    return complex(numer / denom)


def fringe_probability(g: complex) -> float:
    """Detection probability |1 + g|^2 / 4, normalized to 1 at g = 1."""
    if not (math.isfinite(g.real) and math.isfinite(g.imag)):
        raise ValueError("g must be finite")
    return abs(1 + g) ** 2 / 4


def visibility_from_rates(raw_a: float, raw_b: float, dark: float) -> float:
    """Maximal fringe visibility from raw arm rates and the dark rate.

    V_max = 2 sqrt(Ia Ib) / (Ia + Ib) with Ix = raw_x - dark.
    """
    if dark < 0 or raw_a < dark or raw_b < dark:
        raise InvalidRateError(
            f"need raw rates >= dark >= 0, got ({raw_a}, {raw_b}) with dark {dark}")
    i_a = raw_a - dark
    i_b = raw_b - dark
    if i_a + i_b == 0:
        raise InvalidRateError("both arms are at the dark level")
    return 2 * math.sqrt(i_a * i_b) / (i_a + i_b)


@dataclass(frozen=True)
class FringeScan:
    """One phase scan: counts per setting, the fixed-frequency fit, and V."""

    phase_values: np.ndarray   # rad, SLM settings
    rates: np.ndarray          # Hz, measured (counts / dwell)
    errors: np.ndarray         # Hz, Poissonian
    fit_frequency: float       # fringe frequency parameter (0.5 = doubled)
    visibility: float
    counts: np.ndarray
    fit_counts: np.ndarray     # fixed-frequency model evaluated at the settings
    fit_coeffs: tuple          # (A, B, C) of A cos(phi/nu) + B sin(phi/nu) + C
    dwell: float
    dark_rate: float


def fit_fixed_frequency(phi, counts, frequency: float = DOUBLED_FRINGE_FREQUENCY):
    """Least-squares (A, B, C) of A cos(phi/nu) + B sin(phi/nu) + C."""
    phi = np.asarray(phi, dtype=float)
    counts = np.asarray(counts, dtype=float)
    design = np.column_stack([
        np.cos(phi / frequency),
        np.sin(phi / frequency),
        np.ones_like(phi),
    ])
    coeffs, *_ = np.linalg.lstsq(design, counts, rcond=None)
    model = design @ coeffs
    return tuple(float(c) for c in coeffs), model


def estimate_fringe_frequency(phi, counts, lo: float = 0.2, hi: float = 1.5):
    """Frequency that minimizes the fixed-frequency fit residual.

    Coarse grid sweep followed by a bounded scalar refinement; this is the
    residual check that validates the fixed 0.5 hypothesis.
    """
    phi = np.asarray(phi, dtype=float)
    counts = np.asarray(counts, dtype=float)

    def ssr(nu):
        _, model = fit_fixed_frequency(phi, counts, nu)
        return float(np.sum((counts - model) ** 2))

    grid = np.linspace(lo, hi, 261)
    best = grid[int(np.argmin([ssr(nu) for nu in grid]))]
    step = grid[1] - grid[0]
    res = minimize_scalar(ssr, bounds=(max(lo, best - step), min(hi, best + step)),
                          method="bounded", options={"xatol": 1e-9})
    return float(res.x)


def simulate_fringe_scan(jsa: EffectiveJSA, phase_template: SpectralPhase,
                         phi_values, mean_rates, dwell: float, seed,
                         noiseless: bool = False) -> FringeScan:
    """Synthetic fringe scan of the doubled-sensitivity interferometer.

    mean_rates = (raw_a, raw_b, dark) in Hz; raw rates include the dark
    rate, matching how they are measured with one arm blocked.  At each
    SLM setting phi the expected rate is

        Ia + Ib + 2 sqrt(Ia Ib) Re[e^{2 i phi} g_res] + dark

    where g_res is the residual amplitude of the template (the constant
    SLM phase factors out of the integral exactly as e^{2 i phi}).  Counts
    are Poisson with per-point generators derived from (seed, index), so
    the result is independent of evaluation order.  Dark counts enter the
    sampled rate; they are subtracted only in the visibility estimate.
    """
    if dwell <= 0:
        raise ConfigError(f"dwell must be positive, got {dwell}")
    raw_a, raw_b, dark = mean_rates
    if dark < 0 or raw_a < dark or raw_b < dark:
        raise InvalidRateError(
            f"need raw rates >= dark >= 0, got ({raw_a}, {raw_b}) with dark {dark}")
    phi = np.asarray(phi_values, dtype=float)
    i_a = raw_a - dark
    i_b = raw_b - dark
    g_res = g_amplitude(jsa, replace(phase_template, phi0=0.0))
    interference = 2 * math.sqrt(i_a * i_b) * np.real(
        np.exp(2j * (phi + phase_template.phi0)) * g_res)
    mu = dwell * (i_a + i_b + interference + dark)
    mu = np.clip(mu, 0.0, None)

    if noiseless:
        counts = mu
    else:
        counts = np.array([
            np.random.default_rng([int(seed), i]).poisson(m)
            for i, m in enumerate(mu)
        ], dtype=float)

    coeffs, model = fit_fixed_frequency(phi, counts)
    amp = math.hypot(coeffs[0], coeffs[1])
    mean_signal = coeffs[2] - dark * dwell
    visibility = min(amp / mean_signal, 1.0) if mean_signal > 0 else 0.0
    nu_hat = estimate_fringe_frequency(phi, counts)

    return FringeScan(
        phase_values=phi,
        rates=counts / dwell,
        errors=np.sqrt(np.clip(counts, 0, None)) / dwell,
        fit_frequency=nu_hat,
        visibility=visibility,
        counts=counts,
        fit_counts=model,
        fit_coeffs=coeffs,
        dwell=dwell,
        dark_rate=dark,
    )
