"""Simulation and analysis toolkit for sequential SPDC -> upconversion light.

Subpackages:
  fock          truncated Fock-space linear algebra
  states        coherent / thermal / squeezed vacuum states and g^(k)
  cascade       squeezing -> upconversion -> partial trace pipeline
  interference  biphoton spectral-phase interferometer model
  photostream   Monte Carlo detector time-tag streams and the TTAG format
  hbt           coincidence histogramming and g2(tau) normalization
  cli           command-line front end
"""

from .fock import (
    DensityMatrix,
    TwoModeState,
    annihilation_matrix,
    creation_matrix,
    basis_vector,
    fidelity_to_coherent,
    matrix_exponential,
    number_matrix,
    partial_trace_over_a,
    product_state,
    purity,
    tensor_product,
)
from .states import (
    PhotonNumberDistribution,
    SqueezeParam,
    coherence_order,
    coherent_state,
    photon_number_distribution,
    squeezed_vacuum,
    thermal_density,
)
from .cascade import (
    CascadeConfig,
    CascadeReport,
    apply_sfg,
    calibrate_kappa,
    run_cascade,
    sfg_occupation,
)

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "TwoModeState",
    "annihilation_matrix",
    "creation_matrix",
    "basis_vector",
    "fidelity_to_coherent",
    "matrix_exponential",
    "number_matrix",
    "partial_trace_over_a",
    "product_state",
    "purity",
    "tensor_product",
    "PhotonNumberDistribution",
    "SqueezeParam",
    "coherence_order",
    "coherent_state",
    "photon_number_distribution",
    "squeezed_vacuum",
    "thermal_density",
    "CascadeConfig",
    "CascadeReport",
    "apply_sfg",
    "calibrate_kappa",
    "run_cascade",
    "sfg_occupation",
]
