"""Arrival-time statistics of frequency-entangled photon states in
dispersive media: closed-form Gaussian timing laws, empirical air
dispersion, an independent quadrature oracle, and stochastic checks."""

__version__ = "0.1.0"

from .constants import (
    omega_from_wavelength_nm,
    sigma_phi_from_rad_per_s,
    wavelength_nm_from_omega,
)
from .distributions import (
    StateKind,
    StateSpec,
    TimingDistribution,
    TimingVariable,
    asymptotic_width,
    classical_shot_noise,
    classical_width,
    density_at,
    gated_detector_distribution,
    quantum_classical_ratio,
    quantum_distribution,
    quantum_width,
    transition_photon_number,
)
from .errors import CancellationError, ConvergenceError, DomainError
from .media import (
    AirConditions,
    MediumSegment,
    PathPair,
    REFERENCE_AIR,
    air_dispersion_coefficient,
    beta_from_index,
    catalog_segment,
    edlen_refractivity,
    equivalent_air_length,
    material_catalog,
    owens_refractivity,
    path_coefficients,
    reference_air_beta,
)
from .montecarlo import SamplerConfig, WidthEstimate, sample_classical, sample_quantum
from .oracle import (
    QuadratureSpec,
    VerificationReport,
    amplitude_numeric,
    numeric_central_moment,
    numeric_moments,
    verify_closed_form,
)
from .spectral import GaussianSpectrum

__all__ = [
    "__version__",
    "AirConditions",
    "CancellationError",
    "ConvergenceError",
    "DomainError",
    "GaussianSpectrum",
    "MediumSegment",
    "PathPair",
    "QuadratureSpec",
    "REFERENCE_AIR",
    "SamplerConfig",
    "StateKind",
    "StateSpec",
    "TimingDistribution",
    "TimingVariable",
    "VerificationReport",
    "WidthEstimate",
    "air_dispersion_coefficient",
    "amplitude_numeric",
    "asymptotic_width",
    "beta_from_index",
    "catalog_segment",
    "classical_shot_noise",
    "classical_width",
    "density_at",
    "edlen_refractivity",
    "equivalent_air_length",
    "gated_detector_distribution",
    "material_catalog",
    "numeric_central_moment",
    "numeric_moments",
    "omega_from_wavelength_nm",
    "owens_refractivity",
    "path_coefficients",
    "quantum_classical_ratio",
    "quantum_distribution",
    "quantum_width",
    "reference_air_beta",
    "sample_classical",
    "sample_quantum",
    "sigma_phi_from_rad_per_s",
    "transition_photon_number",
    "verify_closed_form",
    "wavelength_nm_from_omega",
]
