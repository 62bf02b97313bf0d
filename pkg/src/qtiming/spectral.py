"""Gaussian spectral envelope and its time-domain widths."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import omega_from_wavelength_nm, sigma_phi_from_rad_per_s
from .errors import DomainError

__all__ = ["GaussianSpectrum"]


@dataclass(frozen=True)
class GaussianSpectrum:
    """Unnormalised Gaussian spectral amplitude about a carrier.

    omega0    : centre frequency, rad/fs
    sigma_phi : one-sigma amplitude width, rad/fs

    The amplitude is exp(-detuning^2 / (2 sigma_phi^2)); no normalisation
    constant is carried since every probability density downstream is
    normalised at the final step.
    """

    omega0: float
    sigma_phi: float

    def __post_init__(self):
        if not self.sigma_phi > 0:
            raise DomainError(f"sigma_phi must be positive, got {self.sigma_phi}")
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")

    @classmethod
    def from_si(cls, sigma_phi_rad_per_s: float, wavelength_nm: float = 800.0) -> "GaussianSpectrum":
        """Build from a bandwidth in rad/s and a carrier wavelength in nm."""
        return cls(
            omega0=omega_from_wavelength_nm(wavelength_nm),
            sigma_phi=sigma_phi_from_rad_per_s(sigma_phi_rad_per_s),
        )

    @property
    def envelope_curvature(self) -> float:
        """1 / (2 sigma_phi^2), the Gaussian exponent coefficient, fs^2."""
        return 1.0 / (2.0 * self.sigma_phi**2)

    def amplitude(self, detuning):
        """Spectral amplitude at a detuning (rad/fs) from the carrier."""
        return np.exp(-np.square(detuning) * self.envelope_curvature)

    def intensity_width(self) -> float:
        """One-sigma width (fs) of the time-domain intensity envelope.

        The Fourier transform of the Gaussian amplitude has intensity
        variance 1/(2 sigma_phi^2), so the width is 1/(sqrt(2) sigma_phi):
        time-bandwidth reciprocity for this family is
        width * sigma_phi = 1/sqrt(2) exactly.
        """
        return 1.0 / (math.sqrt(2.0) * self.sigma_phi)

    def shot_noise_width(self, n_photons: float) -> float:
        """Classical timing floor (fs) from averaging n independent packets."""
        if n_photons <= 0:
            raise DomainError(f"photon number must be positive, got {n_photons}")
        return self.intensity_width() / math.sqrt(n_photons)
