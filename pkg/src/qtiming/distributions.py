"""Closed-form Gaussian timing laws for entangled multi-photon states.

All state families considered here (frequency anti-correlated and
correlated Fock states, and frequency-entangled coherent states with equal
detected photon number per arm) lead to a Gaussian law for one collective
arrival-time observable.  Writing ``g`` for the single-packet intensity
width 1/(sqrt(2) sigma_phi) and ``D`` for the signed sum of
group-delay-dispersion products of the two paths (beta1*x1 + beta2*x2,
fs^2), the width of the collective observable for photon number N is

    sigma = sqrt(1 + (2 sigma_phi^2 N D)^2) * g / N.

When the two paths are arranged so that D = 0 the width collapses to g/N —
an N-fold narrowing over a single packet and a sqrt(N) advantage over the
classical shot-noise floor g/sqrt(N).  Uncompensated dispersion caps the
improvement: for large N the width saturates at sqrt(2) sigma_phi |D|,
independent of N, and the crossover sits at N_t = 1/(2 sigma_phi^2 |D|).

Densities are normalised to unit integral; the combinatorial and
bandwidth prefactors of the raw detection probability are dropped (they
overflow beyond N ~ 85 and carry no timing information).  The only
surviving amplitude factor is the coherent-state photon-number weight,
reported separately as ``amplitude_scale``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .media import PathPair
from .spectral import GaussianSpectrum

__all__ = [
    "StateKind",
    "StateSpec",
    "TimingVariable",
    "TimingDistribution",
    "quantum_width",
    "asymptotic_width",
    "transition_photon_number",
    "classical_width",
    "classical_shot_noise",
    "quantum_distribution",
    "gated_detector_distribution",
    "quantum_classical_ratio",
    "density_at",
]

MAX_PHOTON_NUMBER = 1e12
"""Widths are smooth in N and accepted up to here as integer-valued reals.
Modules that instantiate per-photon computation (sampling, quadrature)
impose their own, much smaller caps."""


class StateKind(Enum):
    ANTI_CORRELATED_FOCK = "anti"
    CORRELATED_FOCK = "corr"
    ENTANGLED_COHERENT = "coherent"


class TimingVariable(Enum):
    """Which collective observable the Gaussian law governs."""

    MEAN_TIME_DIFFERENCE = "difference"   # mean arrival time, detector 1 minus 2
    MEAN_TIME_SUM = "sum"                 # sum of the two mean arrival times
    GATED_POSITION_TIME_DIFFERENCE = "gated-difference"  # fixed gate times, positions resolved


@dataclass(frozen=True)
class StateSpec:
    """Which entangled state to analyse.

    n_photons : photons detected per arm (>= 1); for the coherent family
                this is the number of detections, not the mean occupation.
    v_mag, u_mag : coherent amplitude magnitudes of the two arms; required
                for ENTANGLED_COHERENT and disallowed otherwise.
    """

    kind: StateKind
    n_photons: float
    v_mag: float | None = None
    u_mag: float | None = None

    def __post_init__(self):
        if not self.n_photons >= 1:
            raise DomainError(f"n_photons must be >= 1, got {self.n_photons}")
        if self.n_photons > MAX_PHOTON_NUMBER:
            raise DomainError(f"n_photons above supported bound {MAX_PHOTON_NUMBER:g}")
        coherent = self.kind is StateKind.ENTANGLED_COHERENT
        has_mags = self.v_mag is not None and self.u_mag is not None
        if coherent and not has_mags:
            raise DomainError("coherent states need v_mag and u_mag")
        if not coherent and (self.v_mag is not None or self.u_mag is not None):
            raise DomainError(f"{self.kind.name} takes no coherent amplitudes")
        if coherent and (self.v_mag < 0 or self.u_mag < 0):
            raise DomainError("coherent amplitude magnitudes must be >= 0")


@dataclass(frozen=True)
class TimingDistribution:
    """A Gaussian law for one collective timing observable.

    mean, sigma in fs.  ``amplitude_scale`` multiplies the raw detection
    probability but not the normalised density.
    """

    variable: TimingVariable
    mean: float
    sigma: float
    amplitude_scale: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")


def quantum_width(sigma_phi: float, n_photons: float, gdd_sum: float) -> float:
    """Width (fs) of the collective observable for photon number N.

    sigma_phi : spectral width, rad/fs
    gdd_sum   : beta1*x1 + beta2*x2 over the two paths, fs^2

    Satisfies sigma^2 * 2 sigma_phi^2 N^2 = 1 + 4 sigma_phi^4 N^2 gdd_sum^2
    to machine precision, and reduces bit-exactly to intensity_width()/N
    when gdd_sum is zero.
    """
    if not sigma_phi > 0:
        raise DomainError(f"sigma_phi must be positive, got {sigma_phi}")
    if not n_photons > 0:
        raise DomainError("photon number must be positive: width undefined at N = 0")
    packet_width = 1.0 / (math.sqrt(2.0) * sigma_phi)
    dispersion_phase = 2.0 * sigma_phi**2 * n_photons * gdd_sum
    return math.sqrt(1.0 + dispersion_phase * dispersion_phase) * (packet_width / n_photons)


def asymptotic_width(sigma_phi: float, gdd_sum: float) -> float:
    """Large-N limit of :func:`quantum_width`: sqrt(2) sigma_phi |gdd_sum|, fs."""
    if not sigma_phi > 0:
        raise DomainError(f"sigma_phi must be positive, got {sigma_phi}")
    return math.sqrt(2.0) * sigma_phi * abs(gdd_sum)


def transition_photon_number(sigma_phi: float, gdd_sum: float) -> float:
    """Photon number where dispersion broadening equals the bandwidth term.

    N_t = 1/(2 sigma_phi^2 |gdd_sum|); at N_t the width is exactly sqrt(2)
    times the asymptote, and raising N further has diminishing returns.
    Returned as a real; callers may round.
    """
    if not sigma_phi > 0:
        raise DomainError(f"sigma_phi must be positive, got {sigma_phi}")
    if gdd_sum == 0:
        raise DomainError("no transition: dispersion fully cancelled (gdd_sum = 0)")
    return 1.0 / (2.0 * sigma_phi**2 * abs(gdd_sum))


def classical_width(sigma_phi: float, gdd_path1: float, gdd_path2: float) -> float:
    """Width (fs) of the arrival-time difference of two classical pulses.

    gdd_path1, gdd_path2 : beta*x of each path separately, fs^2.  They
    enter as a sum of squares, so no sign arrangement can cancel the
    broadening classically.
    """
    if not sigma_phi > 0:
        raise DomainError(f"sigma_phi must be positive, got {sigma_phi}")
    curvature = 1.0 / (2.0 * sigma_phi**2)  # Gaussian exponent coefficient, fs^2
    variance = (2.0 * curvature**2 + (gdd_path1**2 + gdd_path2**2)) / curvature
    return math.sqrt(variance)


def classical_shot_noise(sigma_t: float, n_photons: float) -> float:
    """Classical timing uncertainty after averaging N pulse pairs: sigma_t/sqrt(N)."""
    if not n_photons > 0:
        raise DomainError("photon number must be positive")
    return sigma_t / math.sqrt(n_photons)


def _aggregate(paths: PathPair) -> tuple[float, float, float, float]:
    return paths.coefficients()


def _coherent_amplitude_scale(state: StateSpec) -> float:
    # |v|^(2N) |u|^(2N), written in this canonical form so tests can match it exactly.
    return state.v_mag ** (2.0 * state.n_photons) * state.u_mag ** (2.0 * state.n_photons)


def quantum_distribution(
    state: StateSpec, spectrum: GaussianSpectrum, paths: PathPair
) -> TimingDistribution:
    """Gaussian law of the collective observable for a state and media pair.

    Anti-correlated and coherent states localise the *difference* of the
    two mean detection times, with mean delay1 - delay2; correlated states
    localise the *sum*, with mean delay1 + delay2.  The width is the same
    for all three families.  Means follow the path1-minus-path2 convention
    for difference variables.
    """
    delay1, gdd1, delay2, gdd2 = _aggregate(paths)
    sigma = quantum_width(spectrum.sigma_phi, state.n_photons, gdd1 + gdd2)

    if state.kind is StateKind.CORRELATED_FOCK:
        variable = TimingVariable.MEAN_TIME_SUM
        mean = delay1 + delay2
        scale = 1.0
    elif state.kind is StateKind.ANTI_CORRELATED_FOCK:
        variable = TimingVariable.MEAN_TIME_DIFFERENCE
        mean = delay1 - delay2
        scale = 1.0
    else:
        variable = TimingVariable.MEAN_TIME_DIFFERENCE
        mean = delay1 - delay2
        scale = _coherent_amplitude_scale(state)
    return TimingDistribution(variable=variable, mean=mean, sigma=sigma, amplitude_scale=scale)


def gated_detector_distribution(
    state: StateSpec,
    spectrum: GaussianSpectrum,
    paths: PathPair,
    mean_position1_cm: float,
    mean_position2_cm: float,
) -> TimingDistribution:
    """Gaussian law for thick, position-resolving detectors gated in time.

    With both detectors gated on at fixed times for an interval much
    shorter than 1/(N omega0) (a documented assumption, not checked
    numerically), the detected mean *positions* take over the role of the
    path lengths: each path must consist of a single homogeneous medium,
    whose per-cm coefficients are evaluated at the mean detection positions
    ``mean_position1_cm`` / ``mean_position2_cm`` instead of the segment
    lengths.  The width formula is unchanged.
    """
    if len(paths.path1) != 1 or len(paths.path2) != 1:
        raise DomainError(
            "gated-detector analysis needs one homogeneous medium per path "
            f"(got {len(paths.path1)} and {len(paths.path2)} segments)"
        )
    if mean_position1_cm < 0 or mean_position2_cm < 0:
        raise DomainError("mean detection positions must be >= 0")
    medium1 = paths.path1[0]
    medium2 = paths.path2[0]
    gdd_sum = medium1.beta * mean_position1_cm + medium2.beta * mean_position2_cm
    sigma = quantum_width(spectrum.sigma_phi, state.n_photons, gdd_sum)
    mean = medium1.alpha * mean_position1_cm - medium2.alpha * mean_position2_cm
    scale = 1.0
    if state.kind is StateKind.ENTANGLED_COHERENT:
        scale = _coherent_amplitude_scale(state)
    return TimingDistribution(
        variable=TimingVariable.GATED_POSITION_TIME_DIFFERENCE,
        mean=mean,
        sigma=sigma,
        amplitude_scale=scale,
    )


def quantum_classical_ratio(
    state: StateSpec, spectrum: GaussianSpectrum, paths: PathPair
) -> float:
    """Quantum width over classical shot-noise width, same N and media.

    Below 1 the entangled state beats classical averaging; above 1
    uncompensated dispersion has made it worse.
    """
    _, gdd1, _, gdd2 = _aggregate(paths)
    sigma_q = quantum_width(spectrum.sigma_phi, state.n_photons, gdd1 + gdd2)
    sigma_c = classical_shot_noise(
        classical_width(spectrum.sigma_phi, gdd1, gdd2), state.n_photons
    )
    return sigma_q / sigma_c


def density_at(dist: TimingDistribution, tau):
    """Normalised Gaussian probability density (1/fs) at ``tau`` (fs).

    Integrates to one regardless of ``amplitude_scale``.  Accepts scalars
    or arrays.
    """
    z = (np.asarray(tau, dtype=float) - dist.mean) / dist.sigma
    out = np.exp(-0.5 * z * z) / (dist.sigma * math.sqrt(2.0 * math.pi))
    return out if out.ndim else float(out)
