"""Shot-noise-referenced noise powers, LO phase sweeps and Gaussian fidelity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import (
    GateConfig,
    ideal_output,
    make_epr,
    run_gate,
    with_excess,
)
from .gaussian import VACUUM_VARIANCE, GaussianState

SHOT_NOISE = VACUUM_VARIANCE
SIGMA_CLAMP = 1e-12


def noise_power_db(variance: float) -> float:
    """Noise power of a quadrature variance in dB above the shot-noise level."""
    variance = float(variance)
    if not variance > 0:
        raise ValueError("variance must be positive")
    return 10.0 * np.log10(variance / SHOT_NOISE)


def variance_from_db(power_db: float) -> float:
    return SHOT_NOISE * 10.0 ** (power_db / 10.0)


def modulation_variance(power_db: float) -> float:
    """Classical variance to add to a vacuum quadrature so it reads ``power_db``."""
    if power_db < 0:
        raise ValueError("a classical modulation cannot lower the noise below shot noise")
    return variance_from_db(power_db) - SHOT_NOISE


@dataclass(frozen=True)
class NoiseSpectrum:
    """Noise power versus local-oscillator phase."""

    angles: np.ndarray
    power_db: np.ndarray
    reference: float = SHOT_NOISE

    @property
    def variances(self) -> np.ndarray:
        return self.reference * 10.0 ** (self.power_db / 10.0)


def lo_sweep(state: GaussianState, n_points: int) -> NoiseSpectrum:
    """Scan the homodyne phase over [0, pi] and record the noise power.

    The recorded power is the total second moment of
    ``cos(phi) x + sin(phi) p``, so a nonzero mean shows up as extra power
    the way a spectrum analyzer sees a modulation sideband.
    """
    if state.n_modes != 1:
        raise ValueError("lo_sweep expects a single-mode state")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    phi = np.linspace(0.0, np.pi, n_points)
    u = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    second = np.einsum("ki,ij,kj->k", u, state.cov, u) + (u @ state.mean) ** 2
    return NoiseSpectrum(phi, 10.0 * np.log10(second / SHOT_NOISE))


def covariance_for_fidelity(state: GaussianState) -> np.ndarray:
    """Covariance rescaled so the vacuum is the identity."""
    if state.n_modes != 1:
        raise ValueError("fidelity covariances are single-mode")
    return 4.0 * state.cov


@dataclass(frozen=True)
class FidelityResult:
    fidelity: float
    delta: float
    sigma: float
    beta: np.ndarray


def gaussian_fidelity(state1: GaussianState, state2: GaussianState) -> FidelityResult:
    """Uhlmann fidelity of two single-mode Gaussian states.

    Covariances ``A`` are in vacuum-equals-identity units and ``beta`` is
    the mean difference in the matching units (twice the quadrature
    means). In those units the overlap exponent is
    ``-beta^T (A1 + A2)^{-1} beta / 2``, which gives ``exp(-|alpha1 - alpha2|^2)``
    for two coherent states.
    """
    a1 = covariance_for_fidelity(state1)
    a2 = covariance_for_fidelity(state2)
    total = a1 + a2
    delta = float(np.linalg.det(total))
    if not delta > 0 or np.linalg.cond(total) > 1e14:
        raise ValueError("A1 + A2 is singular")
    sigma = float((np.linalg.det(a1) - 1.0) * (np.linalg.det(a2) - 1.0))
    if sigma < 0:
        if abs(sigma) >= SIGMA_CLAMP:
            raise ValueError("state violates the uncertainty relation (det A < 1)")
        sigma = 0.0
    elif sigma < SIGMA_CLAMP:
        sigma = 0.0
    beta = 2.0 * (state2.mean - state1.mean)
    exponent = -0.5 * float(beta @ np.linalg.solve(total, beta))
    fid = 2.0 / (np.sqrt(delta + sigma) - np.sqrt(sigma)) * np.exp(exponent)
    return FidelityResult(float(fid), delta, sigma, beta)


def fidelity_with_excess(
    transform: np.ndarray, input: GaussianState, excess_cov: np.ndarray
) -> FidelityResult:
    """Fidelity of a noisy gate output against its noiseless counterpart."""
    ideal = ideal_output(transform, input)
    return gaussian_fidelity(ideal, with_excess(ideal, excess_cov))


def fidelity_vs_ideal(
    config: GateConfig, input: GaussianState, benchmark: str = "epr"
) -> FidelityResult:
    """Compare a simulated gate output with the ideal (noise-free) output.

    ``benchmark="classical"`` swaps the EPR resource for two vacua, which
    is the coherent-state substitute that sets the classical limit.
    """
    if benchmark == "classical":
        config = GateConfig(config.kind, make_epr(0.0), config.theta1)
    elif benchmark != "epr":
        raise ValueError(f"unknown benchmark {benchmark!r}")
    report = run_gate(config, input)
    ideal = ideal_output(config.ideal_transform(), input)
    return gaussian_fidelity(ideal, report.output)

