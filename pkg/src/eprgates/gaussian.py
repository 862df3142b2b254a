"""Multimode Gaussian states and linear quadrature maps.

Quadratures are ``x = (a + a^dag)/2`` and ``p = (a - a^dag)/2i``, so the
vacuum variance is 1/4 on each quadrature. Vectors are interleaved as
``(x1, p1, x2, p2, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

VACUUM_VARIANCE = 0.25

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
UNCERTAINTY_TOL = 1e-10


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]]."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, sorted ascending.

    Computed as the eigenvalues of the Hermitian matrix
    ``sqrt(cov) @ (i Omega) @ sqrt(cov)``, which is similar to ``i Omega cov``.
    Each value appears once (the +/- pairs are folded).
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    w, v = np.linalg.eigh(cov)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    herm = root @ (1j * symplectic_form(n)) @ root
    ev = np.linalg.eigvalsh(herm)
    return np.sort(ev[ev.size // 2:])


def uncertainty_tolerance(cov: np.ndarray) -> float:
    """Slack allowed below 1/4 for the smallest symplectic eigenvalue.

    Rounding perturbs the smallest covariance eigenvalue by roughly
    ``eps * ||cov||``; for strongly squeezed states that is a large relative
    error, and the symplectic eigenvalue inherits half of it.
    """
    w = np.linalg.eigvalsh(cov)
    if w[0] <= 0:
        return UNCERTAINTY_TOL
    rel = np.finfo(float).eps * w[-1] / w[0]
    return UNCERTAINTY_TOL + 4.0 * VACUUM_VARIANCE * rel


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance matrix of an N-mode Gaussian state.

    The arrays are copied and made read-only on construction; the
    covariance must be symmetric and satisfy the uncertainty relation.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = _frozen(self.mean).reshape(-1)
        cov = _frozen(self.cov)
        if mean.size == 0 or mean.size % 2:
            raise ValueError("mean must have even, nonzero length 2*n_modes")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"cov shape {cov.shape} does not match mean length {mean.size}"
            )
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise ValueError("state contains non-finite entries")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL * scale:
            raise ValueError("covariance matrix is not symmetric")
        if symplectic_eigenvalues(cov)[0] < VACUUM_VARIANCE - uncertainty_tolerance(cov):
            raise ValueError("covariance violates the uncertainty relation")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def reduced(self, mode: int) -> "GaussianState":
        """Single-mode marginal of ``mode``."""
        _check_mode(mode, self.n_modes)
        sl = slice(2 * mode, 2 * mode + 2)
        return GaussianState(self.mean[sl], self.cov[sl, sl])

    def tensor(self, other: "GaussianState") -> "GaussianState":
        """Product state ``self (x) other``; modes of ``other`` are appended."""
        n1, n2 = self.mean.size, other.mean.size
        cov = np.zeros((n1 + n2, n1 + n2))
        cov[:n1, :n1] = self.cov
        cov[n1:, n1:] = other.cov
        return GaussianState(np.concatenate([self.mean, other.mean]), cov)


@dataclass(frozen=True)
class SymplecticOp:
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("symplectic matrix must be square of even size")
        if not np.all(np.isfinite(m)):
            raise ValueError("symplectic matrix has non-finite entries")
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def is_symplectic(self, tol: float = SYMPLECTIC_TOL) -> bool:
        om = symplectic_form(self.n_modes)
        return bool(np.max(np.abs(self.matrix @ om @ self.matrix.T - om)) < tol)

    def __matmul__(self, other: "SymplecticOp") -> "SymplecticOp":
        label = f"{self.label}*{other.label}" if self.label or other.label else ""
        return SymplecticOp(self.matrix @ other.matrix, label)

    def embed(self, modes: Sequence[int], n_modes: int) -> "SymplecticOp":
        """Lift this op onto ``modes`` of an ``n_modes`` system (identity elsewhere)."""
        modes = list(modes)
        if len(modes) != self.n_modes:
            raise ValueError("number of target modes does not match op size")
        if len(set(modes)) != len(modes):
            raise ValueError("target modes must be distinct")
        for m in modes:
            _check_mode(m, n_modes)
        idx = np.array([[2 * m, 2 * m + 1] for m in modes]).reshape(-1)
        full = np.eye(2 * n_modes)
        full[np.ix_(idx, idx)] = self.matrix
        return SymplecticOp(full, self.label)


@dataclass(frozen=True)
class QuadratureObservable:
    """Linear combination ``c . (x1, p1, ..., xN, pN)``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = _frozen(self.coefficients).reshape(-1)
        if not np.all(np.isfinite(c)) or not np.any(c):
            raise ValueError("coefficients must be finite and nonzero")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def homodyne(cls, mode: int, theta: float, n_modes: int) -> "QuadratureObservable":
        """``cos(theta) x + sin(theta) p`` on a single mode."""
        _check_mode(mode, n_modes)
        c = np.zeros(2 * n_modes)
        c[2 * mode] = np.cos(theta)
        c[2 * mode + 1] = np.sin(theta)
        return cls(c)


@dataclass(frozen=True)
class MeasurementPlan:
    """Homodyne measurements plus linear feedforward onto one surviving mode.

    Outcome ``i`` is ``cos(angles[i]) x + sin(angles[i]) p`` of
    ``measured_modes[i]``; the surviving mode is displaced by
    ``gain @ outcomes``.
    """

    measured_modes: tuple
    angles: tuple
    surviving_mode: int
    gain: np.ndarray = field(repr=True)

    def __post_init__(self):
        modes = tuple(int(m) for m in self.measured_modes)
        angles = tuple(float(a) for a in self.angles)
        gain = _frozen(self.gain)
        if len(modes) != len(angles):
            raise ValueError("one angle is required per measured mode")
        if len(set(modes)) != len(modes):
            raise ValueError("measured modes must be distinct")
        if self.surviving_mode in modes:
            raise ValueError("surviving mode cannot be measured")
        if gain.shape != (2, len(modes)):
            raise ValueError(f"gain must have shape (2, {len(modes)}), got {gain.shape}")
        if not (np.all(np.isfinite(gain)) and np.all(np.isfinite(angles))):
            raise ValueError("gain and angles must be finite")
        object.__setattr__(self, "measured_modes", modes)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "gain", gain)

    def feedforward_map(self, n_modes: int) -> np.ndarray:
        """2 x 2N matrix taking all pre-measurement quadratures to the output mode."""
        for m in (*self.measured_modes, self.surviving_mode):
            _check_mode(m, n_modes)
        readout = np.stack(
            [
                QuadratureObservable.homodyne(m, th, n_modes).coefficients
                for m, th in zip(self.measured_modes, self.angles)
            ]
        )
        lin = self.gain @ readout
        s = self.surviving_mode
        lin[0, 2 * s] += 1.0
        lin[1, 2 * s + 1] += 1.0
        return lin


def _check_mode(mode: int, n_modes: int) -> None:
    if not 0 <= mode < n_modes:
        raise IndexError(f"mode {mode} out of range for {n_modes}-mode system")


def make_vacuum(n_modes: int) -> GaussianState:
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    return GaussianState(np.zeros(2 * n_modes), VACUUM_VARIANCE * np.eye(2 * n_modes))


def make_coherent(mean_x: float, mean_p: float) -> GaussianState:
    if not (np.isfinite(mean_x) and np.isfinite(mean_p)):
        raise ValueError("coherent amplitude must be finite")
    return GaussianState([mean_x, mean_p], VACUUM_VARIANCE * np.eye(2))


def add_classical_noise(
    state: GaussianState, mode: int, var_x: float, var_p: float
) -> GaussianState:
    """Add classical Gaussian noise (absolute units) to one mode's quadratures."""
    if var_x < 0 or var_p < 0:
        raise ValueError("added variances must be non-negative")
    _check_mode(mode, state.n_modes)
    cov = np.array(state.cov)
    cov[2 * mode, 2 * mode] += var_x
    cov[2 * mode + 1, 2 * mode + 1] += var_p
    return GaussianState(state.mean, cov)


def single_mode_squeezer(r: float) -> SymplecticOp:
    """diag(e^r, e^-r): stretches x and squeezes p for r > 0."""
    if not np.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    return SymplecticOp(np.diag([np.exp(r), np.exp(-r)]), f"S({r:g})")


def phase_rotation(theta: float) -> SymplecticOp:
    if not np.isfinite(theta):
        raise ValueError("rotation angle must be finite")
    c, s = np.cos(theta), np.sin(theta)
    return SymplecticOp(np.array([[c, -s], [s, c]]), f"R({theta:g})")


def fourier() -> SymplecticOp:
    """The 90 degree phase-space rotation x -> p, p -> -x."""
    return SymplecticOp(np.array([[0.0, -1.0], [1.0, 0.0]]), "F")


def beamsplitter_50_50(mode_a: int, mode_b: int, n_modes: int) -> SymplecticOp:
    """Balanced beamsplitter: a -> (a + b)/sqrt2, b -> (a - b)/sqrt2 on both quadratures."""
    if mode_a == mode_b:
        raise ValueError("beamsplitter needs two distinct modes")
    h = 1.0 / np.sqrt(2.0)
    block = np.array(
        [
            [h, 0.0, h, 0.0],
            [0.0, h, 0.0, h],
            [h, 0.0, -h, 0.0],
            [0.0, h, 0.0, -h],
        ]
    )
    op = SymplecticOp(block, f"BS({mode_a},{mode_b})")
    return op.embed([mode_a, mode_b], n_modes)


def apply(op: SymplecticOp, state: GaussianState) -> GaussianState:
    if op.matrix.shape[0] != state.mean.size:
        raise ValueError(
            f"op acts on {op.n_modes} modes but state has {state.n_modes}"
        )
    s = op.matrix
    cov = s @ state.cov @ s.T
    return GaussianState(s @ state.mean, 0.5 * (cov + cov.T))


def quadrature_stats(state: GaussianState, obs: QuadratureObservable) -> tuple[float, float]:
    """Mean and variance of a linear quadrature combination."""
    c = obs.coefficients
    if c.size != state.mean.size:
        raise ValueError("observable dimension does not match state")
    # sum of (c_i c_j) Sigma_ij: for diagonal cov this is cos^2 V_x + sin^2 V_p bit for bit
    return float(c @ state.mean), float(np.sum(np.outer(c, c) * state.cov))


def measure_and_feedforward(state: GaussianState, plan: MeasurementPlan) -> GaussianState:
    """Unconditional output of the surviving mode after homodyne + feedforward.

    The feedforward displacement is a fixed linear function of the
    outcomes, so averaging over outcomes leaves a Gaussian whose moments
    follow from one linear map on the joint pre-measurement state.
    """
    lin = plan.feedforward_map(state.n_modes)
    cov = lin @ state.cov @ lin.T
    return GaussianState(lin @ state.mean, 0.5 * (cov + cov.T))
