"""EPR-resource gate protocols: squeezing, Fourier and cascaded Fourier-squeezing.

Mode layout for every gate run: 0 = input, 1 = EPR submode E1 (coupled to
the input on the beamsplitter and measured), 2 = EPR submode E2 (receives
the feedforward and carries the output).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    VACUUM_VARIANCE,
    GaussianState,
    MeasurementPlan,
    SymplecticOp,
    apply,
    beamsplitter_50_50,
    make_vacuum,
    measure_and_feedforward,
    phase_rotation,
    single_mode_squeezer,
)

INPUT, E1, E2 = 0, 1, 2
_SQRT2 = np.sqrt(2.0)


class GateKind(enum.Enum):
    SQUEEZE = "squeeze"
    FOURIER = "fourier"
    CASCADE = "cascade"


def r_from_db(db: float) -> float:
    """Squeezing parameter for a resource level of ``db`` (e^{-2r} = 10^{db/10})."""
    if not np.isfinite(db) or db > 0:
        raise ValueError("resource squeezing level must be finite and <= 0 dB")
    return -db * np.log(10.0) / 20.0


def db_from_r(r: float) -> float:
    return -20.0 * r / np.log(10.0)


@dataclass(frozen=True)
class EprResource:
    r_E: float
    state: GaussianState

    @property
    def correlation_variance(self) -> float:
        """Var(x1 + x2) = Var(p1 - p2) = e^{-2 r_E}/2."""
        return 0.5 * np.exp(-2.0 * self.r_E)


def make_epr(r_E: float) -> EprResource:
    """Two orthogonally squeezed vacua combined on a balanced beamsplitter.

    Gives anti-correlated amplitudes (x1 + x2 -> 0) and correlated phases
    (p1 - p2 -> 0) as r_E grows.
    """
    if not np.isfinite(r_E) or r_E < 0:
        raise ValueError("r_E must be finite and non-negative")
    vac = make_vacuum(2)
    squeezers = (
        single_mode_squeezer(-r_E).embed([0], 2)  # amplitude-squeezed
        @ single_mode_squeezer(r_E).embed([1], 2)  # phase-squeezed
    )
    state = apply(beamsplitter_50_50(0, 1, 2), apply(squeezers, vac))
    return EprResource(float(r_E), state)


def angle_for_squeezing_db(a: float, quadrature: str = "phase") -> float:
    """Homodyne angle theta1 realizing an ``a`` dB change of one quadrature.

    For ``quadrature="phase"`` the gate scales the phase variance by
    ``tan^2(theta1) = 10^{a/10}``; for ``"amplitude"`` it scales the
    amplitude variance by ``cot^2(theta1) = 10^{a/10}``. Negative ``a``
    squeezes the named quadrature.
    """
    if not np.isfinite(a):
        raise ValueError("squeezing level must be finite")
    if quadrature == "phase":
        theta = np.arctan(10.0 ** (a / 20.0))
    elif quadrature == "amplitude":
        theta = np.arctan(10.0 ** (-a / 20.0))
    else:
        raise ValueError(f"unknown quadrature {quadrature!r}")
    _check_theta(theta)
    return float(theta)


def _check_theta(theta1: float) -> None:
    # cot and tan must both be finite and nonzero
    if not (np.isfinite(theta1) and 0.0 < theta1 < np.pi / 2):
        raise ValueError("theta1 must lie strictly inside (0, pi/2)")
    if np.sin(theta1) < 1e-12 or np.cos(theta1) < 1e-12:
        raise ValueError("theta1 too close to 0 or pi/2: feedforward gain diverges")


def build_squeeze_plan(theta1: float) -> MeasurementPlan:
    _check_theta(theta1)
    s, c = np.sin(theta1), np.cos(theta1)
    gain = np.array(
        [
            [1 / (_SQRT2 * s), 1 / (_SQRT2 * s)],
            [1 / (_SQRT2 * c), -1 / (_SQRT2 * c)],
        ]
    )
    return MeasurementPlan((INPUT, E1), (theta1, -theta1), E2, gain)


def build_fourier_plan() -> MeasurementPlan:
    gain = np.array([[0.0, _SQRT2], [_SQRT2, 0.0]])
    return MeasurementPlan((INPUT, E1), (0.0, -np.pi / 2), E2, gain)


def build_cascade_plan(theta1: float) -> MeasurementPlan:
    """Plan for squeezing followed by a Fourier transform in one step.

    Without the pi/2 coupling phase, the first detector sees the
    difference port (mode E1 after the beamsplitter) and the second the
    sum port (mode 0).
    """
    _check_theta(theta1)
    s, c = np.sin(theta1), np.cos(theta1)
    gain = np.array(
        [
            [-1 / (_SQRT2 * c), 1 / (_SQRT2 * c)],
            [1 / (_SQRT2 * s), 1 / (_SQRT2 * s)],
        ]
    )
    return MeasurementPlan((E1, INPUT), (theta1, -theta1), E2, gain)


@dataclass(frozen=True)
class GateConfig:
    kind: GateKind
    resource: EprResource
    theta1: float | None = None

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is GateKind.FOURIER:
            if self.theta1 is not None:
                raise ValueError("the Fourier gate has fixed angles; theta1 must be None")
        else:
            if self.theta1 is None:
                raise ValueError(f"{kind.value} gate needs theta1")
            _check_theta(self.theta1)

    def plan(self) -> MeasurementPlan:
        if self.kind is GateKind.SQUEEZE:
            return build_squeeze_plan(self.theta1)
        if self.kind is GateKind.FOURIER:
            return build_fourier_plan()
        return build_cascade_plan(self.theta1)

    def coupling(self) -> SymplecticOp:
        """Input-E1 coupling on BS1, including the pi/2 phase offset when used."""
        bs = beamsplitter_50_50(INPUT, E1, 3)
        if self.kind is GateKind.CASCADE:
            return bs
        return bs @ phase_rotation(np.pi / 2).embed([E1], 3)

    def ideal_transform(self) -> np.ndarray:
        """Closed-form 2x2 action on the input quadratures."""
        if self.kind is GateKind.FOURIER:
            return np.array([[0.0, -1.0], [1.0, 0.0]])
        t = np.tan(self.theta1)
        squeeze = np.diag([1.0 / t, t])
        if self.kind is GateKind.SQUEEZE:
            return squeeze
        return np.array([[0.0, -1.0], [1.0, 0.0]]) @ squeeze


@dataclass(frozen=True)
class GateReport:
    output: GaussianState
    transform: np.ndarray
    excess_cov: np.ndarray


def run_gate(config: GateConfig, input: GaussianState) -> GateReport:
    """Simulate one gate use on a single-mode input."""
    if input.n_modes != 1:
        raise ValueError("gate input must be a single-mode state")
    joint = input.tensor(config.resource.state)
    coupling = config.coupling()
    plan = config.plan()
    output = measure_and_feedforward(apply(coupling, joint), plan)

    # full linear map: initial (input, E1, E2) quadratures -> output mode
    total = plan.feedforward_map(3) @ coupling.matrix
    transform = total[:, :2]
    res = total[:, 2:]
    excess = res @ config.resource.state.cov @ res.T
    return GateReport(output, transform, 0.5 * (excess + excess.T))


def ideal_output(transform: np.ndarray, input: GaussianState) -> GaussianState:
    """Output of a noiseless gate with the given 2x2 action."""
    t = np.asarray(transform, dtype=float)
    cov = t @ input.cov @ t.T
    return GaussianState(t @ input.mean, 0.5 * (cov + cov.T))


def with_excess(state: GaussianState, excess_cov: np.ndarray) -> GaussianState:
    return GaussianState(state.mean, state.cov + np.asarray(excess_cov, dtype=float))


@dataclass(frozen=True)
class ClusterNoiseModel:
    """Excess-noise model of the four-mode cluster-state gate (resource r_c)."""

    r_c: float

    def __post_init__(self):
        if not np.isfinite(self.r_c) or self.r_c < 0:
            raise ValueError("r_c must be finite and non-negative")


CLUSTER_BRANCH_V = 1.5


def cluster_noise_coefficients(model: ClusterNoiseModel, a: float) -> np.ndarray:
    """2x4 coefficients of the vacuum phase quadratures p1..p4 in (delta_x, delta_p).

    The excess noise of the cluster gate targeting ``a`` dB is
    ``coef @ (p1, p2, p3, p4)`` with each vacuum quadrature of variance 1/4.
    """
    if not np.isfinite(a):
        raise ValueError("target squeezing level must be finite")
    v = 10.0 ** (a / 10.0)
    if v <= 0:
        raise ValueError("V must be positive")
    e = np.exp(-model.r_c)
    if v <= CLUSTER_BRANCH_V:
        h, f = 1 / _SQRT2, np.sqrt(2.5)
        return e * np.array([[h, -f, 0.0, 0.0], [0.0, 0.0, -f, h]])
    g = np.sqrt(2 * v - 3)
    s5 = np.sqrt(5.0)
    row_x = np.array([3 / v, -2 * s5, g * s5 / v, g / v]) / (2 * _SQRT2)
    row_p = np.array([g, 0.0, -s5, 1.0]) / _SQRT2
    return e * np.stack([row_x, row_p])


def cluster_excess_variance(model: ClusterNoiseModel, a: float) -> tuple[float, float]:
    """(var_x, var_p) of the cluster-gate excess noise for an ``a`` dB target."""
    coef = cluster_noise_coefficients(model, a)
    var = VACUUM_VARIANCE * np.sum(coef**2, axis=1)
    return float(var[0]), float(var[1])


def excess_ratio_epr_vs_cluster(r: float) -> float:
    """EPR / cluster excess variance at equal resource squeezing (phase regime)."""
    if not np.isfinite(r) or r < 0:
        raise ValueError("r must be finite and non-negative")
    epr = 0.5 * np.exp(-2 * r)
    # any V <= 3/2 target selects the phase-squeezing branch
    cluster_x, _ = cluster_excess_variance(ClusterNoiseModel(r), -3.0)
    return epr / cluster_x
