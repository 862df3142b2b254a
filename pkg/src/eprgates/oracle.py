"""Monte Carlo oracle for the gate engine and the cluster excess-noise formulas.

Every trajectory is built from scalar quadrature arithmetic: draw the input
fluctuation and the two squeezed ancilla quadratures, mix the ancillas on a
balanced beamsplitter to get the EPR pair, form the two homodyne outcomes
and apply the feedforward gain. Nothing here propagates covariance
matrices, so agreement with :mod:`eprgates.gates` is a genuine cross-check.

Random streams come from NumPy's Philox counter-based generator. The batch
is cut into fixed-size chunks and chunk ``k`` is seeded with
``SeedSequence([seed, k])``, so a batch is reproducible bit for bit and
independent of how the chunks are distributed over workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gates import GateConfig, GateKind, GateReport, ClusterNoiseModel, cluster_excess_variance
from .gaussian import GaussianState

CHUNK = 1 << 17
Z_THRESHOLD = 4.0
MIN_SAMPLES = 100

_SQRT2 = np.sqrt(2.0)


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))


def _chunks(n: int):
    for k, start in enumerate(range(0, n, CHUNK)):
        yield k, min(CHUNK, n - start)


@dataclass(frozen=True)
class TrajectoryBatch:
    n_samples: int
    seed: int
    samples: np.ndarray


@dataclass(frozen=True)
class OracleVerdict:
    estimated_mean: np.ndarray
    estimated_cov: np.ndarray
    analytic_mean: np.ndarray
    analytic_cov: np.ndarray
    z_scores: dict
    threshold: float = Z_THRESHOLD

    @property
    def passed(self) -> bool:
        return all(abs(z) < self.threshold for z in self.z_scores.values())

    @property
    def max_abs_z(self) -> float:
        return max(abs(z) for z in self.z_scores.values())


def _gate_chunk(kind, theta1, r_e, mean, chol, gain_scale, rng, m):
    z = rng.standard_normal((6, m))

    l11, l21, l22 = chol
    x_in = mean[0] + l11 * z[0]
    p_in = mean[1] + l21 * z[0] + l22 * z[1]

    # amplitude-squeezed (a) and phase-squeezed (b) vacua, combined on a 50:50 BS
    lo, hi = 0.5 * np.exp(-r_e), 0.5 * np.exp(r_e)
    x_a, p_a = lo * z[2], hi * z[3]
    x_b, p_b = hi * z[4], lo * z[5]
    x1, p1 = (x_a + x_b) / _SQRT2, (p_a + p_b) / _SQRT2
    x2, p2 = (x_a - x_b) / _SQRT2, (p_a - p_b) / _SQRT2

    if kind is GateKind.CASCADE:
        # zero coupling phase
        c1, s1 = np.cos(theta1), np.sin(theta1)
        c2, s2 = np.cos(-theta1), np.sin(-theta1)
        d1 = (c1 * (x_in - x1) + s1 * (p_in - p1)) / _SQRT2
        d2 = (c2 * (x_in + x1) + s2 * (p_in + p1)) / _SQRT2
        g = np.array(
            [
                [-1 / (_SQRT2 * c1), 1 / (_SQRT2 * c1)],
                [1 / (_SQRT2 * s1), 1 / (_SQRT2 * s1)],
            ]
        )
    else:
        # pi/2 coupling phase between input and E1
        if kind is GateKind.FOURIER:
            th1, th2 = 0.0, -np.pi / 2
            g = np.array([[0.0, _SQRT2], [_SQRT2, 0.0]])
        else:
            th1, th2 = theta1, -theta1
            s, c = np.sin(theta1), np.cos(theta1)
            g = np.array(
                [
                    [1 / (_SQRT2 * s), 1 / (_SQRT2 * s)],
                    [1 / (_SQRT2 * c), -1 / (_SQRT2 * c)],
                ]
            )
        d1 = (np.cos(th1) * (x_in - p1) + np.sin(th1) * (p_in + x1)) / _SQRT2
        d2 = (np.cos(th2) * (x_in + p1) + np.sin(th2) * (p_in - x1)) / _SQRT2

    g = gain_scale * g
    x_out = x2 + g[0, 0] * d1 + g[0, 1] * d2
    p_out = p2 + g[1, 0] * d1 + g[1, 1] * d2
    return np.stack([x_out, p_out], axis=1)


def sample_gate_trajectories(
    config: GateConfig,
    input: GaussianState,
    n: int,
    seed: int,
    gain_scale: float = 1.0,
    workers: int = 1,
) -> TrajectoryBatch:
    """Draw ``n`` single-shot output quadratures of a gate run.

    ``gain_scale`` multiplies the feedforward gain; values other than 1
    inject a deliberate fault for negative-control checks.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if input.n_modes != 1:
        raise ValueError("gate input must be a single-mode state")
    vx, cxp, vp = input.cov[0, 0], input.cov[0, 1], input.cov[1, 1]
    l11 = np.sqrt(vx)
    l21 = cxp / l11
    l22 = np.sqrt(max(vp - l21 * l21, 0.0))
    args = (config.kind, config.theta1, config.resource.r_E, input.mean, (l11, l21, l22), gain_scale)

    def work(job):
        k, m = job
        return _gate_chunk(*args, _rng(seed, k), m)

    jobs = list(_chunks(n))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, jobs))
    else:
        parts = [work(j) for j in jobs]
    return TrajectoryBatch(n, seed, np.concatenate(parts))


def _z_scores(samples: np.ndarray, mean: np.ndarray, cov: np.ndarray, check_offdiag=True) -> dict:
    n = samples.shape[0]
    est_mean = samples.mean(axis=0)
    est_cov = np.cov(samples, rowvar=False, ddof=1)
    z = {}
    for i, name in enumerate(("x", "p")):
        z[f"mean_{name}"] = (est_mean[i] - mean[i]) / np.sqrt(cov[i, i] / n)
    pairs = [(0, 0, "var_x"), (1, 1, "var_p")]
    if check_offdiag:
        pairs.insert(1, (0, 1, "cov_xp"))
    for i, j, name in pairs:
        # Gaussian asymptotics: Var(s_ij) = (S_ii S_jj + S_ij^2) / (n - 1)
        se = np.sqrt((cov[i, i] * cov[j, j] + cov[i, j] ** 2) / (n - 1))
        z[name] = (est_cov[i, j] - cov[i, j]) / se
    return est_mean, est_cov, {k: float(v) for k, v in z.items()}


def verify_against_analytic(
    batch: TrajectoryBatch, report: GateReport, threshold: float = Z_THRESHOLD
) -> OracleVerdict:
    """Compare sample moments of a batch with the analytic output state."""
    if batch.n_samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples for stable standard errors")
    mean, cov = report.output.mean, report.output.cov
    est_mean, est_cov, z = _z_scores(batch.samples, mean, cov)
    return OracleVerdict(est_mean, est_cov, np.array(mean), np.array(cov), z, threshold)


def _cluster_chunk(r_c, v, rng, m):
    p1, p2, p3, p4 = 0.5 * rng.standard_normal((4, m))
    e = np.exp(-r_c)
    if v <= 1.5:
        dx = e * (p1 / _SQRT2 - np.sqrt(5 / 2) * p2)
        dp = e * (-np.sqrt(5 / 2) * p3 + p4 / _SQRT2)
    else:
        g = np.sqrt(2 * v - 3)
        dx = e * (3 * p1 / v - 2 * np.sqrt(5) * p2 + g * (np.sqrt(5) * p3 + p4) / v) / (2 * _SQRT2)
        dp = e * (g * p1 - np.sqrt(5) * p3 + p4) / _SQRT2
    return np.stack([dx, dp], axis=1)


def sample_cluster_noise(model: ClusterNoiseModel, a: float, n: int, seed: int) -> np.ndarray:
    """``n`` draws of the cluster-gate excess noise (delta_x, delta_p)."""
    v = 10.0 ** (a / 10.0)
    if not (np.isfinite(v) and v > 0):
        raise ValueError("V must be finite and positive")
    return np.concatenate([_cluster_chunk(model.r_c, v, _rng(seed, k), m) for k, m in _chunks(n)])


def verify_cluster_noise(
    model: ClusterNoiseModel, a: float, n: int, seed: int, threshold: float = Z_THRESHOLD
) -> OracleVerdict:
    """Check :func:`cluster_excess_variance` against sampled vacuum noise.

    Only the means and the two variances are compared; the x-p correlation
    of the V > 3/2 branch is not part of the analytic model.
    """
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples for stable standard errors")
    var_x, var_p = cluster_excess_variance(model, a)
    mean = np.zeros(2)
    cov = np.diag([var_x, var_p])
    samples = sample_cluster_noise(model, a, n, seed)
    est_mean, est_cov, z = _z_scores(samples, mean, cov, check_offdiag=False)
    return OracleVerdict(est_mean, est_cov, mean, cov, z, threshold)
