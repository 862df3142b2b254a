"""Figure and table reproductions as :class:`ResultTable` data.

Each ``run_*`` function takes a resolved :class:`ExperimentConfig` and
returns a table whose rows are purely numeric. Analytic experiments involve
no sampling, so their output does not depend on the seed.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .gates import (
    ClusterNoiseModel,
    GateConfig,
    GateKind,
    angle_for_squeezing_db,
    cluster_excess_variance,
    make_epr,
    r_from_db,
    run_gate,
)
from .gaussian import (
    GaussianState,
    add_classical_noise,
    fourier,
    make_coherent,
    make_vacuum,
)
from .metrics import (
    fidelity_vs_ideal,
    fidelity_with_excess,
    lo_sweep,
    modulation_variance,
    noise_power_db,
)
from .oracle import sample_gate_trajectories, verify_against_analytic

EXPERIMENTS = ("fig2", "fig3", "fig4", "fig5", "cascade", "angles", "verify")
INPUT_KINDS = ("vacuum", "coherent", "modulated")

OPERATING_TARGETS = (-4.0, -8.0, -12.0)
VERIFY_THETAS_DEG = (14.10, 21.70, 32.25, 45.0, 60.0)
VERIFY_R_E = (0.0, 0.23, 0.46, 8.0)
VERIFY_KINDS = (GateKind.SQUEEZE, GateKind.FOURIER, GateKind.CASCADE)
MIN_VERIFY_SAMPLES = 10**4

# experiment -> defaults for fields left as None
_DEFAULTS = {
    "fig2": dict(resource_db=-5.3, sweep=(0.0, 12.0, 101), input_kind="vacuum"),
    "fig3": dict(resource_db=-4.0, sweep=(0.0, -14.0, 101), input_kind="modulated",
                 modulation_x_db=0.0, modulation_p_db=20.0),
    "fig4": dict(resource_db=-4.0, sweep=(0.0, -14.0, 101), input_kind="vacuum"),
    "fig5": dict(resource_db=-4.0, sweep=(0.0, 180.0, 181), input_kind="modulated",
                 modulation_x_db=4.0, modulation_p_db=20.0),
    "cascade": dict(resource_db=-4.0, sweep=(5.0, 85.0, 81), input_kind="vacuum"),
    "angles": dict(resource_db=-4.0, input_kind="vacuum"),
    "verify": dict(resource_db=-4.0, input_kind="coherent", modulation_x_db=0.0,
                   modulation_p_db=0.0),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """All knobs of one CLI run; ``None`` means "use the experiment default"."""

    experiment: str
    resource_db: float | None = None
    cluster_resource_db: float | None = None
    sweep: tuple | None = None
    input_kind: str | None = None
    modulation_x_db: float | None = None
    modulation_p_db: float | None = None
    mean_x: float = 1.0
    mean_p: float = 0.5
    theta1_deg: float | None = None
    seed: int = 42
    samples: int = 10**6
    fault_gain: float = 1.0
    output_path: str | None = None

    def resolved(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        values = {
            k: v for k, v in _DEFAULTS[self.experiment].items()
            if getattr(self, k) is None
        }
        cfg = dataclasses.replace(self, **values)
        if cfg.cluster_resource_db is None:
            cfg = dataclasses.replace(cfg, cluster_resource_db=cfg.resource_db)
        for name in ("modulation_x_db", "modulation_p_db"):
            if getattr(cfg, name) is None:
                cfg = dataclasses.replace(cfg, **{name: 0.0})
        cfg._validate()
        return cfg

    def _validate(self) -> None:
        if self.resource_db > 0 or self.cluster_resource_db > 0:
            raise ValueError("resource squeezing levels must be <= 0 dB")
        if self.input_kind not in INPUT_KINDS:
            raise ValueError(f"input kind must be one of {INPUT_KINDS}")
        if self.sweep is not None:
            lo, hi, steps = self.sweep
            if int(steps) != steps or steps < 2:
                raise ValueError("sweep needs at least 2 steps")
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("sweep bounds must be finite")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.fault_gain != 1.0 and self.experiment != "verify":
            raise ValueError("--fault-gain is only meaningful for verify")

    def sweep_values(self) -> np.ndarray:
        lo, hi, steps = self.sweep
        return np.linspace(lo, hi, int(steps))

    def metadata(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class ResultTable:
    header: list
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def add_row(self, *values) -> None:
        if len(values) != len(self.header):
            raise ValueError(f"row has {len(values)} entries, header has {len(self.header)}")
        row = [float(v) for v in values]
        if not all(math.isfinite(v) for v in row):
            raise ValueError(f"non-finite entry in row {row}")
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        i = self.header.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        lines = [f"# {k}={_fmt_meta(v)}" for k, v in self.metadata.items()]
        lines += [f"# summary.{k}={v:.9g}" for k, v in self.summary.items()]
        lines.append(",".join(self.header))
        lines += [",".join(f"{v:.9g}" for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def gnuplot_script(self, data_path: str) -> str:
        plots = ", ".join(
            f"'{data_path}' using 1:{i + 1} with lines title '{name}'"
            for i, name in enumerate(self.header[1:], start=1)
        )
        return "\n".join(
            [
                "set datafile separator ','",
                "set datafile commentschars '#'",
                "set key autotitle columnhead",
                f"set xlabel '{self.header[0]}'",
                f"plot {plots}",
                "",
            ]
        )


def _fmt_meta(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    if isinstance(v, tuple):
        return ":".join(_fmt_meta(x) for x in v)
    return str(v)


def build_input(cfg: ExperimentConfig, kind: str | None = None) -> GaussianState:
    kind = kind or cfg.input_kind
    if kind == "vacuum":
        return make_vacuum(1)
    if kind == "coherent":
        return make_coherent(cfg.mean_x, cfg.mean_p)
    return add_classical_noise(
        make_vacuum(1),
        0,
        modulation_variance(cfg.modulation_x_db),
        modulation_variance(cfg.modulation_p_db),
    )


def _table(cfg: ExperimentConfig, header) -> ResultTable:
    return ResultTable(list(header), metadata=cfg.metadata())


def _squeeze_config(theta1: float, r_e: float) -> GateConfig:
    return GateConfig(GateKind.SQUEEZE, make_epr(r_e), theta1)


def run_fig2(cfg: ExperimentConfig) -> ResultTable:
    """Output noise of the amplitude-squeezing gate, EPR versus cluster resource.

    ``target_db`` follows the signed convention in which a > 0 squeezes the
    amplitude quadrature (variance ratio 10^{-a/10} on x). "Squeezed" is
    the amplitude quadrature and "antisqueezed" the phase quadrature.
    """
    table = _table(cfg, ["target_db", "epr_squeezed_db", "epr_antisqueezed_db",
                         "cluster_squeezed_db", "cluster_antisqueezed_db"])
    r_e = r_from_db(cfg.resource_db)
    cluster = ClusterNoiseModel(r_from_db(cfg.cluster_resource_db))
    inp = build_input(cfg)
    for a in cfg.sweep_values():
        theta = angle_for_squeezing_db(-a, "amplitude")
        rep = run_gate(_squeeze_config(theta, r_e), inp)
        ideal = rep.transform @ inp.cov @ rep.transform.T
        cx, cp = cluster_excess_variance(cluster, a)
        table.add_row(
            a,
            noise_power_db(rep.output.cov[0, 0]),
            noise_power_db(rep.output.cov[1, 1]),
            noise_power_db(ideal[0, 0] + cx),
            noise_power_db(ideal[1, 1] + cp),
        )
    return table


def run_fig3(cfg: ExperimentConfig) -> ResultTable:
    """Phase-squeezing gate with a vacuum and a phase-modulated coherent input.

    The -4, -8 and -12 dB operating points are always included.
    """
    table = _table(cfg, ["target_db", "vac_squeezed_db", "vac_antisqueezed_db",
                         "pcoh_squeezed_db", "pcoh_antisqueezed_db"])
    r_e = r_from_db(cfg.resource_db)
    vac = make_vacuum(1)
    pcoh = build_input(cfg, "modulated")
    targets = np.union1d(cfg.sweep_values(), OPERATING_TARGETS)[::-1]
    for a in targets:
        gate = _squeeze_config(angle_for_squeezing_db(a, "phase"), r_e)
        out_v = run_gate(gate, vac).output.cov
        out_c = run_gate(gate, pcoh).output.cov
        table.add_row(
            a,
            noise_power_db(out_v[1, 1]),
            noise_power_db(out_v[0, 0]),
            noise_power_db(out_c[1, 1]),
            noise_power_db(out_c[0, 0]),
        )
    return table


def run_fig4(cfg: ExperimentConfig) -> ResultTable:
    """Gate fidelity versus phase-squeezing target for four resource models."""
    table = _table(cfg, ["target_db", "f_epr", "f_epr_classical", "f_cluster",
                         "f_cluster_classical"])
    r_e = r_from_db(cfg.resource_db)
    cluster = ClusterNoiseModel(r_from_db(cfg.cluster_resource_db))
    cluster_classical = ClusterNoiseModel(0.0)
    inp = build_input(cfg)
    for a in cfg.sweep_values():
        gate = _squeeze_config(angle_for_squeezing_db(a, "phase"), r_e)
        t = gate.ideal_transform()
        table.add_row(
            a,
            fidelity_vs_ideal(gate, inp, "epr").fidelity,
            fidelity_vs_ideal(gate, inp, "classical").fidelity,
            fidelity_with_excess(t, inp, np.diag(cluster_excess_variance(cluster, a))).fidelity,
            fidelity_with_excess(
                t, inp, np.diag(cluster_excess_variance(cluster_classical, a))
            ).fidelity,
        )
    return table


def run_fig5(cfg: ExperimentConfig) -> ResultTable:
    """Fourier gate on a modulated input: LO-phase sweeps before and after."""
    lo, hi, steps = cfg.sweep
    if (lo, hi) != (0.0, 180.0):
        raise ValueError("fig5 sweeps the LO phase over 0:180 degrees; only steps may change")
    table = _table(cfg, ["phi_deg", "input_db", "output_db"])
    inp = build_input(cfg)
    gate = GateConfig(GateKind.FOURIER, make_epr(r_from_db(cfg.resource_db)))
    out = run_gate(gate, inp).output
    s_in = lo_sweep(inp, int(steps))
    s_out = lo_sweep(out, int(steps))
    for phi, p_in, p_out in zip(np.degrees(s_in.angles), s_in.power_db, s_out.power_db):
        table.add_row(phi, p_in, p_out)
    table.summary = {
        "input_x_db": noise_power_db(inp.cov[0, 0] + inp.mean[0] ** 2),
        "input_p_db": noise_power_db(inp.cov[1, 1] + inp.mean[1] ** 2),
        "output_x_db": noise_power_db(out.cov[0, 0] + out.mean[0] ** 2),
        "output_p_db": noise_power_db(out.cov[1, 1] + out.mean[1] ** 2),
    }
    return table


def run_cascade(cfg: ExperimentConfig) -> ResultTable:
    """Cascaded squeeze-then-Fourier gate over a theta1 sweep (degrees)."""
    table = _table(cfg, ["theta1_deg", "t_xx", "t_xp", "t_px", "t_pp", "excess_var_x",
                         "excess_var_p", "residual", "residual_vs_squeeze_gate"])
    res = make_epr(r_from_db(cfg.resource_db))
    thetas = [cfg.theta1_deg] if cfg.theta1_deg is not None else cfg.sweep_values()
    f = fourier().matrix
    vac = make_vacuum(1)
    for deg in thetas:
        th = np.radians(deg)
        rep = run_gate(GateConfig(GateKind.CASCADE, res, th), vac)
        squeeze = run_gate(GateConfig(GateKind.SQUEEZE, res, th), vac).transform
        closed = f @ np.diag([1 / np.tan(th), np.tan(th)])
        t = rep.transform
        table.add_row(
            deg, t[0, 0], t[0, 1], t[1, 0], t[1, 1],
            rep.excess_cov[0, 0], rep.excess_cov[1, 1],
            np.max(np.abs(t - closed)),
            np.max(np.abs(t - f @ squeeze)),
        )
    return table


def run_angles(cfg: ExperimentConfig) -> ResultTable:
    """Homodyne angle pairs for phase-squeezing targets."""
    table = _table(cfg, ["target_db", "theta1_deg", "theta2_deg"])
    targets = list(OPERATING_TARGETS)
    if cfg.sweep is not None:
        targets += [a for a in cfg.sweep_values() if a not in targets]
    for a in targets:
        th = np.degrees(angle_for_squeezing_db(a, "phase"))
        table.add_row(a, th, -th)
    return table


def _row_seed(seed: int, row: int) -> int:
    return int(np.random.SeedSequence([seed, row]).generate_state(1, np.uint64)[0])


def run_verify(cfg: ExperimentConfig) -> ResultTable:
    """Monte Carlo cross-check of every gate over the (kind, theta1, r_E) grid.

    Fourier rows repeat the same gate (its angles are fixed) with
    independent random streams. ``kind`` is 0 squeeze, 1 Fourier, 2 cascade.
    """
    if cfg.samples < MIN_VERIFY_SAMPLES:
        raise ValueError(f"verify needs at least {MIN_VERIFY_SAMPLES} samples")
    table = _table(cfg, ["kind", "theta1_deg", "r_E", "z_mean_x", "z_mean_p", "z_var_x",
                         "z_cov_xp", "z_var_p", "max_abs_z", "pass"])
    inp = build_input(cfg)
    row = 0
    for k, kind in enumerate(VERIFY_KINDS):
        for deg in VERIFY_THETAS_DEG:
            for r_e in VERIFY_R_E:
                theta = None if kind is GateKind.FOURIER else np.radians(deg)
                gate = GateConfig(kind, make_epr(r_e), theta)
                batch = sample_gate_trajectories(
                    gate, inp, cfg.samples, _row_seed(cfg.seed, row), gain_scale=cfg.fault_gain
                )
                v = verify_against_analytic(batch, run_gate(gate, inp))
                z = v.z_scores
                table.add_row(k, deg, r_e, z["mean_x"], z["mean_p"], z["var_x"],
                              z["cov_xp"], z["var_p"], v.max_abs_z, int(v.passed))
                row += 1
    passed = table.column("pass")
    table.summary = {"checks": float(len(passed)), "failures": float(np.sum(passed == 0))}
    return table


RUNNERS = {
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
    "cascade": run_cascade,
    "angles": run_angles,
    "verify": run_verify,
}


def run_experiment(cfg: ExperimentConfig) -> ResultTable:
    cfg = cfg.resolved()
    return RUNNERS[cfg.experiment](cfg)
