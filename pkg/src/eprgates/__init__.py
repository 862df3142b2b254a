"""Linear-Gaussian simulation of measurement-based CV gates driven by EPR entanglement."""

from .gaussian import (
    GaussianState,
    MeasurementPlan,
    QuadratureObservable,
    SymplecticOp,
    add_classical_noise,
    apply,
    beamsplitter_50_50,
    fourier,
    make_coherent,
    make_vacuum,
    measure_and_feedforward,
    phase_rotation,
    quadrature_stats,
    single_mode_squeezer,
    symplectic_eigenvalues,
    symplectic_form,
)
from .gates import (
    ClusterNoiseModel,
    EprResource,
    GateConfig,
    GateKind,
    GateReport,
    angle_for_squeezing_db,
    build_cascade_plan,
    build_fourier_plan,
    build_squeeze_plan,
    cluster_excess_variance,
    excess_ratio_epr_vs_cluster,
    make_epr,
    r_from_db,
    run_gate,
)
from .metrics import (
    FidelityResult,
    NoiseSpectrum,
    covariance_for_fidelity,
    fidelity_vs_ideal,
    gaussian_fidelity,
    lo_sweep,
    noise_power_db,
)
from .oracle import (
    OracleVerdict,
    TrajectoryBatch,
    sample_gate_trajectories,
    verify_against_analytic,
    verify_cluster_noise,
)

__version__ = "0.1.0"
