"""
Cross-checking the engine with sampled trajectories
===================================================

The oracle simulates single shots from scalar quadrature arithmetic and
compares sample moments with the analytic output state via z-scores.
A deliberately wrong feedforward gain is caught.
"""

import numpy as np

from eprgates import (
    GateConfig,
    GateKind,
    make_coherent,
    make_epr,
    run_gate,
    sample_gate_trajectories,
    verify_against_analytic,
)

gate = GateConfig(GateKind.CASCADE, make_epr(0.46), np.radians(21.7))
inp = make_coherent(1.0, 0.5)
report = run_gate(gate, inp)

for scale in (1.0, 0.9):
    batch = sample_gate_trajectories(gate, inp, 10**6, seed=42, gain_scale=scale)
    verdict = verify_against_analytic(batch, report)
    print(f"gain x{scale}: passed={verdict.passed}  max|z|={verdict.max_abs_z:.1f}")
