"""
A squeezing gate driven by an EPR pair
======================================

The input is coupled to one half of the EPR pair, two homodyne outcomes are
fed forward onto the other half, and the output carries the squeezing
transform plus an input-independent excess noise.
"""

import numpy as np

from eprgates import (
    GateConfig,
    GateKind,
    angle_for_squeezing_db,
    make_epr,
    make_vacuum,
    noise_power_db,
    r_from_db,
    run_gate,
)

epr = make_epr(r_from_db(-4.0))
for target in (-4.0, -8.0, -12.0):
    theta = angle_for_squeezing_db(target)
    report = run_gate(GateConfig(GateKind.SQUEEZE, epr, theta), make_vacuum(1))
    out = report.output.cov
    print(
        f"target {target:5.1f} dB  theta1 {np.degrees(theta):6.2f} deg  "
        f"x {noise_power_db(out[0, 0]):6.2f} dB  p {noise_power_db(out[1, 1]):6.2f} dB"
    )

# the excess noise is 0.5 e^{-2 r_E} on both quadratures
print("excess covariance:\n", report.excess_cov)

# the Fourier gate rotates phase space by 90 degrees
fourier = run_gate(GateConfig(GateKind.FOURIER, epr), make_vacuum(1))
print("Fourier transform matrix:\n", np.round(fourier.transform, 12))
