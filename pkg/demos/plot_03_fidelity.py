"""
Gate fidelity against the ideal output
======================================

Fidelity compares the simulated output with the output of a perfect gate.
Without squeezed resources (r_E = 0) a 0 dB gate reaches the classical
limit 1/2.
"""

from eprgates import (
    GateConfig,
    GateKind,
    angle_for_squeezing_db,
    fidelity_vs_ideal,
    make_epr,
    make_vacuum,
    r_from_db,
)

vac = make_vacuum(1)
for target in (0.0, -4.0, -8.0, -12.0):
    gate = GateConfig(GateKind.SQUEEZE, make_epr(r_from_db(-4.0)), angle_for_squeezing_db(target))
    f = fidelity_vs_ideal(gate, vac, "epr").fidelity
    f_cl = fidelity_vs_ideal(gate, vac, "classical").fidelity
    print(f"target {target:5.1f} dB   F = {f:.4f}   classical F = {f_cl:.4f}")
