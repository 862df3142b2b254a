"""
Gaussian states and symplectic operations
=========================================

States are a mean vector and a covariance matrix over the quadratures
(x1, p1, x2, p2, ...). The vacuum has variance 1/4 on every quadrature.
"""

import numpy as np

from eprgates import (
    QuadratureObservable,
    apply,
    beamsplitter_50_50,
    make_vacuum,
    quadrature_stats,
    single_mode_squeezer,
    symplectic_eigenvalues,
)

# squeeze the phase quadrature of one vacuum mode by 4 dB
r = 0.2 * np.log(10)
sq = apply(single_mode_squeezer(r), make_vacuum(1))
print("squeezed covariance:\n", sq.cov)

# the state stays minimum-uncertainty: its symplectic eigenvalue is 1/4
print("symplectic eigenvalue:", symplectic_eigenvalues(sq.cov))

# a homodyne detector at angle theta sees cos^2 V_x + sin^2 V_p
for deg in (0, 45, 90):
    obs = QuadratureObservable.homodyne(0, np.radians(deg), 1)
    print(f"theta={deg:3d} deg  variance={quadrature_stats(sq, obs)[1]:.5f}")

# two squeezed vacua on a balanced beamsplitter form an EPR pair
pair = sq.tensor(apply(single_mode_squeezer(-r), make_vacuum(1)))
epr = apply(beamsplitter_50_50(0, 1, 2), pair)
print("Var(x1 - x2) =", epr.cov[0, 0] + epr.cov[2, 2] - 2 * epr.cov[0, 2])
