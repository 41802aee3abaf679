# Time evolution: acting with exp(-iHt) only shifts gamma by omega t
#
# The direct evolution multiplies each c_n by exp(-i e_n omega t); the
# label evolution rebuilds the state at gamma + omega t.  Their distance
# stays at rounding level.  The return probability P(t) = |<J,g|J,g+wt>|^2
# is exactly periodic for the harmonic spectrum and dephases for hydrogen.

import numpy as np

import discrete_cs as dcs
from discrete_cs.dynamics import l2_distance

for spec in (dcs.harmonic(), dcs.hydrogen1d()):
    s = dcs.coefficients(spec, 0.6, 0.3)
    d = [l2_distance(dcs.evolve_direct(s, t), dcs.evolve_label(s, t)) for t in (0.1, 1, 10, 100)]
    print(spec.label, "direct vs label distance:", np.array(d))

grid = dcs.TimeGrid.uniform(2 * np.pi, 8)
P = dcs.autocorrelation(dcs.harmonic(), 1.0, grid)
print("harmonic P(t) over one period:\n", P)

# hydrogen: collapse then partial revival on a long time axis
grid = dcs.TimeGrid.uniform(4000.0, 8000)
P = dcs.autocorrelation(dcs.hydrogen1d(), 0.8, grid)
late = P[P[:, 0] > 50]
k = np.argmax(late[:, 1])
print(f"hydrogen J=0.8: P(50)={np.interp(50, P[:, 0], P[:, 1]):.4f}, best revival P={late[k, 1]:.4f} at t={late[k, 0]:.1f}")
