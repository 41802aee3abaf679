# Resolution of unity with a finite gamma window
#
# Averaging |J,gamma><J,gamma| over gamma in [-Gamma, Gamma] leaves the
# (n, m) element multiplied by sinc((e_n - e_m) Gamma).  The diagonal then
# reduces to the moment identity int J^n dmu = rho_n, and off-diagonal
# terms fall off like 1/Gamma.

import numpy as np

import discrete_cs as dcs
from discrete_cs.unity import bohr_envelope, decay_slope

for spec in (dcs.harmonic(), dcs.hydrogen1d()):
    mu = dcs.canonical_measure(spec)
    diag = dcs.verify_diagonal(spec, mu, 200)
    print(f"{spec.label}: worst diagonal error for n <= 200: {diag.max():.2e}")

    gammas = np.array([1e2, 1e3, 1e4])
    env = [bohr_envelope(spec, 0, 1, 0.5, g) for g in gammas]
    print("   envelope of (0,1) element:", np.array(env), " slope:", round(decay_slope(gammas, env), 4))

rep = dcs.resolution_check(dcs.hydrogen1d(), dcs.canonical_measure(dcs.hydrogen1d()), 50, 1e4)
print("hydrogen windowed operator: max off-diagonal", rep.max_offdiag, " passed:", rep.passed)
