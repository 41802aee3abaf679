# Energy moments: the action identity and the variance function
#
# <H> = omega J is measured, not assumed; the residual shows how well the
# moment product rho_n = e_1...e_n does its job.  v(J) = <H^2>/omega^2 - J^2
# equals J for the harmonic case and obeys 0 < v < 6(1-J) for hydrogen.

import numpy as np

import discrete_cs as dcs

H = dcs.harmonic()
hyd = dcs.hydrogen1d()

for J in (0.5, 2.0, 8.0):
    r = dcs.observable_report(H, J)
    print(f"harmonic J={J}: <H>={r.mean_H:.15g} v={r.v:.15g} residual={r.action_residual:.2g}")

for J in (0.1, 0.5, 0.9, 0.99):
    r = dcs.observable_report(hyd, J)
    print(f"hydrogen J={J}: <H>={r.mean_H:.15g} v={r.v:.6g} bound 6(1-J)={6 * (1 - J):.3g}")

rep = dcs.hydrogen_variance_bound_check(np.linspace(0.001, 0.999, 1000))
print(f"largest v/(6(1-J)) = {rep.max_ratio:.4f} at J = {rep.argmax_J:.3f}")

# the canonical one-form i<d/dgamma> is J too, and matches a finite difference
from discrete_cs.observables import one_form_finite_difference

J = 0.7
print("one-form:", dcs.canonical_one_form(hyd, J), " finite difference:", one_form_finite_difference(hyd, J, 0.4))
