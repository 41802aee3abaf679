# Levels, moment products and the radius of convergence
#
# Every spectrum here is a dimensionless level sequence e_n with e_0 = 0.
# The moments rho_n = e_1 e_2 ... e_n fix the normalization series
# M(J)^2 = sum J^n / rho_n, which converges for J below the level limit.

import numpy as np

import discrete_cs as dcs

H = dcs.harmonic()
hyd = dcs.hydrogen1d()

# harmonic levels are the integers and rho_n = n!
print("harmonic e_0..e_5:", dcs.levels(H, 5))
seq = dcs.moment_sequence(H, 10)
print("harmonic rho_10 =", dcs.rho(seq, 10), " exact:", seq.exact[10])

# hydrogen analog: e_n = 1 - 1/(n+1)^2, bounded by 1
print("hydrogen e_0..e_5:", dcs.levels(hyd, 5))
seq = dcs.moment_sequence(hyd, 1000)
n = np.array([1, 10, 100, 1000])
print("rho_n          :", [dcs.rho(seq, k) for k in n])
print("(n+2)/(2(n+1)) :", (n + 2) / (2 * (n + 1)))

# the limit of the levels is the radius of convergence
print("J* harmonic:", dcs.radius_of_convergence(H))
print("J* hydrogen:", dcs.radius_of_convergence(hyd))

# user spectra: a formula family, validated when built
ratl = dcs.custom_formula("rational", b=3.0, cap=2.0)
print("rational family e_0..e_4:", dcs.levels(ratl, 4), " limit:", dcs.limit_level(ratl))

# a table that is not strictly increasing is rejected
try:
    dcs.custom_table([0.0, 1.0, 1.0, 2.0])
except dcs.InvalidSpectrum as exc:
    print("rejected:", exc)
