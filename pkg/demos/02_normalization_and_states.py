# Building |J, gamma> and checking its normalization
#
# c_n = sqrt(J^n / rho_n) exp(-i e_n gamma) / M(J).  The series is
# truncated once a geometric tail bound falls below the relative tolerance,
# and the bound travels with the state.

import math

import numpy as np

import discrete_cs as dcs

H = dcs.harmonic()
hyd = dcs.hydrogen1d()

for J in (0.1, 1.0, 5.0, 10.0):
    r = dcs.normalization_sq(H, J)
    print(f"harmonic J={J:5}: M^2={r.value:.15g}  e^J={math.exp(J):.15g}  terms={r.n_terms}")

# hydrogen closed form: 2([J(1-J)]^-1 + J^-2 ln(1-J)); the factor 2 is what makes M(0)^2 = 1
for J in (1e-3, 0.5, 0.9, 0.999):
    series = dcs.normalization_sq(hyd, J).value
    closed = dcs.hydrogen_normalization_closed(J)
    print(f"hydrogen J={J:6}: series={series:.15g} closed={closed:.15g}")

s = dcs.coefficients(hyd, 0.7, 1.2)
print("N =", s.N, " sum |c_n|^2 =", s.probabilities.sum(), " tail bound =", s.tail_bound)

# near J = 1 the hydrogen series needs tens of thousands of terms
s = dcs.coefficients(hyd, 0.999, 0.0)
print("J=0.999: N =", s.N, " tail =", s.tail_bound)

# overlaps of harmonic states reproduce the Glauber formula
a, b = dcs.coefficients(H, 1.5, 0.2), dcs.coefficients(H, 2.0, -0.4)
za, zb = np.sqrt(1.5) * np.exp(-0.2j), np.sqrt(2.0) * np.exp(0.4j)
print("|<a|b>|^2 =", abs(dcs.overlap(a, b)) ** 2, " exp(-|za-zb|^2) =", math.exp(-abs(za - zb) ** 2))
