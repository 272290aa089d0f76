# Bessel sidebands
#
# A transition frequency that wobbles as w0 + b cos(w t + phi) splits the
# emitter into sidebands at w0 + n w, weighted by J_n(chi) with chi = b/w.
# This script looks at how many sidebands matter for a given chi.

import numpy as np

from qmod import bessel_asymptotic, bessel_integral_oracle, bessel_j, bessel_j_row

# A single value, checked against the integral definition.

print("J_0(2.4048) =", bessel_j(0, 2.4048))
print("oracle      =", bessel_integral_oracle(0, 2.4048))

# Negative orders follow from parity.

for n in (1, 2, 3):
    print(f"J_{-n}(5) = {bessel_j(-n, 5.0):+.15f}   (-1)^n J_{n}(5) = {(-1) ** n * bessel_j(n, 5.0):+.15f}")

# The weights |J_n(chi)|^2 sum to one. Almost all of the weight sits in
# |n| <= chi, with a tail that widens slowly as chi grows.

for chi in (1.0, 10.0, 50.0, 150.0):
    row = bessel_j_row(int(chi) + 60, chi)
    n = np.arange(-(int(chi) + 60), int(chi) + 61)
    inside = np.sum(row[np.abs(n) <= chi] ** 2)
    print(f"chi={chi:6.1f}: total weight {np.sum(row**2):.15f}, inside |n|<=chi {inside:.6f}")

# Far beyond the order, the asymptotic cosine form takes over.

for x in (20.0, 100.0, 300.0):
    print(f"x={x:5.0f}: J_3 = {bessel_j(3, x):+.6e}, asymptotic = {bessel_asymptotic(3, x):+.6e}")
