# How many sidebands are enough?
#
# The double sums run over |n|, |m| <= n_bar. This script tabulates how
# Gamma(t) settles as n_bar grows and shows the automatic choice.

import numpy as np

from qmod import CavityParams, choose_truncation, convergence_report, gamma_t

p = CavityParams(g=0.3, kappa=1.0, delta_c=0.0, omega=0.12, chi=50.0)

for row in convergence_report(p, 40.0, [40, 50, 60, 70, 80, 100]):
    print(f"n_bar={row.n_bar:4d}  Gamma(40)={row.big_gamma_end:.12f}  change vs next={row.max_delta:.2e}")

tr = choose_truncation(p, tol=1e-8)
print("automatic choice:", tr)

# An under-truncated sum misplaces the rate minimum, which is exactly
# where the plateau lives.

t = np.linspace(0.0, 40.0, 4001)
for n_bar in (10, 30, tr.n_bar):
    print(f"n_bar={n_bar:4d}: min gamma = {gamma_t(p, n_bar, t).min():+.5f}")
