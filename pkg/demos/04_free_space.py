# Free space with a weak low-frequency drive
#
# The drive strength rho and the ratio w0/w set a two-photon index chi and
# a four-photon index chi'. Keeping only a few two-photon sidebands (n0=1)
# slows the decay markedly. With many (n0=50) the emitter reaches the
# ground state by gamma t = 20 like the bare one, though its average rate
# is only about a third of gamma.

import numpy as np

from qmod import FreeSpaceParams, map_drive, trace_freespace

b, b_prime, chi, chi_prime, shift = map_drive(0.2, 2e4)
print(f"b={b:g}  b'={b_prime:.6g}  chi={chi:g}  chi'={chi_prime:.6g}  w0 shift factor={shift:g}")

for n0 in (1, 5, 50):
    p = FreeSpaceParams(rho=0.2, omega0_over_omega=2e4, omega=1.0, n0=n0, m0=0)
    tr = trace_freespace(p)
    print(f"n0={n0:3d}: sz(5)={tr.sz[1000]:+.5f}  sz(20)={tr.sz[-1]:+.5f}  "
          f"Gamma(20)/20={tr.big_gamma[-1] / 20:.5f}")

print("unmodulated sz(20) =", np.exp(-40.0) - 0.5)
