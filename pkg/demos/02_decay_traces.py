# Decay traces in a broadband cavity
#
# With g = 0.3, kappa = 1, omega = 0.12 and zero detuning the unmodulated
# emitter decays at 2 g^2/kappa = 0.18. Modulating the transition with a
# deep index chi = 50 opens many decay channels whose amplitudes interfere,
# and the population can get stuck on a plateau.

import math
from dataclasses import replace

import numpy as np

from qmod import CavityParams, trace_cavity, trace_no_coherence

base = CavityParams(g=0.3, kappa=1.0, delta_c=0.0, omega=0.12)

# In[1]: unmodulated reference

plain = trace_cavity(replace(base, chi=0.0))
print("chi=0, sz(30) =", plain.sz[3000], " exp(-5.4)-0.5 =", math.exp(-5.4) - 0.5)

# In[2]: chi = 50 for two phases of the modulation

traces = {}
for label, phi in (("phi=0", 0.0), ("phi=pi/2", math.pi / 2)):
    traces[label] = trace_cavity(replace(base, chi=50.0, phi=phi))
    tr = traces[label]
    print(f"{label:9s} n_bar={tr.meta['n_bar']} sz(10)={tr.sz[1000]:+.4f} "
          f"sz(30)={tr.sz[3000]:+.4f} min gamma={tr.gamma.min():+.4f}")

# In[3]: drop the interference (n != m) terms

nc = trace_no_coherence(replace(base, chi=50.0))
print("no-coherence rate:", nc.gamma[0], " sz(30) =", nc.sz[3000])

# The rate itself oscillates with the modulation period 2 pi / omega.

tr = traces["phi=0"]
period = 2 * math.pi / base.omega
print(f"period = {period:.2f}; gamma over the first 40 units of it:")
for t in np.arange(0.0, min(period, 40.0) + 1e-9, 5.0):
    i = int(round(t / 0.01))
    print(f"  t={t:5.1f}  gamma={tr.gamma[i]:+.5f}  Omega={tr.omega_shift[i]:+.5f}")
