"""Spontaneous decay of a two-level emitter with a periodically modulated transition frequency.

Broadband-cavity and free-space models, built from Bessel sideband sums.
"""

from .bessel import bessel_asymptotic, bessel_j, bessel_j_row
from .cavity import (
    big_gamma_closed,
    choose_truncation,
    coeff_delta_bar,
    coeff_gamma_bar,
    gamma_n1_analytic,
    gamma_no_coherence,
    gamma_t,
    omega_n1_analytic,
    omega_t,
    population,
)
from .freespace import big_gamma_f_closed, gamma_f, population_f
from .params import (
    CavityParams,
    ConvergenceError,
    FreeSpaceParams,
    ParameterError,
    Truncation,
    map_drive,
)
from .quadrature import QuadratureSpec, bessel_integral_oracle, brute_sum_gamma, integrate
from .scan import (
    RateTrace,
    SweepResult,
    convergence_report,
    sweep_chi,
    trace_cavity,
    trace_freespace,
    trace_no_coherence,
)

__version__ = "0.1.0"
