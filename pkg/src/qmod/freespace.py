"""Free-space emitter whose transition is modulated by a weak classical drive.

The drive produces two-photon (index ``chi``, frequency ``2 omega``) and
four-photon (index ``chi'``, frequency ``4 omega``) modulation.  The decay
coefficient is the real part of

    sum_{n,n'} sum_{m,m'} J_n(chi) J_n'(chi) J_m(chi') J_m'(chi')
        gamma_{0 n' m'} exp(-i (n - n') theta) exp(-i (m - m') 2 theta)

with ``theta = 2 omega t + phi`` and
``gamma_{0 n' m'} = gamma (1 + (2n' + 4m') omega/omega_0)^3``.  The
principal-value shift is not evaluated (taken as zero).

Collapsing ``(n, m)`` into ``q = n + 2m`` leaves a single lag sum in
``k = q - q'``, which integrates in closed form like the cavity case.
Times are in units of ``1/gamma``.
"""

import numpy as np

from .bessel import bessel_j_row
from .cavity import sequential_sum
from .params import FreeSpaceParams, ParameterError, map_drive

__all__ = [
    "FreeSpaceParams",
    "map_drive",
    "gamma_0nm",
    "lag_coefficients_f",
    "gamma_f",
    "gamma_f_complex",
    "big_gamma_f_closed",
    "population_f",
]


def gamma_0nm(p, n_prime, m_prime):
    """Sideband decay ``gamma (1 + 2n' w/w0 + 4m' w/w0)^3``.

    ``w0`` is the drive-shifted transition frequency ``w0 (1 - rho^2/4)``.
    """
    inv_ratio = 1.0 / (p.omega0_over_omega * p.shift_factor)
    return p.gamma_fs * (1.0 + 2.0 * np.asarray(n_prime) * inv_ratio
                         + 4.0 * np.asarray(m_prime) * inv_ratio) ** 3


def _combined(p, weighted, flat=False):
    n0, m0 = p.n0, p.m0
    jn = bessel_j_row(n0, p.chi)
    jm = bessel_j_row(m0, p.chi_prime)
    n = np.arange(-n0, n0 + 1)
    out = np.zeros(2 * (n0 + 2 * m0) + 1)
    offset = n0 + 2 * m0
    for i, m in enumerate(range(-m0, m0 + 1)):
        amp = jn * jm[i]
        if weighted:
            amp = amp * (p.gamma_fs if flat else gamma_0nm(p, n, m))
        out[n + 2 * m + offset] += amp
    return out


def lag_coefficients_f(p, flat=False):
    """Lag weights ``C_k`` for ``k = -K..K``, ``K = 2 (n0 + 2 m0)``.

    The full complex sum equals ``sum_k C_k exp(-i k theta)``.  With
    ``flat`` every sideband decays at the bare rate ``gamma``.
    """
    plain = _combined(p, weighted=False)
    weighted = _combined(p, weighted=True, flat=flat)
    return np.correlate(plain, weighted, "full")


def _theta(p, t):
    return 2.0 * p.omega * np.asarray(t, dtype=float).reshape(-1) + p.phi


def _check_time(t):
    if np.any(np.asarray(t) < 0):
        raise ParameterError("t", "must be >= 0")


def gamma_f_complex(p, t, flat=False):
    """Complex coefficient sum before taking the real part."""
    _check_time(t)
    coeffs = lag_coefficients_f(p, flat)
    size = len(coeffs) // 2
    k = np.arange(-size, size + 1, dtype=float)
    theta = _theta(p, t)
    out = sequential_sum(coeffs[:, None] * np.exp(-1j * k[:, None] * theta[None, :]))
    out = out.reshape(np.shape(t))
    return complex(out) if np.ndim(t) == 0 else out


def _folded(p, flat=False):
    coeffs = lag_coefficients_f(p, flat)
    centre = len(coeffs) // 2
    s = coeffs[centre + 1:] + coeffs[:centre][::-1]
    return coeffs[centre], s, np.arange(1, len(s) + 1, dtype=float)


def gamma_f(p, t, flat=False):
    """Free-space decay rate, the real part of the four-index sum."""
    _check_time(t)
    c0, s, k = _folded(p, flat)
    theta = _theta(p, t)
    out = c0 + sequential_sum(s[:, None] * np.cos(k[:, None] * theta[None, :]))
    out = out.reshape(np.shape(t))
    return float(out) if np.ndim(t) == 0 else out


def big_gamma_f_closed(p, t):
    """``Gamma_f(t) = int_0^t gamma_f``, exactly."""
    _check_time(t)
    if p.omega <= 0:
        raise ParameterError("omega", "must be > 0")
    c0, s, k = _folded(p)
    flat = np.asarray(t, dtype=float).reshape(-1)
    theta = _theta(p, t)
    terms = (s / (2.0 * p.omega * k))[:, None] * (
        np.sin(k[:, None] * theta[None, :]) - np.sin(k * p.phi)[:, None]
    )
    out = (c0 * flat + sequential_sum(terms)).reshape(np.shape(t))
    return float(out) if np.ndim(t) == 0 else out


def population_f(p, t):
    """Inversion ``exp(-2 Gamma_f(t)) - 1/2`` of an initially excited emitter."""
    out = np.exp(-2.0 * np.asarray(big_gamma_f_closed(p, t))) - 0.5
    return float(out) if np.ndim(t) == 0 else out
