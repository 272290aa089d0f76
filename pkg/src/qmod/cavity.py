"""Frequency-modulated emitter in a broadband cavity.

The decay rate and frequency shift are double sideband sums

    gamma(t) = sum_{m,n} gbar_n J_m(chi) J_n(chi) cos[(n - m)(omega t + phi)]
    Omega(t) = sum_{m,n} dbar_n J_m(chi) J_n(chi) cos[(n - m)(omega t + phi)]

with Lorentzian channel weights ``gbar_n``, ``dbar_n``.  Grouping the terms
by lag ``k = n - m`` turns both into short cosine series, which also gives
the integrated exponent ``Gamma(t)`` in closed form.  The inverted
population of an initially excited emitter is ``exp(-2 Gamma(t)) - 1/2``.

Everything is in units of ``kappa``.
"""

import math

import numpy as np

from .bessel import bessel_j, bessel_j_row
from .params import CavityParams, ConvergenceError, ParameterError, Truncation, as_truncation

__all__ = [
    "CavityParams",
    "Truncation",
    "coeff_gamma_bar",
    "coeff_delta_bar",
    "LagSeries",
    "lag_series",
    "gamma_t",
    "omega_t",
    "big_gamma_closed",
    "population",
    "gamma_no_coherence",
    "gamma_n1_analytic",
    "omega_n1_analytic",
    "choose_truncation",
    "TRUNCATION_GRID_POINTS",
    "MAX_AUTO_NBAR",
]

TRUNCATION_GRID_POINTS = 64
MAX_AUTO_NBAR = 4096


def coeff_gamma_bar(p, n):
    """Channel decay weight ``gamma0 kappa^2 / (kappa^2 + (n omega - delta_c)^2)``.

    ``n`` may be an integer or an integer array.
    """
    detuning = np.asarray(n) * p.omega - p.delta_c
    out = p.gamma0 * p.kappa**2 / (p.kappa**2 + detuning**2)
    return float(out) if np.ndim(out) == 0 else out


def coeff_delta_bar(p, n):
    """Channel shift weight ``(n omega - delta_c) g^2 / (kappa^2 + (n omega - delta_c)^2)``."""
    detuning = np.asarray(n) * p.omega - p.delta_c
    out = detuning * p.g**2 / (p.kappa**2 + detuning**2)
    return float(out) if np.ndim(out) == 0 else out


class LagSeries:
    """Cosine series ``c0 + sum_{k>=1} s_k cos(k theta)`` in ``theta = omega t + phi``.

    ``s_k`` collects every ``(m, n)`` pair with ``|n - m| = k``.  Evaluation
    sums over ``k`` in ascending order for each time independently, so a
    sample does not depend on which other samples are evaluated with it.
    """

    def __init__(self, c0, s, omega, phi):
        self.c0 = float(c0)
        self.s = np.ascontiguousarray(s, dtype=float)
        self.omega = float(omega)
        self.phi = float(phi)
        self.k = np.arange(1, len(self.s) + 1, dtype=float)

    @staticmethod
    def _reduce(terms):
        return sequential_sum(terms)

    def rate(self, t):
        t = np.asarray(t, dtype=float)
        theta = self.omega * t.reshape(-1) + self.phi
        terms = self.s[:, None] * np.cos(self.k[:, None] * theta[None, :])
        out = self.c0 + self._reduce(terms)
        return out.reshape(t.shape)

    def integral(self, t):
        """``int_0^t rate(tau) dtau``, exactly."""
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1)
        theta = self.omega * flat + self.phi
        kw = self.k * self.omega
        terms = (self.s / kw)[:, None] * (
            np.sin(self.k[:, None] * theta[None, :]) - np.sin(self.k * self.phi)[:, None]
        )
        out = self.c0 * flat + self._reduce(terms)
        return out.reshape(t.shape)


def sequential_sum(terms):
    """Sum the rows of ``terms`` strictly in order.

    ``ndarray.sum(axis=0)`` switches to pairwise summation for a single
    column, which would make a sample depend on the batch it came in.
    """
    out = np.zeros(terms.shape[1:], dtype=terms.dtype)
    for row in terms:
        out += row
    return out


def _lag_coefficients(a, b):
    """``c_k = sum_n a_n b_{n-k}`` for ``k = -(2N)..2N``."""
    return np.correlate(a, b, "full")


def lag_series(p, trunc, coeffs="gamma"):
    """Build the lag-grouped series for the decay (``"gamma"``) or shift (``"delta"``) sum.

    ``coeffs`` may also be an explicit array of channel weights indexed
    ``-n_bar..n_bar``.
    """
    nb = as_truncation(trunc).n_bar
    n = np.arange(-nb, nb + 1)
    if isinstance(coeffs, str):
        if coeffs == "gamma":
            weights = coeff_gamma_bar(p, n)
        elif coeffs == "delta":
            weights = coeff_delta_bar(p, n)
        else:
            raise ValueError(f"unknown coefficient family {coeffs!r}")
    else:
        weights = np.asarray(coeffs, dtype=float)
        if weights.shape != n.shape:
            raise ValueError(f"need {len(n)} channel weights, got shape {weights.shape}")
    weights = np.atleast_1d(weights)
    jrow = bessel_j_row(nb, p.chi)
    lags = _lag_coefficients(weights * jrow, jrow)
    centre = len(lags) // 2
    # cos is even: fold lag -k onto +k
    s = lags[centre + 1:] + lags[:centre][::-1]
    return LagSeries(lags[centre], s, p.omega, p.phi)


def _scalar(x, t):
    return float(x) if np.ndim(t) == 0 else x


def _check_time(t):
    if np.any(np.asarray(t) < 0):
        raise ParameterError("t", "must be >= 0")


def gamma_t(p, trunc, t, coeffs=None):
    """Time-dependent decay rate ``gamma(t)``."""
    _check_time(t)
    series = lag_series(p, trunc, "gamma" if coeffs is None else coeffs)
    return _scalar(series.rate(t), t)


def omega_t(p, trunc, t):
    """Time-dependent frequency shift ``Omega(t)``."""
    _check_time(t)
    return _scalar(lag_series(p, trunc, "delta").rate(t), t)


def big_gamma_closed(p, trunc, t, coeffs=None):
    """Integrated decay exponent ``Gamma(t) = int_0^t gamma``, in closed form."""
    _check_time(t)
    if p.omega <= 0:
        raise ParameterError("omega", "must be > 0")
    series = lag_series(p, trunc, "gamma" if coeffs is None else coeffs)
    return _scalar(series.integral(t), t)


def population(p, trunc, t):
    """Inversion ``<S_z(t)> = exp(-2 Gamma(t)) - 1/2`` of an initially excited emitter."""
    return _scalar(np.exp(-2.0 * np.asarray(big_gamma_closed(p, trunc, t))) - 0.5, t)


def gamma_no_coherence(p, trunc):
    """Diagonal (``n = m``) part of the rate sum: ``sum_n gbar_n J_n(chi)^2``.

    Dropping the cross terms removes interference between decay channels;
    the result no longer depends on time.
    """
    nb = as_truncation(trunc).n_bar
    n = np.arange(-nb, nb + 1)
    jrow = bessel_j_row(nb, p.chi)
    return math.fsum(np.atleast_1d(coeff_gamma_bar(p, n)) * jrow**2)


def _require_resonance(p):
    if p.delta_c != 0:
        raise ParameterError("delta_c", "the one-sideband closed forms hold only at delta_c = 0")


def gamma_n1_analytic(p, t):
    """Decay rate with sidebands ``|n| <= 1`` at resonance, written out by hand."""
    _require_resonance(p)
    j0 = bessel_j(0, p.chi)
    j1 = bessel_j(1, p.chi)
    jm1 = bessel_j(-1, p.chi)
    k2 = p.kappa**2
    theta = p.omega * np.asarray(t, dtype=float) + p.phi
    side = k2 * (j1 * j1 + jm1 * jm1 + 2.0 * jm1 * j1 * np.cos(2.0 * theta)) / (k2 + p.omega**2)
    return _scalar(p.gamma0 * (j0 * j0 + side), t)


def omega_n1_analytic(p, t):
    """Frequency shift with sidebands ``|n| <= 1`` at resonance.

    ``Omega(t) = g^2 omega/(kappa^2 + omega^2) J_0 (J_1 - J_{-1}) cos(omega t + phi)``.
    """
    _require_resonance(p)
    j0 = bessel_j(0, p.chi)
    j1 = bessel_j(1, p.chi)
    jm1 = bessel_j(-1, p.chi)
    amp = p.g**2 * p.omega / (p.kappa**2 + p.omega**2)
    theta = p.omega * np.asarray(t, dtype=float) + p.phi
    return _scalar(amp * j0 * (j1 - jm1) * np.cos(theta), t)


def choose_truncation(p, tol=1e-8, t_max=40.0):
    """Smallest ``n_bar`` on the schedule ``ceil(chi)+8, x2, x4, ...`` that converges.

    Convergence means ``max |Gamma_{n}(t) - Gamma_{2n}(t)| <= tol`` on a
    64-point grid over ``[0, t_max]``.  Raises :class:`ConvergenceError`
    once ``n_bar`` would exceed 4096.
    """
    if not tol > 0:
        raise ParameterError("tol", "must be > 0")
    if not t_max > 0:
        raise ParameterError("t_max", "must be > 0")
    grid = np.linspace(0.0, t_max, TRUNCATION_GRID_POINTS)
    n_bar = int(math.ceil(p.chi)) + 8
    current = lag_series(p, n_bar).integral(grid)
    while n_bar <= MAX_AUTO_NBAR:
        doubled = lag_series(p, 2 * n_bar).integral(grid)
        delta = float(np.max(np.abs(current - doubled)))
        if delta <= tol:
            return Truncation(n_bar, auto=True, achieved_tol=delta)
        n_bar *= 2
        current = doubled
    raise ConvergenceError(
        f"no convergence to tol={tol:g} by n_bar={MAX_AUTO_NBAR} (chi={p.chi}, omega={p.omega})"
    )
