"""Independent reference engines for checking the fast paths.

* :func:`integrate` -- adaptive 7/15-point Gauss-Kronrod quadrature.
* :func:`bessel_integral_oracle` -- Bessel's integral for ``J_n(x)``.
* :func:`brute_sum_gamma` -- literal nested loops over the sideband sums.

Nothing here uses the lag-grouped summation of :mod:`qmod.cavity` or
:mod:`qmod.freespace`; only the parameter records and the scalar
:func:`qmod.bessel.bessel_j` are shared.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j
from .params import CavityParams, FreeSpaceParams, ParameterError, as_truncation

__all__ = [
    "QuadratureError",
    "QuadratureSpec",
    "integrate",
    "bessel_integral_oracle",
    "brute_sum_gamma",
    "BRUTE_CAVITY_MAX",
    "BRUTE_FREESPACE_MAX",
]

BRUTE_CAVITY_MAX = 64
BRUTE_FREESPACE_MAX = 8

# QUADPACK qk15 abscissae / weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit its recursion bound before converging."""


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ParameterError("abs_tol", "must be > 0")
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol", "must be > 0")
        if not 0 <= self.max_depth <= 60:
            raise ParameterError("max_depth", "must lie in [0, 60]")


def _kronrod(f, a, b, vectorized):
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = centre + half * _NODES
    if vectorized:
        y = np.asarray(f(x), dtype=float)
    else:
        y = np.array([f(float(xi)) for xi in x])
    if not np.all(np.isfinite(y)):
        raise QuadratureError(f"integrand not finite on [{a}, {b}]")
    k15 = half * np.dot(_KRONROD_W, y)
    g7 = half * np.dot(_GAUSS_W, y)
    return k15, abs(k15 - g7)


def integrate(f, a, b, spec=None, vectorized=False):
    """Integrate ``f`` over ``[a, b]`` by adaptive Gauss-Kronrod bisection.

    Each panel is accepted once ``|K15 - G7|`` is below its share (by
    length) of ``max(abs_tol, rel_tol*|estimate|)``.  Returns
    ``(value, err_estimate)``.  Panels are processed depth-first, left to
    right, so the result is deterministic.

    With ``vectorized=True`` ``f`` is called once per panel on an array of
    the 15 nodes.
    """
    spec = spec or QuadratureSpec()
    a = float(a)
    b = float(b)
    if b < a:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    length = b - a

    whole, whole_err = _kronrod(f, a, b, vectorized)
    # rough global scale for the relative criterion, refreshed as panels close
    scale = abs(whole)
    stack = [(a, b, whole, whole_err, 0)]
    total = 0.0
    total_err = 0.0
    while stack:
        lo, hi, val, err, depth = stack.pop()
        target = max(spec.abs_tol, spec.rel_tol * scale) * (hi - lo) / length
        if err <= target:
            total += val
            total_err += err
            continue
        if depth >= spec.max_depth:
            raise QuadratureError(
                f"no convergence on [{lo}, {hi}] at depth {depth} (err {err:.3g} > {target:.3g})"
            )
        mid = 0.5 * (lo + hi)
        left = _kronrod(f, lo, mid, vectorized)
        right = _kronrod(f, mid, hi, vectorized)
        scale = max(scale, abs(total + left[0] + right[0]))
        stack.append((mid, hi, right[0], right[1], depth + 1))
        stack.append((lo, mid, left[0], left[1], depth + 1))
    return total, total_err


def bessel_integral_oracle(n, x, spec=None):
    """``J_n(x) = (1/pi) * int_0^pi cos(n*tau - x*sin(tau)) dtau``."""
    x = float(x)
    if x < 0 or not math.isfinite(x):
        raise ValueError(f"x must be finite and >= 0, got {x}")
    n = int(n)
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12, max_depth=40)
    val, _ = integrate(lambda tau: np.cos(n * tau - x * np.sin(tau)), 0.0, math.pi, spec,
                       vectorized=True)
    return val / math.pi


def _brute_cavity(p, trunc, t, symmetrize, coeffs):
    nb = as_truncation(trunc).n_bar
    if nb > BRUTE_CAVITY_MAX:
        raise ValueError(f"brute-force cavity sum limited to n_bar <= {BRUTE_CAVITY_MAX}")
    gamma0 = p.g**2 / p.kappa
    jv = {k: bessel_j(k, p.chi) for k in range(-nb, nb + 1)}

    def coef(n):
        if coeffs is not None:
            return coeffs[n + nb]
        return gamma0 * p.kappa**2 / (p.kappa**2 + (n * p.omega - p.delta_c) ** 2)

    theta = p.omega * t + p.phi
    total = 0.0
    for m in range(-nb, nb + 1):
        for n in range(-nb, nb + 1):
            c = 0.5 * (coef(n) + coef(m)) if symmetrize else coef(n)
            total += c * jv[m] * jv[n] * math.cos((n - m) * theta)
    return total


def _brute_freespace(p, t, complex_result, coeff):
    n0, m0 = p.n0, p.m0
    if n0 > BRUTE_FREESPACE_MAX or m0 > BRUTE_FREESPACE_MAX:
        raise ValueError(f"brute-force free-space sum limited to n0, m0 <= {BRUTE_FREESPACE_MAX}")
    jn = {k: bessel_j(k, p.chi) for k in range(-n0, n0 + 1)}
    jm = {k: bessel_j(k, p.chi_prime) for k in range(-m0, m0 + 1)}
    inv_ratio = 1.0 / (p.omega0_over_omega * p.shift_factor)
    total = 0j
    for n in range(-n0, n0 + 1):
        for n_ in range(-n0, n0 + 1):
            for m in range(-m0, m0 + 1):
                for m_ in range(-m0, m0 + 1):
                    if coeff is None:
                        rate = p.gamma_fs * (1 + 2 * n_ * inv_ratio + 4 * m_ * inv_ratio) ** 3
                    else:
                        rate = coeff
                    phase = ((n - n_) * (2 * p.omega * t + p.phi)
                             + (m - m_) * (4 * p.omega * t + 2 * p.phi))
                    total += jn[n] * jn[n_] * jm[m] * jm[m_] * rate * complex(
                        math.cos(phase), -math.sin(phase))
    return total if complex_result else total.real


def brute_sum_gamma(p, t, trunc=None, *, symmetrize=False, coeffs=None, complex_result=False):
    """Reference decay rate by literal loops, no algebraic shortcuts.

    Cavity: ``sum_{m,n} c_{mn} J_m J_n cos((n-m)(omega t + phi))`` with
    ``c_{mn} = gbar_n`` or, with ``symmetrize``, ``(gbar_n + gbar_m)/2``.
    ``coeffs`` replaces the Lorentzian weights (array indexed ``-n_bar..n_bar``).

    Free space: the four-index sum with ``gamma_{0 n' m'}``; ``coeffs`` may
    be a scalar replacing every ``gamma_{0 n' m'}``.  ``complex_result``
    returns the full complex sum instead of its real part.
    """
    if isinstance(p, CavityParams):
        if trunc is None:
            raise ValueError("cavity brute-force sum needs a truncation")
        return _brute_cavity(p, trunc, float(t), symmetrize, coeffs)
    if isinstance(p, FreeSpaceParams):
        return _brute_freespace(p, float(t), complex_result, coeffs)
    raise TypeError(f"unsupported parameter record {type(p).__name__}")
