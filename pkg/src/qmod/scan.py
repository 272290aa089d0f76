"""Figure-backing datasets: time traces, modulation-depth sweeps, convergence tables.

Grid samples and sweep points are independent work units.  They are
cut into fixed-size chunks that a thread pool may evaluate in any order;
results are assembled in input order and every sample is computed the
same way whatever the worker count, so the output is bit-identical for
``QMOD_THREADS=1`` and ``QMOD_THREADS=8``.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace, asdict

import numpy as np

from .cavity import choose_truncation, gamma_no_coherence, lag_series
from .freespace import big_gamma_f_closed, gamma_f
from .params import ConvergenceError, ParameterError, Truncation, as_truncation

__all__ = [
    "RateTrace",
    "SweepResult",
    "ConvergenceRow",
    "worker_count",
    "time_grid",
    "trace_cavity",
    "trace_no_coherence",
    "trace_freespace",
    "sweep_chi",
    "convergence_report",
]

CHUNK = 512


def worker_count():
    """Worker cap from ``QMOD_THREADS`` (default: CPU count)."""
    raw = os.environ.get("QMOD_THREADS")
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError("QMOD_THREADS", f"must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParameterError("QMOD_THREADS", "must be >= 1")
    return value


def _map_ordered(func, items, threads=None):
    threads = worker_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _chunked(func, t, threads=None):
    pieces = [t[i:i + CHUNK] for i in range(0, len(t), CHUNK)]
    return np.concatenate(_map_ordered(func, pieces, threads)) if pieces else np.zeros(0)


def time_grid(t_max, dt):
    """Uniform grid ``0, dt, 2 dt, ...`` up to ``t_max`` (inclusive when commensurate)."""
    if not t_max > 0:
        raise ParameterError("t_max", "must be > 0")
    if not dt > 0:
        raise ParameterError("dt", "must be > 0")
    steps = int(math.floor(t_max / dt + 1e-9))
    return dt * np.arange(steps + 1)


@dataclass
class RateTrace:
    """Sampled decay rate, shift, integrated exponent and inversion."""

    t: np.ndarray
    gamma: np.ndarray
    omega_shift: np.ndarray
    big_gamma: np.ndarray
    sz: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def negative_rate(self):
        """True when some sampled ``gamma(t)`` is below zero.

        The double sum is not manifestly positive; this is a diagnostic only.
        """
        return bool(np.any(self.gamma < 0))

    def columns(self):
        return {
            "t": self.t,
            "gamma": self.gamma,
            "omega_shift": self.omega_shift,
            "big_gamma": self.big_gamma,
            "sz": self.sz,
        }


def _resolve_truncation(p, trunc, tol, t_max):
    if trunc is None:
        return choose_truncation(p, tol, t_max)
    return as_truncation(trunc)


def trace_cavity(p, t_max=40.0, dt=0.01, trunc=None, tol=1e-8, threads=None):
    """Cavity trace on a uniform grid; auto-truncation unless ``trunc`` is given."""
    t = time_grid(t_max, dt)
    trunc = _resolve_truncation(p, trunc, tol, t_max)
    rate = lag_series(p, trunc, "gamma")
    shift = lag_series(p, trunc, "delta")
    gamma = _chunked(rate.rate, t, threads)
    omega_shift = _chunked(shift.rate, t, threads)
    big_gamma = _chunked(rate.integral, t, threads)
    sz = np.exp(-2.0 * big_gamma) - 0.5
    meta = {"model": "cavity", "params": asdict(p), "n_bar": trunc.n_bar,
            "auto": trunc.auto, "achieved_tol": trunc.achieved_tol}
    return RateTrace(t, gamma, omega_shift, big_gamma, sz, meta)


def trace_no_coherence(p, t_max=40.0, dt=0.01, trunc=None, tol=1e-8):
    """Trace with the constant diagonal-only rate, same truncation rule as :func:`trace_cavity`."""
    t = time_grid(t_max, dt)
    trunc = _resolve_truncation(p, trunc, tol, t_max)
    rate = gamma_no_coherence(p, trunc)
    gamma = np.full_like(t, rate)
    big_gamma = rate * t
    sz = np.exp(-2.0 * big_gamma) - 0.5
    meta = {"model": "cavity-no-coherence", "params": asdict(p), "n_bar": trunc.n_bar,
            "auto": trunc.auto, "achieved_tol": trunc.achieved_tol}
    return RateTrace(t, gamma, np.zeros_like(t), big_gamma, sz, meta)


def trace_freespace(p, t_max=20.0, dt=0.005, threads=None):
    """Free-space trace; the principal-value shift column is identically zero."""
    t = time_grid(t_max, dt)
    gamma = _chunked(lambda x: gamma_f(p, x), t, threads)
    big_gamma = _chunked(lambda x: big_gamma_f_closed(p, x), t, threads)
    sz = np.exp(-2.0 * big_gamma) - 0.5
    params = {k: v for k, v in asdict(p).items() if not k.startswith("_")}
    meta = {"model": "freespace", "params": params, "chi": p.chi, "chi_prime": p.chi_prime,
            "n0": p.n0, "m0": p.m0}
    return RateTrace(t, gamma, np.zeros_like(t), big_gamma, sz, meta)


@dataclass
class SweepResult:
    """One observable scanned over one parameter axis, one row per variant."""

    axis_name: str
    axis_values: np.ndarray
    observable_name: str
    variant_names: list
    values: np.ndarray
    reasons: list
    n_bars: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        axis = np.asarray(self.axis_values, dtype=float)
        if axis.ndim != 1 or np.any(np.diff(axis) <= 0):
            raise ParameterError(self.axis_name, "axis values must be strictly increasing")
        if self.values.shape != (len(self.variant_names), len(axis)):
            raise ValueError("values must have one row per variant and one column per axis point")

    @property
    def valid(self):
        return np.array([r == "" for r in self.reasons])


_OBSERVABLES = ("population", "shift")


def sweep_chi(p_base, chi_values, at_time, observable="population",
              phis=(0.0, math.pi / 2), tol=1e-8, trunc=None, threads=None):
    """Evaluate ``observable`` at ``at_time`` for each modulation index.

    Each point gets its own auto-truncation (converged up to ``at_time``).
    A point whose truncation search fails is kept as NaN with the reason
    recorded, so the axis stays aligned.
    """
    if observable not in _OBSERVABLES:
        raise ParameterError("observable", f"must be one of {_OBSERVABLES}, got {observable!r}")
    if at_time < 0:
        raise ParameterError("at_time", "must be >= 0")
    chi_values = np.asarray(chi_values, dtype=float)
    if np.any(chi_values < 0):
        raise ParameterError("chi", "sweep values must be >= 0")
    horizon = at_time if at_time > 0 else 1.0

    def point(chi):
        row = []
        n_bar = -1
        reason = ""
        for phi in phis:
            p = replace(p_base, chi=float(chi), phi=float(phi))
            try:
                tr = _resolve_truncation(p, trunc, tol, horizon)
            except ConvergenceError as exc:
                row.append(math.nan)
                reason = f"convergence: {exc}"
                continue
            n_bar = max(n_bar, tr.n_bar)
            series = lag_series(p, tr, "gamma" if observable == "population" else "delta")
            if observable == "population":
                row.append(math.exp(-2.0 * float(series.integral(at_time))) - 0.5)
            else:
                row.append(float(series.rate(at_time)))
        return row, n_bar, reason

    results = _map_ordered(point, list(chi_values), threads)
    values = np.array([r[0] for r in results], dtype=float).T.reshape(len(phis), len(chi_values))
    names = [f"phi={phi:.17g}" for phi in phis]
    meta = {"params": asdict(p_base), "at_time": at_time, "tol": tol, "phis": list(phis)}
    return SweepResult("chi", chi_values, observable, names, values,
                       [r[2] for r in results], np.array([r[1] for r in results]), meta)


@dataclass(frozen=True)
class ConvergenceRow:
    n_bar: int
    big_gamma_end: float
    max_delta: float


def convergence_report(p, t_max, n_bar_list):
    """Truncation study: ``Gamma(t_max)`` per ``n_bar`` and its grid change vs the next row.

    The change is the max over the 64-point truncation grid.  The last row
    is compared against twice its own ``n_bar``.
    """
    n_bar_list = [int(n) for n in n_bar_list]
    if not n_bar_list:
        raise ParameterError("nbar_list", "must be non-empty")
    if any(b <= a for a, b in zip(n_bar_list, n_bar_list[1:])):
        raise ParameterError("nbar_list", "must be strictly ascending")
    if not t_max > 0:
        raise ParameterError("t_max", "must be > 0")
    grid = np.linspace(0.0, t_max, 64)
    refs = n_bar_list + [2 * n_bar_list[-1]]
    curves = [lag_series(p, Truncation(n)).integral(grid) for n in refs]
    rows = []
    for i, n in enumerate(n_bar_list):
        delta = float(np.max(np.abs(curves[i] - curves[i + 1])))
        rows.append(ConvergenceRow(n, float(curves[i][-1]), delta))
    return rows
