"""Command-line front end.

    qmod simulate --model cavity --chi 50 --t-max 40 --dt 0.01 -o fig2.csv
    qmod sweep --axis chi --from 0 --to 60 --steps 240 --at-time 30 --observable population
    qmod figure fig2
    qmod converge --chi 50 --nbar-list 50,60,70,80

Exit status: 0 success, 2 invalid input, 3 truncation did not converge.
"""

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .params import CavityParams, ConvergenceError, FreeSpaceParams, ParameterError
from .output import write_table
from .scan import (
    convergence_report,
    sweep_chi,
    trace_cavity,
    trace_freespace,
    trace_no_coherence,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CONVERGENCE = 3

FIGURES = ("fig2", "fig2g", "fig3", "fig4", "fig5a", "fig5b")

_MODEL_DEFAULTS = {
    "cavity": {"omega": 0.12, "t_max": 40.0, "dt": 0.01},
    "freespace": {"omega": 1.0, "t_max": 20.0, "dt": 0.005},
}


@dataclass(frozen=True)
class RunConfig:
    """Merged run settings.  ``None`` means "model default" (or auto truncation for ``nbar``)."""

    model: str = "cavity"
    g: float = 0.3
    kappa: float = 1.0
    delta_c: float = 0.0
    omega: Optional[float] = None
    chi: float = 0.0
    phi: float = 0.0
    rho: float = 0.2
    omega0_over_omega: float = 2e4
    gamma: float = 1.0
    n0: int = 1
    m0: int = 0
    drop_four_photon: bool = False
    t_max: Optional[float] = None
    dt: Optional[float] = None
    nbar: Optional[int] = None
    tol: float = 1e-8
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.model not in _MODEL_DEFAULTS:
            raise ParameterError("model", f"must be 'cavity' or 'freespace', got {self.model!r}")
        if self.format not in ("csv", "json"):
            raise ParameterError("format", f"must be 'csv' or 'json', got {self.format!r}")
        if self.nbar is not None and self.nbar < 0:
            raise ParameterError("nbar", "must be >= 0")
        if not self.tol > 0:
            raise ParameterError("tol", "must be > 0")

    def resolved(self, name):
        value = getattr(self, name)
        return _MODEL_DEFAULTS[self.model][name] if value is None else value

    def cavity_params(self):
        return CavityParams(g=self.g, kappa=self.kappa, delta_c=self.delta_c,
                            omega=self.resolved("omega"), chi=self.chi, phi=self.phi)

    def freespace_params(self):
        return FreeSpaceParams(rho=self.rho, omega0_over_omega=self.omega0_over_omega,
                               gamma_fs=self.gamma, omega=self.resolved("omega"),
                               n0=self.n0, m0=self.m0, phi=self.phi,
                               drop_four_photon=self.drop_four_photon)

    def output_path(self, stem):
        return self.output or f"{stem}.{self.format}"

    def dumps(self):
        lines = ["# qmod run configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                text = ""
            elif isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            lines.append(f"{f.name}={text}")
        return "\n".join(lines) + "\n"


_FIELD_TYPES = {
    "model": str, "format": str, "output": str,
    "n0": int, "m0": int, "nbar": int,
    "drop_four_photon": bool,
}


def _convert(name, text):
    kind = _FIELD_TYPES.get(name, float)
    text = text.strip()
    if text == "":
        return None
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(text)
            return lowered in ("true", "1", "yes")
        if kind is int:
            return int(text)
        if kind is float:
            value = float(text)
            if not math.isfinite(value):
                raise ValueError(text)
            return value
        return text
    except ValueError:
        raise ParameterError(name, f"cannot parse {text!r} as {kind.__name__}") from None


def parse_config_text(text):
    """Parse flat ``key=value`` lines (``#`` comments) into a dict of typed values."""
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError("config", f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in known:
            raise ParameterError(key, f"unknown configuration key (line {lineno})")
        values[key] = _convert(key, value)
    return values


def load_config(text, overrides=None):
    values = parse_config_text(text)
    values.update(overrides or {})
    return build_config(values)


def build_config(values):
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ParameterError("config", str(exc)) from None


def _add_model_flags(parser):
    g = parser.add_argument_group("model parameters (kappa units for cavity, gamma units for free space)")
    g.add_argument("--config", help="key=value configuration file; flags override it")
    g.add_argument("--dump-config", metavar="PATH",
                   help="write the merged configuration to PATH ('-' for stdout) and exit")
    g.add_argument("--model", choices=tuple(_MODEL_DEFAULTS))
    for flag, name in [("--g", "g"), ("--kappa", "kappa"), ("--delta-c", "delta_c"),
                       ("--omega", "omega"), ("--chi", "chi"), ("--phi", "phi"),
                       ("--rho", "rho"), ("--omega0-over-omega", "omega0_over_omega"),
                       ("--gamma", "gamma"), ("--t-max", "t_max"), ("--dt", "dt"),
                       ("--tol", "tol")]:
        g.add_argument(flag, dest=name, type=str, metavar="X")
    g.add_argument("--n0", dest="n0", type=str, metavar="N")
    g.add_argument("--m0", dest="m0", type=str, metavar="N")
    g.add_argument("--nbar", dest="nbar", type=str, metavar="N",
                   help="fixed truncation (default: converge automatically)")
    g.add_argument("--drop-four-photon", dest="drop_four_photon", action="store_const",
                   const="true")
    g.add_argument("-o", "--output", dest="output")
    g.add_argument("--format", dest="format", choices=("csv", "json"))


def _config_from_args(args):
    overrides = {}
    for f in fields(RunConfig):
        raw = getattr(args, f.name, None)
        if raw is not None:
            overrides[f.name] = _convert(f.name, raw) if isinstance(raw, str) else raw
    text = ""
    if getattr(args, "config", None):
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParameterError("config", f"cannot read {args.config}: {exc}") from None
    return load_config(text, overrides)


def _trunc_text(meta):
    if meta.get("n_bar") is None:
        return f"n0={meta['n0']} m0={meta['m0']}"
    mode = "auto" if meta.get("auto") else "fixed"
    return f"n_bar={meta['n_bar']} ({mode})"


def cmd_simulate(cfg, out=None):
    t_max, dt = cfg.resolved("t_max"), cfg.resolved("dt")
    if cfg.model == "cavity":
        trace = trace_cavity(cfg.cavity_params(), t_max, dt, trunc=cfg.nbar, tol=cfg.tol)
    else:
        trace = trace_freespace(cfg.freespace_params(), t_max, dt)
    meta = dict(trace.meta, negative_rate=trace.negative_rate)
    path = write_table(cfg.output_path(f"{cfg.model}_trace"), trace.columns(), meta, cfg.format)
    print(f"final sz={trace.sz[-1]:.17g} at t={trace.t[-1]:.17g} {_trunc_text(trace.meta)} "
          f"negative_rate={str(trace.negative_rate).lower()} -> {path}", file=out or sys.stdout)
    return EXIT_OK


def _sweep_columns(result):
    cols = {result.axis_name: result.axis_values}
    suffixes = ["phi0", "phi_pi2"] if len(result.variant_names) == 2 else [
        f"v{i}" for i in range(len(result.variant_names))]
    for suffix, row in zip(suffixes, result.values):
        cols[f"{result.observable_name}_{suffix}"] = row
    cols["n_bar"] = result.n_bars
    cols["reason"] = result.reasons
    return cols


def cmd_sweep(cfg, axis, start, stop, steps, at_time, observable, out=None):
    if cfg.model != "cavity":
        raise ParameterError("model", "sweeps are defined for the cavity model only")
    if axis != "chi":
        raise ParameterError("axis", f"only 'chi' is supported, got {axis!r}")
    if steps < 2:
        raise ParameterError("steps", "must be >= 2")
    if not start < stop:
        raise ParameterError("from", "must be < to")
    chis = np.linspace(start, stop, steps)
    result = sweep_chi(cfg.cavity_params(), chis, at_time, observable,
                       tol=cfg.tol, trunc=cfg.nbar)
    meta = dict(result.meta, observable=observable, variants=result.variant_names)
    path = write_table(cfg.output_path(f"sweep_{observable}"), _sweep_columns(result), meta,
                       cfg.format)
    bad = int((~result.valid).sum())
    print(f"sweep {observable} over chi in [{start:g}, {stop:g}] ({steps} points, "
          f"{bad} invalid) at t={at_time:g} -> {path}", file=out or sys.stdout)
    return EXIT_OK


def cmd_converge(cfg, n_bar_list, out=None):
    if cfg.model != "cavity":
        raise ParameterError("model", "convergence reports are defined for the cavity model only")
    rows = convergence_report(cfg.cavity_params(), cfg.resolved("t_max"), n_bar_list)
    cols = {
        "n_bar": [r.n_bar for r in rows],
        "big_gamma_t_max": [r.big_gamma_end for r in rows],
        "max_grid_delta": [r.max_delta for r in rows],
    }
    meta = {"params": cfg.cavity_params().__dict__, "t_max": cfg.resolved("t_max")}
    path = write_table(cfg.output_path("converge"), cols, meta, cfg.format)
    print(f"convergence report: {len(rows)} rows, last delta={rows[-1].max_delta:.3g} -> {path}",
          file=out or sys.stdout)
    return EXIT_OK


FIG2_PARAMS = CavityParams(g=0.3, kappa=1.0, delta_c=0.0, omega=0.12)


def figure_dataset(name, tol=1e-8):
    """Columns and meta for one named dataset preset."""
    if name in ("fig2", "fig2g"):
        t_max, dt = 40.0, 0.01
        p0 = replace(FIG2_PARAMS, chi=50.0, phi=0.0)
        p90 = replace(FIG2_PARAMS, chi=50.0, phi=math.pi / 2)
        a = trace_cavity(p0, t_max, dt, tol=tol)
        b = trace_cavity(p90, t_max, dt, tol=tol)
        meta = {"figure": name, "params": FIG2_PARAMS.__dict__, "chi": 50.0,
                "n_bar_phi0": a.meta["n_bar"], "n_bar_phi_pi2": b.meta["n_bar"]}
        if name == "fig2g":
            return {"t": a.t, "gamma_phi0": a.gamma, "gamma_phi_pi2": b.gamma}, meta
        # no-coherence curve uses the phi=0 truncation
        c = trace_no_coherence(p0, t_max, dt, trunc=a.meta["n_bar"])
        d = trace_cavity(replace(FIG2_PARAMS, chi=0.0), t_max, dt, tol=tol)
        meta["gamma_no_coherence"] = float(c.gamma[0])
        return {"t": a.t, "sz_chi50_phi0": a.sz, "sz_chi50_phi_pi2": b.sz,
                "sz_chi50_no_coherence": c.sz, "sz_chi0": d.sz}, meta
    if name in ("fig3", "fig4"):
        at_time, observable = (30.0, "population") if name == "fig3" else (10.0, "shift")
        result = sweep_chi(FIG2_PARAMS, np.linspace(0.0, 60.0, 240), at_time, observable, tol=tol)
        meta = {"figure": name, "params": FIG2_PARAMS.__dict__, "at_time": at_time,
                "observable": observable}
        return _sweep_columns(result), meta
    if name in ("fig5a", "fig5b"):
        n0 = 1 if name == "fig5a" else 50
        p = FreeSpaceParams(rho=0.2, omega0_over_omega=2e4, gamma_fs=1.0, omega=1.0,
                            n0=n0, m0=0, phi=0.0)
        tr = trace_freespace(p, 20.0, 0.005)
        meta = {"figure": name, "rho": p.rho, "omega0_over_omega": p.omega0_over_omega,
                "omega": p.omega, "n0": n0, "m0": 0, "chi": p.chi, "chi_prime": p.chi_prime}
        return {"t": tr.t, f"sz_n0_{n0}": tr.sz,
                "sz_unmodulated": np.exp(-2.0 * tr.t) - 0.5}, meta
    raise ParameterError("figure", f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


def cmd_figure(name, output_dir=".", fmt="csv", tol=1e-8, out=None):
    if name not in FIGURES:
        raise ParameterError("figure", f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    cols, meta = figure_dataset(name, tol)
    Path(output_dir).mkdir(parents=True, exist_ok=True)
    path = write_table(str(Path(output_dir) / f"{name}.{fmt}"), cols, meta, fmt)
    print(f"{name}: {len(cols)} columns -> {path}", file=out or sys.stdout)
    return EXIT_OK


def _parse_nbar_list(text):
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ParameterError("nbar_list", f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise ParameterError("nbar_list", "must be non-empty")
    return values


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qmod", description="Decay of a two-level emitter with modulated transition frequency.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="time trace of gamma, Omega, Gamma and <S_z>")
    _add_model_flags(sim)

    sw = sub.add_parser("sweep", help="observable versus modulation index at fixed time")
    _add_model_flags(sw)
    sw.add_argument("--axis", default="chi", choices=("chi",))
    sw.add_argument("--from", dest="start", type=float, default=0.0)
    sw.add_argument("--to", dest="stop", type=float, default=60.0)
    sw.add_argument("--steps", type=int, default=240)
    sw.add_argument("--at-time", type=float, default=30.0)
    sw.add_argument("--observable", choices=("population", "shift"), default="population")

    fig = sub.add_parser("figure", help="emit the dataset behind one figure")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--output-dir", default=".")
    fig.add_argument("--format", choices=("csv", "json"), default="csv")
    fig.add_argument("--tol", type=float, default=1e-8)

    conv = sub.add_parser("converge", help="truncation convergence table")
    _add_model_flags(conv)
    conv.add_argument("--nbar-list", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "figure":
            return cmd_figure(args.name, args.output_dir, args.format, args.tol)
        cfg = _config_from_args(args)
        if args.dump_config:
            text = cfg.dumps()
            if args.dump_config == "-":
                sys.stdout.write(text)
            else:
                Path(args.dump_config).write_text(text, encoding="utf-8")
            return EXIT_OK
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.axis, args.start, args.stop, args.steps, args.at_time,
                             args.observable)
        return cmd_converge(cfg, _parse_nbar_list(args.nbar_list))
    except ParameterError as exc:
        print(f"qmod: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"qmod: truncation did not converge: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
