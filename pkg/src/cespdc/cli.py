"""Command-line front end: ``cespdc [options] <command> [options]``.

Every command writes plot-ready CSV (or JSON) with a ``# key=value``
metadata header. Exit codes: 0 ok, 1 verification failed, 2 usage,
3 gain at or above threshold, 4 I/O, 5 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__, bogoliubov, comb, single_mode, spectra, validation
from ._errors import ConvergenceError, DomainError, ThresholdError
from .params import make_cavity, make_gain

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_THRESHOLD, EXIT_IO, EXIT_CONVERGENCE = 0, 1, 2, 3, 4, 5

COMMANDS = ("coeffs", "squeeze", "g2", "g2-single", "render", "compare", "scan", "verify")
DEFAULT_SCAN = ("r1=0.5:0.99:25", "r2=0.5:0.99:25", "gainfrac=0.01:0.95:19")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    r1: float = 0.9
    r2: float = 0.9
    tau: float = 1.0
    gain: float | None = None
    gain_frac: float | None = None
    omega: str = "-1:1:401"
    rad: bool = False
    t: str | None = None
    k_max: int | None = None
    fwhm: float = 0.02
    raw: bool = False
    envelopes: str | None = None
    modes: int | None = None
    metric: str = "peak"
    convention: str = "energy"
    scan: list = field(default_factory=list)
    workers: int = 1
    full: bool = False
    format: str = "csv"
    output: str | None = None

    def needs_gain(self) -> bool:
        return self.command not in ("scan", "verify") and not (
            self.command == "compare" and self.scan)


def parse_grid(spec: str, name: str) -> np.ndarray:
    """``start:stop:num`` -> strictly increasing linspace (num >= 1)."""
    try:
        start, stop, num = spec.split(":")
        start, stop, num = float(start), float(stop), int(num)
    except ValueError:
        raise UsageError(f"{name}: expected start:stop:num, got {spec!r}") from None
    if num < 1:
        raise UsageError(f"{name}: grid must have at least one point")
    if num > 1 and not stop > start:
        raise UsageError(f"{name}: grid must be strictly increasing")
    return np.linspace(start, stop, num)


def parse_scan(items) -> dict:
    grids = {}
    for item in items:
        key, _, spec = item.partition("=")
        key = key.strip().lower().replace("_", "")
        if key not in ("r1", "r2", "gainfrac"):
            raise UsageError(f"scan: unknown axis {key!r} (use r1, r2, gainfrac)")
        grids[key] = parse_grid(spec, f"scan {key}")
    missing = {"r1", "r2", "gainfrac"} - set(grids)
    if missing:
        raise UsageError(f"scan: missing axis {', '.join(sorted(missing))}")
    return grids


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--r1", type=float, help="output-coupler amplitude reflectivity")
    p.add_argument("--r2", type=float, help="loss-mirror amplitude reflectivity")
    p.add_argument("--tau", type=float, help="round-trip time (default 1)")
    p.add_argument("--gain", type=float, help="absolute single-pass squeezing amplitude r")
    p.add_argument("--gain-frac", type=float, dest="gain_frac",
                   help="gain as a fraction of threshold r/r_th")
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", "-o", help="output path (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="cespdc", parents=[common],
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cespdc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, argument_default=S)

    for name, help_ in (("coeffs", "Bogoliubov coefficients A..D and |d| on a frequency grid"),
                        ("squeeze", "squeezing and anti-squeezing spectra")):
        sp = add(name, help_)
        sp.add_argument("--omega", help="start:stop:num, in FSR units unless --rad")
        sp.add_argument("--rad", action="store_true", help="--omega is in rad per unit time")

    sp = add("g2", "multimode G2 comb weights and background")
    sp.add_argument("--k-max", type=int, dest="k_max")
    sp.add_argument("--envelopes", help="comma-separated gain fractions; tabulate envelopes")

    sp = add("g2-single", "single-mode G2(T) on a time grid")
    sp.add_argument("--t", help="start:stop:num in units of tau")
    sp.add_argument("--modes", type=int, help="N for a (2N+1)-mode comb")
    sp.add_argument("--convention", choices=single_mode.CONVENTIONS)

    sp = add("render", "Lorentzian-broadened G2 trace for plotting")
    sp.add_argument("--t", help="start:stop:num in units of tau")
    sp.add_argument("--fwhm", type=float, help="peak FWHM in units of tau")
    sp.add_argument("--k-max", type=int, dest="k_max")
    sp.add_argument("--raw", action="store_true", help="do not normalize to T = 0")

    for name, help_ in (("compare", "multimode vs single-mode envelope deviation"),
                        ("scan", "grid scan of the model deviation")):
        sp = add(name, help_)
        sp.add_argument("--scan", nargs="+", help="axis=start:stop:num for r1, r2, gainfrac")
        sp.add_argument("--k-max", type=int, dest="k_max")
        sp.add_argument("--metric", choices=("peak", "pointwise"))
        sp.add_argument("--convention", choices=single_mode.CONVENTIONS)
        sp.add_argument("--workers", type=int)

    sp = add("verify", "run the cross-validation gates")
    sp.add_argument("--full", action="store_true", help="full-size random samples")
    return parser


def parse_config(argv=None) -> RunConfig:
    """Parse flags, merge them over an optional JSON config file, validate."""
    ns = vars(build_parser().parse_args(argv))
    file_values = {}
    if "config" in ns:
        try:
            file_values = json.loads(Path(ns.pop("config")).read_text())
        except OSError as exc:
            raise OSError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(file_values, dict):
            raise UsageError("config file must hold a JSON object")
        file_values = {k.replace("-", "_"): v for k, v in file_values.items()}
    known = {f.name for f in fields(RunConfig)}
    unknown = set(file_values) - known
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    if ("gain" in ns) and ("gain_frac" in ns):
        raise UsageError("gain: give only one of --gain and --gain-frac")
    if "gain" in ns or "gain_frac" in ns:
        file_values.pop("gain", None)
        file_values.pop("gain_frac", None)
    merged = {**file_values, **ns}
    merged.pop("command", None)
    if merged.get("gain") is not None and merged.get("gain_frac") is not None:
        raise UsageError("gain: give only one of gain and gain_frac")
    if isinstance(merged.get("scan"), str):
        merged["scan"] = merged["scan"].split()
    cfg = RunConfig(command=ns["command"], **merged)
    if cfg.needs_gain() and cfg.gain is None and cfg.gain_frac is None:
        raise UsageError("gain: one of --gain or --gain-frac is required")
    if cfg.workers < 1:
        raise UsageError("workers: must be >= 1")
    return cfg


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


class _Table:
    def __init__(self, meta, columns):
        self.meta = meta
        self.columns = columns
        self.rows = []
        self.trailer = {}

    def render(self, fmt):
        if fmt == "json":
            doc = {"meta": self.meta, "columns": self.columns, "rows": self.rows}
            if self.trailer:
                doc["summary"] = self.trailer
            return json.dumps(doc, indent=1) + "\n"
        buf = io.StringIO()
        for k, v in self.meta.items():
            buf.write(f"# {k}={v}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(x) for x in row) + "\n")
        for k, v in self.trailer.items():
            buf.write(f"# {k}={v}\n")
        return buf.getvalue()


def _setup(cfg):
    cav = make_cavity(cfg.r1, cfg.r2, cfg.tau)
    gain = make_gain(cav, r=cfg.gain, fraction=cfg.gain_frac)
    print(f"# resolved r={gain.r!r} r/r_th={gain.fraction!r} r_th={gain.r_th!r}",
          file=sys.stderr)
    return cav, gain


def _meta(cfg, cav=None, gain=None, **extra):
    meta = {"cespdc_version": __version__, "command": cfg.command}
    if cav is not None:
        meta.update(r1=_fmt(cav.r1), r2=_fmt(cav.r2), tau=_fmt(cav.tau))
    if gain is not None:
        meta.update(r=_fmt(gain.r), r_th=_fmt(gain.r_th), gain_frac=_fmt(gain.fraction))
    meta.update({k: str(v) for k, v in extra.items()})
    return meta


def _omega_grid(cfg, cav):
    grid = parse_grid(cfg.omega, "omega")
    return grid if cfg.rad else grid * cav.fsr


def _cmd_coeffs(cfg):
    cav, gain = _setup(cfg)
    omega = _omega_grid(cfg, cav)
    c = bogoliubov.coeffs(cav, gain, omega)
    d = np.abs(bogoliubov.denominator(cav, gain, omega))
    t = _Table(_meta(cfg, cav, gain, omega_units="rad" if cfg.rad else "fsr"),
               ["omega", "A_re", "A_im", "B_re", "B_im", "C_re", "C_im", "D_re", "D_im",
                "abs_d"])
    for i, w in enumerate(omega):
        t.rows.append([w, c.A[i].real, c.A[i].imag, c.B[i].real, c.B[i].imag,
                       c.C[i].real, c.C[i].imag, c.D[i].real, c.D[i].imag, d[i]])
    return t.render(cfg.format)


def _cmd_squeeze(cfg):
    cav, gain = _setup(cfg)
    omega = _omega_grid(cfg, cav)
    s0 = spectra.squeezing_spectrum(cav, gain, omega, 0.0)
    spi = spectra.squeezing_spectrum(cav, gain, omega, math.pi)
    t = _Table(_meta(cfg, cav, gain, omega_units="rad" if cfg.rad else "fsr"),
               ["Omega", "S_theta0", "S_thetapi"])
    t.rows = [list(row) for row in zip(omega, s0, spi)]
    return t.render(cfg.format)


def _cmd_g2(cfg):
    cav, gain = _setup(cfg)
    if cfg.envelopes:
        fracs = [float(f) for f in cfg.envelopes.split(",")]
        k_max = cfg.k_max if cfg.k_max is not None else 50
        cols, envs = ["k", "T"], []
        for f in fracs:
            c = comb.g2_comb(cav, make_gain(cav, fraction=f), k_max)
            envs.append(comb.g2_envelope_normalized(c)[1])
            cols.append(f"envelope_{f!r}")
        t = _Table(_meta(cfg, cav, None, k_max=k_max, gain_fracs=cfg.envelopes), cols)
        for k in range(k_max + 1):
            t.rows.append([k, k * cav.tau] + [e[k] for e in envs])
        return t.render(cfg.format)

    c = comb.g2_comb(cav, gain, cfg.k_max)
    _, env = comb.g2_envelope_normalized(c)
    if cfg.format == "json":
        doc = {"params": {"r1": cav.r1, "r2": cav.r2, "tau": cav.tau, "r": gain.r,
                          "r_th": gain.r_th},
               "r_over_rth": gain.fraction,
               "tau": cav.tau,
               "weights": c.weights.tolist(),
               "background": c.background,
               "normalized": env.tolist(),
               "version": __version__}
        return json.dumps(doc, indent=1) + "\n"
    t = _Table(_meta(cfg, cav, gain, k_max=c.k_max, background=_fmt(c.background)),
               ["k", "T", "weight", "normalized"])
    t.rows = [[k, k * cav.tau, w, e] for k, (w, e) in enumerate(zip(c.weights, env))]
    return t.render(cfg.format)


def _cmd_g2_single(cfg):
    cav, gain = _setup(cfg)
    sm = single_mode.from_cavity(cav, gain, cfg.convention)
    T = parse_grid(cfg.t or "0:20:401", "t") * cav.tau
    if cfg.modes is None:
        g = single_mode.g2_single(sm, T)
    else:
        g = single_mode.g2_multi_finite_n(sm, cfg.modes, T, cav.tau)
    g0 = single_mode.g2_single(sm, 0.0)
    if cfg.modes is not None:
        g0 *= (2 * cfg.modes + 1) ** 2
    t = _Table(_meta(cfg, cav, gain, gamma1=_fmt(sm.gamma1), gamma2=_fmt(sm.gamma2),
                     epsilon=_fmt(sm.epsilon), convention=cfg.convention,
                     modes=cfg.modes if cfg.modes is not None else "single"),
               ["T", "g2", "normalized"])
    t.rows = [[a, b, b / g0 if g0 > 0 else 0.0] for a, b in zip(T, g)]
    return t.render(cfg.format)


def _cmd_render(cfg):
    cav, gain = _setup(cfg)
    c = comb.g2_comb(cav, gain, cfg.k_max)
    T = parse_grid(cfg.t or "-20:20:4001", "t") * cav.tau
    fwhm = cfg.fwhm * cav.tau
    trace = comb.render_lorentzian(c, fwhm, T)
    if not cfg.raw:
        trace = trace / comb.render_lorentzian(c, fwhm, [0.0])[0]
    t = _Table(_meta(cfg, cav, gain, fwhm=_fmt(fwhm), normalized=not cfg.raw),
               ["T", "value"])
    t.rows = [list(row) for row in zip(T, trace)]
    return t.render(cfg.format)


def _compare_point(args):
    r1, r2, frac, tau, k_max, metric, convention = args
    cav = make_cavity(r1, r2, tau)
    return single_mode.compare_models(cav, make_gain(cav, fraction=frac), k_max,
                                      metric, convention)


def _cmd_scan(cfg):
    grids = parse_scan(cfg.scan or DEFAULT_SCAN)
    points = [(float(a), float(b), float(f), cfg.tau, cfg.k_max, cfg.metric, cfg.convention)
              for a in grids["r1"] for b in grids["r2"] for f in grids["gainfrac"]]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            devs = list(pool.map(_compare_point, points, chunksize=64))
    else:
        devs = [_compare_point(p) for p in points]
    t = _Table(_meta(cfg, metric=cfg.metric, convention=cfg.convention,
                     scan=" ".join(cfg.scan or DEFAULT_SCAN)),
               ["r1", "r2", "gain_frac", "max_deviation"])
    t.rows = [[p[0], p[1], p[2], d] for p, d in zip(points, devs)]
    i = int(np.argmax(devs))
    t.trailer = {"global_max_deviation": _fmt(devs[i]),
                 "at": f"r1={_fmt(points[i][0])} r2={_fmt(points[i][1])} "
                       f"gain_frac={_fmt(points[i][2])}"}
    print(f"# global max deviation {devs[i]:.6g} at r1={points[i][0]:.6g} "
          f"r2={points[i][1]:.6g} gain_frac={points[i][2]:.6g}", file=sys.stderr)
    return t.render(cfg.format)


def _cmd_compare(cfg):
    if cfg.scan:
        return _cmd_scan(cfg)
    cav, gain = _setup(cfg)
    times, multi, single = single_mode.model_envelopes(cav, gain, cfg.k_max, cfg.convention)
    dev = single_mode.compare_models(cav, gain, cfg.k_max, cfg.metric, cfg.convention)
    t = _Table(_meta(cfg, cav, gain, metric=cfg.metric, convention=cfg.convention),
               ["k", "T", "multimode", "single_mode", "difference"])
    t.rows = [[k, T, a, b, a - b] for k, (T, a, b) in enumerate(zip(times, multi, single))]
    t.trailer = {"max_deviation": _fmt(dev)}
    return t.render(cfg.format)


def _cmd_verify(cfg):
    gates = validation.run_all(quick=not cfg.full)
    from .oracle import g2_from_moments, two_time_output_correlators
    cav, gain = make_cavity(cfg.r1, cfg.r2, cfg.tau), None
    gain = make_gain(cav, r=cfg.gain, fraction=cfg.gain_frac if cfg.gain is not None
                     or cfg.gain_frac is not None else 0.5)
    c = comb.g2_comb(cav, gain, 30)
    o = g2_from_moments(two_time_output_correlators(cav, gain, 30))
    dev = float(np.max(np.abs(c.weights / c.weights[0] - o.weights)))
    gates.insert(0, validation.GateResult(
        f"comb vs oracle at r1={cav.r1:g} r2={cav.r2:g} r/r_th={gain.fraction:g}",
        dev, 1e-8, dev < 1e-8))
    lines = [g.line() for g in gates]
    ok = all(g.passed for g in gates)
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", ok


HANDLERS = {"coeffs": _cmd_coeffs, "squeeze": _cmd_squeeze, "g2": _cmd_g2,
            "g2-single": _cmd_g2_single, "render": _cmd_render, "compare": _cmd_compare,
            "scan": _cmd_scan}


def run(cfg: RunConfig) -> int:
    """Execute one command and write its output; returns the exit status."""
    status = EXIT_OK
    if cfg.command == "verify":
        text, ok = _cmd_verify(cfg)
        status = EXIT_OK if ok else EXIT_VERIFY
    else:
        text = HANDLERS[cfg.command](cfg)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"cespdc: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ThresholdError as exc:
        print(f"cespdc: {exc} (at or above threshold)", file=sys.stderr)
        return EXIT_THRESHOLD
    except DomainError as exc:
        name = f"{exc.parameter}: " if exc.parameter else ""
        print(f"cespdc: usage error: {name}{exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"cespdc: did not converge: {exc} (estimate {exc.estimate})", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"cespdc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
