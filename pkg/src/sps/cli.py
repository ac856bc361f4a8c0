"""Command-line front end: ``sps <subcommand> --config FILE``.

Subcommands: rates, squeezing, decay, steady, spectrum, sweep, figure.
Configuration is a plain-text file of ``key = value`` lines under sections
[bath], [drive], [rates], [run] (see the package README for every key).
Exactly one of two input modes must be used: the physical mode ([bath] +
[drive], the damping rates are computed from the bath spectral density)
or the direct-rate mode ([rates] with gamma1/gamma2/nbar given verbatim).

Outputs are deterministic CSV files (17-significant-digit floats, LF line
endings, fixed column order) plus flat ``key=value`` metadata sidecars, so
repeated runs of the same config are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .bloch import BlochVector, dressed_populations, driven_steady_state, \
    free_evolution
from .physparams import DriveConfig, PhononBathSpec, displacement_factor, \
    phonon_rate
from .reservoir import figure3_dataset, figure4_dataset, map_to_squeezing, \
    quantum_threshold, reservoir_rates
from .spectrum import exact_incoherent_spectrum, figure5_dataset, sum_rule

#: Analytic-vs-numeric comparison tolerances for --engine both.
DECAY_TOL = 1e-8
STEADY_TOL = 1e-8
SPECTRUM_TOL = 1e-3  # relative sup norm against the analytic peak

_HALF_PI = math.pi / 2.0

SUBCOMMANDS = ("rates", "squeezing", "decay", "steady", "spectrum", "sweep",
               "figure")
FIGURES = ("fig3", "fig4", "fig5")
ENGINES = ("analytic", "numeric", "both")

_NUMBER_CHARS = set("0123456789.eE+-*/() \t")


class ConfigError(ValueError):
    """Bad configuration file; carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# Section -> key -> type ("float", "int", "bool", "str").
_SCHEMA = {
    "bath": {
        "alpha": "float", "omega_c": "float",
        "temperature": "float", "nbar": "float",
    },
    "drive": {
        "omega1": "float", "omega2": "float",
        "phi1": "float", "phi2": "float", "detuning": "float",
        "include_B": "bool",
    },
    "rates": {
        "gamma1": "float", "gamma2": "float", "nbar": "float", "phi": "float",
    },
    "run": {
        "engine": "str", "out": "str", "Gamma": "float",
        "Omega": "float", "sx0": "float", "sy0": "float", "sz0": "float",
        "t_max": "float", "t_points": "int",
        "omega_span": "float", "omega_points": "int", "tau_points": "int",
        "nbar_max": "float", "nbar_points": "int",
        "ratio_max": "float", "ratio_points": "int",
        "sx0_points": "int", "render_delta": "bool", "render_width": "float",
        "sweep_param": "str", "sweep_start": "float", "sweep_stop": "float",
        "sweep_points": "int", "sweep_quantity": "str",
    },
}

_SWEEP_PARAMS = ("gamma1", "gamma2", "nbar", "phi", "Omega", "sx0")
_SWEEP_QUANTITIES = ("steady", "squeezing")


@dataclass
class RunConfig:
    """Validated configuration for one CLI invocation."""

    mode: str                      # "physical" or "direct"
    bath: PhononBathSpec | None = None
    drive: DriveConfig | None = None
    include_b: bool = False
    gamma1: float = 0.0
    gamma2: float = 0.0
    nbar: float = 0.0
    phi: float = 0.0
    gamma_rad: float = 0.0
    engine: str = "analytic"
    out: str = "."
    laser_omega: float = 0.0
    sx0: float = 0.0
    sy0: float = 0.0
    sz0: float = 0.0
    t_max: float = 0.0             # 0 -> auto
    t_points: int = 201
    omega_span: float = 0.0        # 0 -> auto (2*Omega)
    omega_points: int = 2001
    tau_points: int = 4096
    nbar_max: float = 3.0
    nbar_points: int = 201
    ratio_max: float = 10.0
    ratio_points: int = 201
    sx0_points: int = 41
    render_delta: bool = False
    render_width: float = 0.0      # 0 -> gamma1
    sweep_param: str = ""
    sweep_start: float = 0.0
    sweep_stop: float = 0.0
    sweep_points: int = 0
    sweep_quantity: str = "steady"
    raw: dict = field(default_factory=dict)

    def resolved_rates(self):
        """Reservoir triple for this configuration (either input mode)."""
        if self.mode == "direct":
            return reservoir_rates(self.gamma1, self.gamma2, self.nbar,
                                   phi1=self.phi, phi2=self.phi,
                                   gamma_rad=self.gamma_rad)
        gamma1 = phonon_rate(1, self.drive, self.bath, include_b=self.include_b)
        gamma2 = phonon_rate(2, self.drive, self.bath, include_b=self.include_b)
        nbar = self.bath.occupation(self.drive.detuning)
        return reservoir_rates(gamma1, gamma2, nbar,
                               phi1=self.drive.phi1, phi2=self.drive.phi2,
                               gamma_rad=self.gamma_rad)


def _parse_number(text, line):
    """Parse a float literal, allowing pi expressions like ``pi/2`` or ``0.3*pi``."""
    stripped = text.replace("pi", "")
    if not text or not set(stripped) <= _NUMBER_CHARS:
        raise ConfigError(f"unparseable number {text!r}", line)
    try:
        value = eval(text, {"__builtins__": {}}, {"pi": math.pi})  # noqa: S307
    except Exception:
        raise ConfigError(f"unparseable number {text!r}", line) from None
    if not isinstance(value, (int, float)):
        raise ConfigError(f"unparseable number {text!r}", line)
    return float(value)


def _parse_value(kind, text, line):
    if kind == "float":
        return _parse_number(text, line)
    if kind == "int":
        value = _parse_number(text, line)
        if value != int(value):
            raise ConfigError(f"expected an integer, got {text!r}", line)
        return int(value)
    if kind == "bool":
        lowered = text.lower()
        if lowered in ("true", "yes", "1", "on"):
            return True
        if lowered in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"expected a boolean, got {text!r}", line)
    return text


def parse_config(text):
    """Parse configuration text into a validated :class:`RunConfig`."""
    sections: dict[str, dict] = {}
    current = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                raise ConfigError(f"unknown section [{name}]", lineno)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", lineno)
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", lineno)
        if current is None:
            raise ConfigError("key outside of any section", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _SCHEMA[current]:
            raise ConfigError(f"unknown key {key!r} in section [{current}]", lineno)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r} in section [{current}]", lineno)
        sections[current][key] = _parse_value(_SCHEMA[current][key], value, lineno)

    return _build_config(sections)


def _require(section, key, sections):
    try:
        return sections[section][key]
    except KeyError:
        raise ConfigError(f"missing required key {key!r} in section [{section}]") from None


def _build_config(sections):
    has_bath = "bath" in sections
    has_rates = "rates" in sections
    if has_bath == has_rates:
        raise ConfigError(
            "exactly one of [bath]+[drive] (physical mode) or [rates] "
            "(direct-rate mode) must be present")

    run = sections.get("run", {})
    cfg = RunConfig(mode="physical" if has_bath else "direct", raw=sections)

    if has_bath:
        if "drive" not in sections:
            raise ConfigError("physical mode needs a [drive] section")
        bath_keys = sections["bath"]
        if ("temperature" in bath_keys) == ("nbar" in bath_keys):
            raise ConfigError(
                "section [bath] needs exactly one of temperature / nbar")
        try:
            cfg.bath = PhononBathSpec(
                alpha=_require("bath", "alpha", sections),
                omega_c=_require("bath", "omega_c", sections),
                temperature=bath_keys.get("temperature"),
                nbar_override=bath_keys.get("nbar"))
            drive_keys = sections["drive"]
            cfg.drive = DriveConfig(
                omega1_rabi=_require("drive", "omega1", sections),
                omega2_rabi=_require("drive", "omega2", sections),
                phi1=drive_keys.get("phi1", 0.0),
                phi2=drive_keys.get("phi2", 0.0),
                detuning=_require("drive", "detuning", sections))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
        cfg.include_b = sections["drive"].get("include_B", False)
        cfg.phi = cfg.drive.phi
    else:
        if "drive" in sections:
            raise ConfigError("[drive] requires the physical mode ([bath])")
        cfg.gamma1 = _require("rates", "gamma1", sections)
        cfg.gamma2 = _require("rates", "gamma2", sections)
        cfg.nbar = sections["rates"].get("nbar", 0.0)
        cfg.phi = sections["rates"].get("phi", 0.0)

    cfg.gamma_rad = run.get("Gamma", 0.0)
    engine = run.get("engine", "analytic")
    if engine not in ENGINES:
        raise ConfigError(f"engine must be one of {ENGINES}, got {engine!r}")
    cfg.engine = engine
    cfg.out = run.get("out", ".")
    cfg.laser_omega = run.get("Omega", 0.0)
    for key in ("sx0", "sy0", "sz0", "t_max", "t_points", "omega_span",
                "omega_points", "tau_points", "nbar_max", "nbar_points",
                "ratio_max", "ratio_points", "sx0_points", "render_delta",
                "render_width", "sweep_param", "sweep_start", "sweep_stop",
                "sweep_points", "sweep_quantity"):
        if key in run:
            setattr(cfg, key, run[key])
    if cfg.sweep_param and cfg.sweep_param not in _SWEEP_PARAMS:
        raise ConfigError(
            f"sweep_param must be one of {_SWEEP_PARAMS}, got {cfg.sweep_param!r}")
    if cfg.sweep_quantity not in _SWEEP_QUANTITIES:
        raise ConfigError(
            f"sweep_quantity must be one of {_SWEEP_QUANTITIES}, "
            f"got {cfg.sweep_quantity!r}")
    return cfg


def parse_config_file(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


# ----------------------------------------------------------------------
# Deterministic output helpers
# ----------------------------------------------------------------------

def format_value(value):
    """Serialize one CSV cell: floats at full round-trip precision."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(format_value(cell) for cell in row) + "\n")


def write_meta(path, entries):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for key, value in entries.items():
            handle.write(f"{key}={format_value(value)}\n")


def _phi_choice(cfg):
    if math.isclose(cfg.phi, 0.0, abs_tol=1e-12):
        return 0.0
    if math.isclose(cfg.phi, _HALF_PI, rel_tol=1e-12):
        return _HALF_PI
    raise ConfigError(
        f"driven-system subcommands need phi in {{0, pi/2}}, got {cfg.phi}")


def _decay_scales(rates):
    base = rates.gamma_s + rates.gamma_n + 0.5 * rates.gamma_rad
    return [base - 2.0 * rates.gamma_m, base + 2.0 * rates.gamma_m,
            2.0 * (rates.gamma_s + rates.gamma_n) + rates.gamma_rad]


def _time_grid(cfg, rates):
    if cfg.t_max > 0:
        t_max = cfg.t_max
    else:
        nonzero = [r for r in _decay_scales(rates) if r > 1e-12]
        t_max = 10.0 / min(nonzero) if nonzero else 1.0
    return np.linspace(0.0, t_max, cfg.t_points)


def _omega_grid(cfg):
    span = cfg.omega_span if cfg.omega_span > 0 else 2.0 * cfg.laser_omega
    if span <= 0:
        raise ConfigError("spectrum needs omega_span > 0 or Omega > 0")
    return np.linspace(-span, span, cfg.omega_points)


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def _cmd_rates(cfg, out_dir):
    rr = cfg.resolved_rates()
    write_csv(os.path.join(out_dir, "rates.csv"),
              ["gamma1", "gamma2", "nbar", "gamma_s", "gamma_n", "gamma_m",
               "phi", "Gamma"],
              [[rr.gamma1, rr.gamma2, rr.nbar, rr.gamma_s, rr.gamma_n,
                rr.gamma_m, rr.phi, rr.gamma_rad]])
    meta = {"mode": cfg.mode, "engine": cfg.engine}
    if cfg.mode == "physical":
        meta["displacement_factor"] = displacement_factor(cfg.bath)
        meta["include_B"] = cfg.include_b
        meta["detuning"] = cfg.drive.detuning
    write_meta(os.path.join(out_dir, "rates.meta"), meta)
    return 0


def _cmd_squeezing(cfg, out_dir):
    rr = cfg.resolved_rates()
    desc = map_to_squeezing(rr)
    try:
        threshold = quantum_threshold(rr.gamma1, rr.gamma2)
    except ValueError:
        threshold = math.nan  # a vanishing rate never reaches the quantum regime
    write_csv(os.path.join(out_dir, "squeezing.csv"),
              ["regime", "gamma_eff", "N", "M_abs", "Ns", "Nb", "quantum",
               "nbar_threshold"],
              [[desc.regime, desc.gamma_eff, desc.n_photons, desc.m_abs,
                desc.n_squeezed, desc.n_background, desc.quantum, threshold]])
    return 0


def _bloch_rows(t_grid, states):
    return [[t, s.sx, s.sy, s.sz] for t, s in zip(t_grid, states)]


def _cmd_decay(cfg, out_dir):
    rr = cfg.resolved_rates()
    t_grid = _time_grid(cfg, rr)
    state0 = BlochVector(cfg.sx0, cfg.sy0, cfg.sz0)
    header = ["t", "sx", "sy", "sz"]
    status = 0

    analytic = numeric = None
    if cfg.engine in ("analytic", "both"):
        analytic = [free_evolution(state0, rr, t) for t in t_grid]
        name = "decay_analytic.csv" if cfg.engine == "both" else "decay.csv"
        write_csv(os.path.join(out_dir, name), header,
                  _bloch_rows(t_grid, analytic))
    if cfg.engine in ("numeric", "both"):
        lv = oracle.build_liouvillian(rr)
        traj = oracle.propagate(oracle.bloch_to_rho(state0), lv, t_grid)
        numeric = [oracle.rho_to_bloch(rho) for rho in traj]
        name = "decay_numeric.csv" if cfg.engine == "both" else "decay.csv"
        write_csv(os.path.join(out_dir, name), header,
                  _bloch_rows(t_grid, numeric))
    if cfg.engine == "both":
        dev = max(np.abs(a.as_array() - n.as_array()).max()
                  for a, n in zip(analytic, numeric))
        ok = dev <= DECAY_TOL
        write_meta(os.path.join(out_dir, "decay_compare.meta"),
                   {"supnorm_deviation": dev, "tolerance": DECAY_TOL,
                    "status": "pass" if ok else "fail"})
        status = 0 if ok else 1
    return status


def _cmd_steady(cfg, out_dir):
    rr = cfg.resolved_rates()
    phi_choice = _phi_choice(cfg)
    header = ["sx", "sy", "sz", "rho_plus", "rho_minus"]
    status = 0

    def row(state):
        plus, minus = dressed_populations(state)
        return [state.sx, state.sy, state.sz, plus, minus]

    analytic = numeric = None
    if cfg.engine in ("analytic", "both"):
        analytic = driven_steady_state(rr, cfg.laser_omega, phi_choice,
                                       sx0=cfg.sx0)
        name = "steady_analytic.csv" if cfg.engine == "both" else "steady.csv"
        write_csv(os.path.join(out_dir, name), header, [row(analytic)])
    if cfg.engine in ("numeric", "both"):
        lv = oracle.build_liouvillian(rr, omega=cfg.laser_omega, laser_on=True)
        rho0 = oracle.bloch_to_rho(BlochVector(cfg.sx0, cfg.sy0, cfg.sz0))
        numeric = oracle.rho_to_bloch(oracle.stationary_state(lv, rho0=rho0))
        name = "steady_numeric.csv" if cfg.engine == "both" else "steady.csv"
        write_csv(os.path.join(out_dir, name), header, [row(numeric)])
    if cfg.engine == "both":
        dev = np.abs(analytic.as_array() - numeric.as_array()).max()
        ok = dev <= STEADY_TOL
        write_meta(os.path.join(out_dir, "steady_compare.meta"),
                   {"supnorm_deviation": dev, "tolerance": STEADY_TOL,
                    "status": "pass" if ok else "fail"})
        status = 0 if ok else 1
    return status


def _spectrum_meta(result):
    return {"engine": result.engine,
            "coherent_weight": result.coherent_weight,
            "zero_width_weight": result.zero_width_weight,
            "sum_rule": sum_rule(result)}


def _cmd_spectrum(cfg, out_dir):
    rr = cfg.resolved_rates()
    phi_choice = _phi_choice(cfg)
    if cfg.laser_omega <= 0:
        raise ConfigError("spectrum needs a resonant drive: set Omega > 0")
    grid = _omega_grid(cfg)
    header = ["delta_omega", "S_in"]
    status = 0

    analytic = numeric = None
    if cfg.engine in ("analytic", "both"):
        analytic = exact_incoherent_spectrum(rr, cfg.laser_omega, phi_choice,
                                             sx0=cfg.sx0, omega_grid=grid)
        name = "spectrum_analytic" if cfg.engine == "both" else "spectrum"
        write_csv(os.path.join(out_dir, name + ".csv"), header,
                  zip(grid, analytic.incoherent))
        write_meta(os.path.join(out_dir, name + ".meta"),
                   _spectrum_meta(analytic))
    if cfg.engine in ("numeric", "both"):
        numeric = oracle.regression_spectrum(
            rr, cfg.laser_omega, sx0=cfg.sx0, sy0=cfg.sy0, sz0=cfg.sz0,
            omega_grid=grid, tau_points=cfg.tau_points)
        name = "spectrum_numeric" if cfg.engine == "both" else "spectrum"
        write_csv(os.path.join(out_dir, name + ".csv"), header,
                  zip(grid, numeric.incoherent))
        write_meta(os.path.join(out_dir, name + ".meta"),
                   _spectrum_meta(numeric))
    if cfg.engine == "both":
        peak = float(np.abs(analytic.incoherent).max())
        dev = float(np.abs(analytic.incoherent - numeric.incoherent).max())
        rel = dev / peak if peak > 0 else dev
        ok = rel <= SPECTRUM_TOL
        write_meta(os.path.join(out_dir, "spectrum_compare.meta"),
                   {"supnorm_deviation": dev, "peak": peak,
                    "relative_deviation": rel, "tolerance": SPECTRUM_TOL,
                    "status": "pass" if ok else "fail"})
        status = 0 if ok else 1
    return status


def _sweep_workers():
    env = os.environ.get("SPS_THREADS", "")
    if env.strip():
        workers = int(env)
        if workers < 1:
            raise ConfigError("SPS_THREADS must be >= 1")
        return workers
    return min(8, os.cpu_count() or 1)


def _cmd_sweep(cfg, out_dir):
    if cfg.mode != "direct":
        raise ConfigError("sweep supports the direct-rate mode only")
    if not cfg.sweep_param:
        raise ConfigError("sweep needs sweep_param/sweep_start/sweep_stop/sweep_points")
    if cfg.sweep_points < 2:
        raise ConfigError("sweep_points must be >= 2")
    values = np.linspace(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_points)

    def evaluate(item):
        index, value = item
        params = {"gamma1": cfg.gamma1, "gamma2": cfg.gamma2,
                  "nbar": cfg.nbar, "phi": cfg.phi,
                  "Omega": cfg.laser_omega, "sx0": cfg.sx0}
        params[cfg.sweep_param] = value
        rr = reservoir_rates(params["gamma1"], params["gamma2"], params["nbar"],
                             phi1=params["phi"], phi2=params["phi"],
                             gamma_rad=cfg.gamma_rad)
        if cfg.sweep_quantity == "steady":
            state = driven_steady_state(rr, params["Omega"], params["phi"],
                                        sx0=params["sx0"])
            return [index, value, state.sx, state.sy, state.sz]
        desc = map_to_squeezing(rr)
        return [index, value, desc.regime, desc.gamma_eff, desc.n_photons,
                desc.m_abs, desc.n_squeezed, desc.n_background, desc.quantum]

    if cfg.sweep_quantity == "steady":
        if cfg.sweep_param != "phi":
            _phi_choice(cfg)
        header = ["index", cfg.sweep_param, "sx", "sy", "sz"]
    else:
        header = ["index", cfg.sweep_param, "regime", "gamma_eff", "N",
                  "M_abs", "Ns", "Nb", "quantum"]

    # Rows come back in input order regardless of completion order.
    with ThreadPoolExecutor(max_workers=_sweep_workers()) as pool:
        rows = list(pool.map(evaluate, enumerate(values)))
    write_csv(os.path.join(out_dir, "sweep.csv"), header, rows)
    return 0


def _cmd_figure(cfg, out_dir, fig):
    if fig == "fig3" or fig == "fig4":
        nbar_grid = np.linspace(0.0, cfg.nbar_max, cfg.nbar_points)
        ratio_grid = np.linspace(1.0, cfg.ratio_max, cfg.ratio_points + 1)[1:]
        dataset = (figure3_dataset if fig == "fig3" else figure4_dataset)(
            nbar_grid, ratio_grid)
        write_csv(os.path.join(out_dir, fig + ".csv"),
                  ["nbar", "ratio", "value"], dataset)
        return 0
    if fig == "fig5":
        if cfg.mode != "direct":
            raise ConfigError("fig5 needs the direct-rate mode")
        if not math.isclose(cfg.gamma1, cfg.gamma2, rel_tol=1e-9):
            raise ConfigError("fig5 needs the perfect regime (gamma1 = gamma2)")
        if cfg.laser_omega <= 0:
            raise ConfigError("fig5 needs Omega > 0")
        dataset = figure5_dataset(
            sx0_grid=np.linspace(-0.5, 0.5, cfg.sx0_points),
            gamma0=cfg.gamma1, nbar=cfg.nbar, omega=cfg.laser_omega,
            omega_grid=_omega_grid(cfg),
            render_delta=cfg.render_delta,
            render_width=cfg.render_width if cfg.render_width > 0 else None)
        write_csv(os.path.join(out_dir, "fig5.csv"),
                  ["sx0", "delta_omega", "S_in"], dataset)
        return 0
    raise ConfigError(f"unknown figure {fig!r} (expected one of {FIGURES})")


def run_subcommand(name, cfg, fig=None):
    """Execute one subcommand; returns the process exit status."""
    out_dir = cfg.out
    os.makedirs(out_dir, exist_ok=True)
    if name == "rates":
        return _cmd_rates(cfg, out_dir)
    if name == "squeezing":
        return _cmd_squeezing(cfg, out_dir)
    if name == "decay":
        return _cmd_decay(cfg, out_dir)
    if name == "steady":
        return _cmd_steady(cfg, out_dir)
    if name == "spectrum":
        return _cmd_spectrum(cfg, out_dir)
    if name == "sweep":
        return _cmd_sweep(cfg, out_dir)
    if name == "figure":
        return _cmd_figure(cfg, out_dir, fig)
    raise ConfigError(f"unknown subcommand {name!r}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sps",
        description="Squeezed-phonon-reservoir simulator for a driven quantum dot")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        if name == "figure":
            p.add_argument("figure", choices=FIGURES)
        p.add_argument("--config", required=True, help="configuration file")
        p.add_argument("--engine", choices=ENGINES,
                       help="override the engine from the config")
        p.add_argument("--out", help="override the output directory")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config_file(args.config)
        if args.engine:
            cfg.engine = args.engine
        if args.out:
            cfg.out = args.out
        status = run_subcommand(args.subcommand, cfg,
                                fig=getattr(args, "figure", None))
    except ConfigError as exc:
        print(f"sps: config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"sps: error: {exc}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
