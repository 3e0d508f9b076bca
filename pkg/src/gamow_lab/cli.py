"""Command-line front-end for reproducible resonance experiments.

Five subcommands — decompose, evolve, decay-curve, fit-pole, and
smatrix-decompose — each driven by a JSON config file (``--config``)
whose fields can be overridden by flags.  Unknown config keys are
rejected with the offending field path.  Exit codes: 0 success, 2
validation error, 3 numerical-contract violation.  Verbosity is set by
the GAMOW_LAB_LOG environment variable (quiet, info, or debug).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import evolution, gamow, hardy, resonance, smatrix
from . import grid as g
from .errors import (DecompositionInconsistent, FitFailed, GamowLabError,
                     InvalidArgument)

log = logging.getLogger("gamow_lab")

EXPERIMENTS = ("decompose", "evolve", "decay-curve", "fit-pole",
               "smatrix-decompose")

_SCHEMA = {
    "experiment": str,
    "grid": {"kind": str, "center": float, "half_width": float,
             "E_max": float, "n": int},
    "resonance": {"E_R": float, "Gamma": float, "R_re": float,
                  "R_im": float, "j": float},
    "times": None,   # list of numbers or {t_min, t_max, steps}
    "io": {"input_csv": str, "output_path": str, "format": str},
    "seed": int,
    "diagnostic": bool,
}
_TIMES_SCHEMA = {"t_min": float, "t_max": float, "steps": int}


class ConfigError(GamowLabError):
    """Invalid run configuration; the message names the offending field."""


def _check_type(path, value, expected):
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number, got {value!r}")
    elif expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer, got {value!r}")
    elif not isinstance(value, expected):
        raise ConfigError(f"{path}: expected {expected.__name__}, got {value!r}")


def _validate_section(section, schema, prefix):
    if not isinstance(section, dict):
        raise ConfigError(f"{prefix}: expected an object")
    for key, value in section.items():
        path = f"{prefix}.{key}" if prefix else key
        if key not in schema:
            raise ConfigError(f"unknown config key: {path}")
        sub = schema[key]
        if isinstance(sub, dict):
            _validate_section(value, sub, path)
        elif key == "times" and prefix == "":
            _validate_times(value)
        else:
            _check_type(path, value, sub)


def _validate_times(value):
    if isinstance(value, list):
        for i, t in enumerate(value):
            _check_type(f"times[{i}]", t, float)
        if not value:
            raise ConfigError("times: list must be non-empty")
    elif isinstance(value, dict):
        _validate_section(value, _TIMES_SCHEMA, "times")
        for req in ("t_min", "t_max", "steps"):
            if req not in value:
                raise ConfigError(f"times.{req}: required")
    else:
        raise ConfigError("times: expected a list or {t_min, t_max, steps}")


def validate_config(config):
    """Full-key validation; raises :class:`ConfigError` naming the field."""
    _validate_section(config, _SCHEMA, "")
    if "experiment" in config and config["experiment"] not in EXPERIMENTS:
        raise ConfigError(f"experiment: {config['experiment']!r} is not one of "
                          f"{', '.join(EXPERIMENTS)}")
    res = config.get("resonance", {})
    if "Gamma" in res and res["Gamma"] <= 0:
        raise ConfigError(f"resonance.Gamma: must be positive, got {res['Gamma']}")
    if "E_R" in res and res["E_R"] <= 0:
        raise ConfigError(f"resonance.E_R: must be positive, got {res['E_R']}")
    gr = config.get("grid", {})
    if "n" in gr and gr["n"] < 8:
        raise ConfigError(f"grid.n: must be at least 8, got {gr['n']}")
    if "kind" in gr and gr["kind"] not in (g.FULL_LINE, g.HALF_LINE):
        raise ConfigError(f"grid.kind: {gr['kind']!r} is not "
                          f"'{g.FULL_LINE}' or '{g.HALF_LINE}'")
    fmt = config.get("io", {}).get("format")
    if fmt not in (None, "csv", "json"):
        raise ConfigError(f"io.format: {fmt!r} is not 'csv' or 'json'")
    return config


def _require(config, path):
    node = config
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(f"{path}: required for this experiment")
        node = node[part]
    return node


def _build_grid(config):
    gr = _require(config, "grid")
    kind = gr.get("kind", g.FULL_LINE)
    n = _require(config, "grid.n")
    if kind == g.FULL_LINE:
        return g.make_line_grid(gr.get("center", 0.0),
                                _require(config, "grid.half_width"), n)
    return g.make_halfline_grid(_require(config, "grid.E_max"), n)


def _resonance_params(config):
    res = _require(config, "resonance")
    return resonance.BreitWignerParams(
        E_R=_require(config, "resonance.E_R"),
        Gamma=_require(config, "resonance.Gamma"),
        R=complex(res.get("R_re", 1.0), res.get("R_im", 0.0)),
        j=res.get("j", 0.0))


def _resolve_times(config):
    times = _require(config, "times")
    if isinstance(times, dict):
        return np.linspace(times["t_min"], times["t_max"], times["steps"])
    return np.asarray(times, dtype=float)


def _fmt(x):
    return "%.17g" % x


def _write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _complex_json(z):
    return {"re": z.real, "im": z.imag}


def _columns_csv(header, columns):
    rows = ["%s" % header]
    for vals in zip(*columns):
        rows.append(",".join(_fmt(v) for v in vals))
    return "\n".join(rows) + "\n"


def _run_decompose(config):
    grid_ = _build_grid(config)
    p = _resonance_params(config)
    state = gamow.make_gamow(p.pole(), grid_)
    f = state.wavefunction
    f_plus = hardy.project_plus(f)
    f_minus = hardy.project_minus(f)
    leak = hardy.hardy_leakage(f, g.H2_PLUS)
    recon = f_plus.values + f_minus.values - f.values
    defect = float(np.sqrt(np.sum(np.abs(recon) ** 2) /
                           np.sum(np.abs(f.values) ** 2)))
    out = _require(config, "io.output_path")
    if config.get("io", {}).get("format", "csv") == "json":
        _write_text(out, json.dumps({
            "leakage_plus": leak, "leakage_minus": 1.0 - leak,
            "reconstruction_defect": defect}) + "\n")
    else:
        _write_text(out, _columns_csv(
            "E,re_f,im_f,re_plus,im_plus,re_minus,im_minus",
            [grid_.points, f.values.real, f.values.imag,
             f_plus.values.real, f_plus.values.imag,
             f_minus.values.real, f_minus.values.imag]))
    print(f"decompose: leakage_plus={leak:.6g} "
          f"reconstruction_defect={defect:.3g} -> {out}")
    return 0


def _run_evolve(config):
    grid_ = _build_grid(config)
    p = _resonance_params(config)
    times = _resolve_times(config)
    if times.size != 1:
        raise ConfigError("times: evolve expects exactly one time")
    t = float(times[0])
    state = gamow.make_gamow(p.pole(), grid_)
    psi = state.wavefunction.with_values(state.wavefunction.values)
    evolved = evolution.evolve_state(psi, t)
    if config.get("diagnostic", False):
        log.info("causality leak at t=%g: %g", t,
                 evolution.causality_leak(
                     hardy.project_minus(psi), t))
    out = _require(config, "io.output_path")
    _write_text(out, _columns_csv("E,re_psi,im_psi",
                                  [grid_.points, evolved.values.real,
                                   evolved.values.imag]))
    print(f"evolve: t={t:g} norm={g.l2_norm(evolved):.6g} -> {out}")
    return 0


def _run_decay_curve(config):
    grid_ = _build_grid(config)
    p = _resonance_params(config)
    times = _resolve_times(config)
    state = gamow.make_gamow(p.pole(), grid_)
    series = gamow.decay_curve(state, times)
    out = _require(config, "io.output_path")
    _write_text(out, series.to_csv())
    slope = float(np.polyfit(series.times, np.log(series.survival), 1)[0])
    print(f"decay-curve: {times.size} samples log-slope={slope:.8g} "
          f"(Gamma={p.Gamma:g}) -> {out}")
    return 0


def _run_fit_pole(config):
    io = config.get("io", {})
    momentum = 1.0
    jval = config.get("resonance", {}).get("j", 0.0)
    if io.get("input_csv"):
        with open(io["input_csv"]) as fh:
            samples = resonance.read_lineshape_csv(fh.read())
    else:
        p = _resonance_params(config)
        E = np.linspace(max(p.E_R - 10.0 * p.Gamma, p.Gamma / 100.0),
                        p.E_R + 10.0 * p.Gamma, 401)
        sigma = resonance.bw_cross_section(p, momentum, E)
        if "seed" in config:
            rng = np.random.default_rng(config["seed"])
            sigma = sigma * (1.0 + 0.01 * rng.standard_normal(E.size))
            sigma = np.maximum(sigma, 0.0)
        samples = np.column_stack([E, sigma])
        jval = p.j
    fitted, report = resonance.fit_pole(samples, momentum, j=jval)
    out = _require(config, "io.output_path")
    _write_text(out, report.to_json(fitted) + "\n")
    print(f"fit-pole: E_R={fitted.E_R:.10g} Gamma={fitted.Gamma:.10g} "
          f"iterations={report.iterations} -> {out}")
    return 0


def _run_smatrix_decompose(config):
    grid_ = _build_grid(config)
    p = _resonance_params(config)
    z_R = p.pole()
    S = smatrix.single_pole_smatrix(z_R)
    # deterministic rational Hardy pair peaked at the resonance
    delta = max(p.Gamma, 0.1)
    E = grid_.points
    psi_v = 1.0 / ((E - (p.E_R - 1j * delta)) * (E - (p.E_R + 0.7 - 0.3j)))
    phi_v = 1.0 / ((E - (p.E_R + 1j * delta)) * (E - (p.E_R - 0.5 + 0.25j)))
    psi = g.SampledWaveFunction(grid_, psi_v, role=g.ROLE_OBSERVABLE,
                                hardy_class=g.H2_PLUS)
    phi = g.SampledWaveFunction(grid_, phi_v, role=g.ROLE_STATE,
                                hardy_class=g.H2_MINUS)
    result = smatrix.pole_background_decomposition(psi, phi, S)
    out = _require(config, "io.output_path")
    _write_text(out, json.dumps({
        "direct": _complex_json(result.direct),
        "pole_term": _complex_json(result.pole_term),
        "background": _complex_json(result.background),
        "closure_defect": result.closure_defect}) + "\n")
    print(f"smatrix-decompose: closure_defect={result.closure_defect:.3e} "
          f"-> {out}")
    return 0


_RUNNERS = {
    "decompose": _run_decompose,
    "evolve": _run_evolve,
    "decay-curve": _run_decay_curve,
    "fit-pole": _run_fit_pole,
    "smatrix-decompose": _run_smatrix_decompose,
}

_LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO,
               "debug": logging.DEBUG}


def _apply_overrides(config, args):
    def setpath(path, value):
        node = config
        parts = path.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value

    pairs = [("grid.kind", args.kind), ("grid.center", args.center),
             ("grid.half_width", args.half_width), ("grid.E_max", args.e_max),
             ("grid.n", args.n), ("resonance.E_R", args.e_r),
             ("resonance.Gamma", args.gamma), ("resonance.j", args.j),
             ("io.input_csv", args.input_csv), ("io.output_path", args.output),
             ("io.format", args.format), ("seed", args.seed)]
    for path, value in pairs:
        if value is not None:
            setpath(path, value)
    if args.t is not None:
        setpath("times", [args.t])
    elif args.t_min is not None or args.t_max is not None or args.steps is not None:
        if None in (args.t_min, args.t_max, args.steps):
            raise ConfigError("times: --t-min, --t-max, --steps must be given together")
        setpath("times", {"t_min": args.t_min, "t_max": args.t_max,
                           "steps": args.steps})
    if args.diagnostic:
        setpath("diagnostic", True)
    return config


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gamow-lab",
        description="Reproducible Hardy-space resonance experiments.")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--kind", choices=(g.FULL_LINE, g.HALF_LINE))
        sp.add_argument("--center", type=float)
        sp.add_argument("--half-width", type=float, dest="half_width")
        sp.add_argument("--e-max", type=float, dest="e_max")
        sp.add_argument("--n", type=int)
        sp.add_argument("--e-r", type=float, dest="e_r")
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--j", type=float)
        sp.add_argument("--t", type=float, help="single evolution time")
        sp.add_argument("--t-min", type=float, dest="t_min")
        sp.add_argument("--t-max", type=float, dest="t_max")
        sp.add_argument("--steps", type=int)
        sp.add_argument("--input-csv", dest="input_csv")
        sp.add_argument("--output", help="output file path")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--seed", type=int)
        sp.add_argument("--diagnostic", action="store_true", default=False)
    return parser


def main(argv=None):
    level_name = os.environ.get("GAMOW_LAB_LOG", "info")
    if level_name not in _LOG_LEVELS:
        print(f"GAMOW_LAB_LOG: {level_name!r} is not one of "
              f"{', '.join(_LOG_LEVELS)}", file=sys.stderr)
        return 2
    logging.basicConfig(level=_LOG_LEVELS[level_name],
                        format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        config = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    config = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"config: cannot read {args.config}: {exc}")
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config: invalid JSON in {args.config}: {exc}")
        config = _apply_overrides(config, args)
        if config.get("experiment", args.experiment) != args.experiment:
            raise ConfigError(
                f"experiment: config says {config['experiment']!r} but the "
                f"{args.experiment!r} subcommand was invoked")
        config["experiment"] = args.experiment
        validate_config(config)
        log.debug("validated config: %s", json.dumps(config, sort_keys=True))
        return _RUNNERS[args.experiment](config)
    except (DecompositionInconsistent, FitFailed) as exc:
        log.error("numerical contract violated: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GamowLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
