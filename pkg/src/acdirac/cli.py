"""Command-line interface.

    acdirac [global flags] {spectrum,wavefunction,verify,sweep,figure} [flags]

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import warnings
from dataclasses import dataclass, field, fields
from fractions import Fraction

import numpy as np

from .core import ParameterError, PhysicalParams, QuantumNumbers, validate_params
from .csvout import render_csv, write_files_atomic
from .figures import FIGURE_IDS, PARAM_NAMES, LEVEL_COLUMNS, build_figure, level_fields
from .spectrum import SpectrumError, energy_level, normalize_on_grid, wavefunction

SWEEP_VARIABLES = ("alpha", "omega_AC", "Phi_AC", "N1", "omega", "m_l")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    alpha: float = 1.0
    M: float = 1.0
    omega: float = 1.0
    mu_tilde: float = 1.0
    lambda1: float = 0.0
    lambda2: float = 1.0
    N1: float = 1.0
    n: int = 0
    n_max: int = 2
    m_l: list = field(default_factory=lambda: [0.5])
    branch: str = "+"
    sweep: list = field(default_factory=list)
    values: list = field(default_factory=list)
    out: str | None = None
    figure: str | None = None
    r_max: float | None = None
    num_points: int = 80000
    richardson: bool = True
    wf_r_max: float = 60.0
    wf_points: int = 601
    normalize: bool = False
    plot_script: bool = False
    strict_ml: bool = False
    tolerance: float = 1e-3
    explicit: set = field(default_factory=set, repr=False)

    def params(self) -> PhysicalParams:
        return PhysicalParams(**{k: float(getattr(self, k)) for k in PARAM_NAMES})


_FIELD_NAMES = {f.name for f in fields(RunConfig)} - {"explicit"}


def _real(text: str) -> float:
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _global_flags(parser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=d, help="JSON file mirroring the run configuration")
    parser.add_argument("--out", default=d, help="output directory (stdout when omitted, except figure)")
    parser.add_argument("--strict-ml", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="reject m_l values that are not half-odd integers")
    parser.add_argument("--tolerance", type=float, default=d, help="relative tolerance for verify")


def _physics_flags(parser):
    g = parser.add_argument_group("physical parameters")
    g.add_argument("--alpha", type=_real)
    g.add_argument("--M", type=_real)
    g.add_argument("--omega", type=_real)
    g.add_argument("--mu-tilde", dest="mu_tilde", type=_real)
    g.add_argument("--lambda1", type=_real)
    g.add_argument("--lambda2", type=_real)
    g.add_argument("--N1", type=_real)


def _quantum_flags(parser, single_n=False):
    if single_n:
        parser.add_argument("--n", type=int)
    else:
        parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--ml", dest="m_l", type=_real, nargs="+", help="m_l values (fractions allowed)")


def _oracle_flags(parser):
    parser.add_argument("--r-max", dest="r_max", type=float)
    parser.add_argument("--num-points", dest="num_points", type=int)
    parser.add_argument("--no-richardson", dest="richardson", action="store_const", const=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acdirac", description=__doc__.splitlines()[0] if __doc__ else None)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energy levels")
    _physics_flags(p)
    _quantum_flags(p)
    p.add_argument("--branch", choices=["+", "-", "both"])

    p = sub.add_parser("wavefunction", help="sampled spinor radial components")
    _physics_flags(p)
    _quantum_flags(p, single_n=True)
    p.add_argument("--branch", choices=["+", "-"])
    p.add_argument("--r-max", dest="wf_r_max", type=float)
    p.add_argument("--points", dest="wf_points", type=int)
    p.add_argument("--normalize", action="store_const", const=True)

    p = sub.add_parser("verify", help="cross-check closed-form energies with the finite-difference oracle")
    _physics_flags(p)
    _quantum_flags(p)
    _oracle_flags(p)

    p = sub.add_parser("sweep", help="energies along one swept parameter")
    _physics_flags(p)
    _quantum_flags(p)
    p.add_argument("--vary", dest="sweep", action="append", choices=SWEEP_VARIABLES)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--values", type=_real, nargs="+")
    grid.add_argument("--range", dest="range_", type=float, nargs=3, metavar=("START", "STOP", "NUM"))

    p = sub.add_parser("figure", help="CSV data for one published figure panel")
    p.add_argument("figure", choices=FIGURE_IDS)
    _physics_flags(p)
    p.add_argument("--plot-script", dest="plot_script", action="store_const", const=True,
                   help="also write a gnuplot script next to the CSV")

    # let "-3/2" be read as a value rather than an option
    negative = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$")
    parser._negative_number_matcher = negative
    for sp in sub.choices.values():
        _global_flags(sp, suppress=True)
        sp._negative_number_matcher = negative
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        oracle = data.pop("oracle", {})
        data.update(oracle)
        unknown = set(data) - _FIELD_NAMES
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for k, v in data.items():
            setattr(cfg, k, v)
        cfg.explicit.update(data)
    flags = vars(args)
    for k, v in flags.items():
        if k in _FIELD_NAMES and v is not None and k != "strict_ml":
            setattr(cfg, k, v)
            cfg.explicit.add(k)
    if flags.get("strict_ml"):
        cfg.strict_ml = True
    if flags.get("range_") is not None:
        start, stop, num = flags["range_"]
        if num != int(num) or num < 1:
            raise ConfigError("--range NUM must be a positive integer")
        cfg.values = [float(v) for v in np.linspace(start, stop, int(num))]
    if isinstance(cfg.m_l, (int, float)):
        cfg.m_l = [cfg.m_l]
    if isinstance(cfg.sweep, str):
        cfg.sweep = [cfg.sweep]
    return cfg


def _validate(cfg: RunConfig, n_values) -> PhysicalParams:
    p = cfg.params()
    validate_params(p)
    for ml in cfg.m_l:
        for n in n_values:
            validate_params(p, QuantumNumbers(n, float(ml)), strict=cfg.strict_ml)
    return p


def _emit(cfg: RunConfig, filename: str, text: str, stdout) -> None:
    if cfg.out is None:
        stdout.write(text)
    else:
        write_files_atomic({os.path.join(cfg.out, filename): text})


def _param_comments(p: PhysicalParams) -> list[str]:
    return [f"param {k} = {getattr(p, k)!r}" for k in PARAM_NAMES]


def cmd_spectrum(cfg: RunConfig, stdout) -> int:
    if cfg.n_max < 0:
        raise ConfigError("n_max must be non-negative")
    p = _validate(cfg, [0])
    branches = ["+", "-"] if cfg.branch == "both" else [cfg.branch]
    rows = []
    for n in range(cfg.n_max + 1):
        for ml in cfg.m_l:
            for b in branches:
                lev = energy_level(p, n, float(ml), b, strict=cfg.strict_ml)
                rows.append([n, float(ml), b, lev.E, lev.tau1, lev.admissible])
    text = render_csv(["acdirac spectrum", *_param_comments(p)],
                      ["n", "m_l", "branch", "E", "tau1", "admissible"], rows)
    _emit(cfg, "spectrum.csv", text, stdout)
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig, stdout) -> int:
    if cfg.wf_points < 2 or not cfg.wf_r_max > 0:
        raise ConfigError("wavefunction grid needs r_max > 0 and at least 2 points")
    if len(cfg.m_l) != 1:
        raise ConfigError("wavefunction takes exactly one m_l value")
    ml = float(cfg.m_l[0])
    p = _validate(cfg, [cfg.n])
    wf = wavefunction(p, cfg.n, ml, cfg.branch, strict=cfg.strict_ml)
    grid = np.linspace(0.0, cfg.wf_r_max, cfg.wf_points)
    up, low = wf.sample(grid)
    comments = [f"acdirac wavefunction n={cfg.n} m_l={ml!r} branch={cfg.branch} E={wf.level.E!r}",
                *_param_comments(p)]
    if cfg.normalize:
        up, scale = normalize_on_grid(up, grid)
        low = low * scale
        comments.append(f"normalized: sum |psi_+|^2 r dr = 1, scale = {scale!r}")
    rows = [[float(r), float(a), float(b)] for r, a, b in zip(grid, up, low)]
    _emit(cfg, "wavefunction.csv", render_csv(comments, ["r", "psi_upper", "psi_lower"], rows), stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, stdout) -> int:
    from .oracle import OracleConfig, verify_closed_form

    if cfg.n_max < 0:
        raise ConfigError("n_max must be non-negative")
    p = _validate(cfg, [0])
    try:
        ocfg = OracleConfig(r_max=cfg.r_max, num_points=int(cfg.num_points), richardson=bool(cfg.richardson))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = []
    ok = True
    for ml in cfg.m_l:
        rep = verify_closed_form(p, float(ml), cfg.n_max, ocfg, tolerance=cfg.tolerance)
        stdout.write(rep.render() + "\n")
        ok = ok and rep.passed
        for lv in rep.levels:
            rows.append([float(ml), lv.n, lv.E2_closed, lv.E2_oracle, lv.rel_error, lv.status, lv.note,
                         rep.r_max, rep.num_points])
    if cfg.out is not None:
        text = render_csv(
            ["acdirac verify", f"tolerance = {cfg.tolerance!r}", f"richardson = {cfg.richardson}",
             *_param_comments(p)],
            ["m_l", "n", "E2_closed", "E2_oracle", "rel_error", "status", "note", "r_max", "num_points"],
            rows,
        )
        write_files_atomic({os.path.join(cfg.out, "verify.csv"): text})
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _sweep_point(p: PhysicalParams, var: str, value: float, m_l: float):
    if var in ("alpha", "N1", "omega"):
        return p.with_(**{var: value}), m_l
    if var == "m_l":
        return p, value
    if p.mu_tilde == 0.0:
        raise ConfigError(f"sweeping {var} requires mu_tilde != 0")
    if var == "omega_AC":
        return p.with_(lambda2=value * p.M / p.mu_tilde), m_l
    if var == "Phi_AC":
        return p.with_(lambda1=value / (4.0 * math.pi * p.alpha * p.mu_tilde)), m_l
    raise ConfigError(f"unknown sweep variable {var!r}")


def cmd_sweep(cfg: RunConfig, stdout) -> int:
    if len(cfg.sweep) != 1:
        raise ConfigError("exactly one sweep variable is required (use --vary once)")
    var = cfg.sweep[0]
    if var not in SWEEP_VARIABLES:
        raise ConfigError(f"unknown sweep variable {var!r}")
    values = [float(v) for v in cfg.values]
    if not values:
        raise ConfigError("sweep grid is empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("sweep grid must be strictly increasing")
    if cfg.n_max < 0:
        raise ConfigError("n_max must be non-negative")
    base = cfg.params()
    m_ls = [None] if var == "m_l" else [float(ml) for ml in cfg.m_l]
    rows = []
    for v in values:
        for n in range(cfg.n_max + 1):
            for ml in m_ls:
                p, ml_eff = _sweep_point(base, var, v, ml)
                validate_params(p, QuantumNumbers(n, ml_eff), strict=cfg.strict_ml)
                rows.append([v, n, ml_eff, *level_fields(p, n, ml_eff)])
    text = render_csv(["acdirac sweep", f"vary = {var}", *_param_comments(base)],
                      [var, "n", "m_l"] + LEVEL_COLUMNS, rows)
    _emit(cfg, "sweep.csv", text, stdout)
    return EXIT_OK


def cmd_figure(cfg: RunConfig, stdout, overrides: dict) -> int:
    table = build_figure(cfg.figure, overrides)
    out = cfg.out if cfg.out is not None else "."
    files = {os.path.join(out, table.filename): table.to_csv()}
    if cfg.plot_script:
        files[os.path.join(out, f"{table.figure_id}.gp")] = table.gnuplot_script()
    for path in write_files_atomic(files):
        stdout.write(path + "\n")
    return EXIT_OK


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            return _dispatch(args, stdout)
        except (ConfigError, ParameterError, SpectrumError) as exc:
            stderr.write(f"error: {exc}\n")
            return EXIT_CONFIG
        finally:
            seen = set()
            for w in caught:
                msg = str(w.message)
                if msg not in seen:
                    seen.add(msg)
                    stderr.write(f"warning: {msg}\n")


def _dispatch(args, stdout) -> int:
    cfg = load_config(args)
    if args.command == "spectrum":
        return cmd_spectrum(cfg, stdout)
    if args.command == "wavefunction":
        return cmd_wavefunction(cfg, stdout)
    if args.command == "verify":
        return cmd_verify(cfg, stdout)
    if args.command == "sweep":
        return cmd_sweep(cfg, stdout)
    overrides = {k: getattr(cfg, k) for k in PARAM_NAMES if k in cfg.explicit}
    return cmd_figure(cfg, stdout, overrides)


if __name__ == "__main__":
    sys.exit(main())
