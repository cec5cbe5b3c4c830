"""Data behind the five published figure panels, as CSV tables.

Each panel carries its caption parameters as defaults. Values the captions
leave open are filled with implementation-chosen defaults and labeled as
such in the CSV comment block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import PhysicalParams, derive_secondary_parameters
from .csvout import render_csv
from .spectrum import SpectrumError, energy_level, normalize_on_grid, wavefunction

FIGURE_IDS = ("fig1", "fig2-left", "fig2-right", "fig3-left", "fig3-right")

CAPTION = "caption"
CHOSEN = "implementation-chosen"
OVERRIDE = "override"

PARAM_NAMES = ("alpha", "M", "omega", "mu_tilde", "lambda1", "lambda2", "N1")


@dataclass
class FigureTable:
    figure_id: str
    xlabel: str
    ylabel: str
    curve_column: str
    x_column: str
    y_column: str
    curve_values: list
    provenance: list = field(default_factory=list)  # (name, value, source)
    header: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def filename(self) -> str:
        return f"{self.figure_id}.csv"

    def to_csv(self) -> str:
        comments = [f"acdirac figure {self.figure_id}", "positive energy branch"]
        comments += [f"param {name} = {_fmt(value)} ({source})" for name, value, source in self.provenance]
        return render_csv(comments, self.header, self.rows)

    def gnuplot_script(self) -> str:
        idx = {name: i + 1 for i, name in enumerate(self.header)}
        c, x, y = idx[self.curve_column], idx[self.x_column], idx[self.y_column]
        lines = [
            f"# gnuplot script for {self.figure_id}.csv",
            "set datafile separator ','",
            "set terminal pngcairo size 800,600",
            f"set output '{self.figure_id}.png'",
            f"set xlabel '{self.xlabel}'",
            f"set ylabel '{self.ylabel}'",
            "set key outside right",
        ]
        parts = []
        for v in self.curve_values:
            parts.append(
                f"'{self.filename}' every ::1 using {x}:(abs(column({c})-({_fmt(v)}))<1e-12 ? column({y}) : NaN)"
                f" with lines title '{self.curve_column}={_fmt(v)}'"
            )
        lines.append("plot " + ", \\\n     ".join(parts))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _params(defaults: dict, overrides: dict, chosen=()) -> tuple[PhysicalParams, list]:
    values = dict(defaults)
    prov = []
    for name in PARAM_NAMES:
        if name in overrides and overrides[name] is not None:
            values[name] = float(overrides[name])
            prov.append((name, values[name], OVERRIDE))
        elif name in values:
            prov.append((name, values[name], CHOSEN if name in chosen else CAPTION))
    return PhysicalParams(**{k: float(v) for k, v in values.items() if k in PARAM_NAMES}), prov


def level_fields(p: PhysicalParams, n: int, m_l: float):
    """(E, tau1, tau2, admissible, status) for the positive branch; NaN on failure."""
    try:
        lev = energy_level(p, n, m_l, "+")
    except SpectrumError as exc:
        return math.nan, math.nan, math.nan, False, type(exc).__name__
    return lev.E, lev.tau1, lev.tau2, lev.admissible, "ok"


LEVEL_COLUMNS = ["E", "tau1", "tau2", "admissible", "status"]


def figure_fig1(overrides: dict) -> FigureTable:
    base = dict(alpha=0.8, M=1.0, omega=1.0, mu_tilde=2.0, lambda1=-1.0, lambda2=1.0)
    p0, prov = _params(base, overrides)
    n, m_l = 3, 1.0
    N1_values = [0.5, 1.0, 1.5, 2.0]
    if overrides.get("N1") is not None:
        N1_values = [float(overrides["N1"])]
        prov.append(("N1 set", N1_values, OVERRIDE))
    else:
        prov.append(("N1 set", N1_values, CHOSEN))
    prov += [("n", n, CAPTION), ("m_l", m_l, CAPTION)]
    grid = np.linspace(0.0, 40.0, 401)
    prov.append(("r grid", "linspace(0, 40, 401)", CHOSEN))
    prov.append(("normalization", "sum |psi|^2 r dr = 1 (trapezoid) in psi_upper_normalized", CHOSEN))
    table = FigureTable(
        "fig1", "r", "psi_+(r)", "N1", "r", "psi_upper_normalized", N1_values, prov,
        header=["N1", "r", "psi_upper", "psi_upper_normalized"],
    )
    for N1 in N1_values:
        wf = wavefunction(p0.with_(N1=N1), n, m_l)
        psi = wf.upper(grid)
        psi_n, _ = normalize_on_grid(psi, grid)
        table.rows += [[N1, float(r), float(a), float(b)] for r, a, b in zip(grid, psi, psi_n)]
    return table


def figure_fig2_left(overrides: dict) -> FigureTable:
    base = dict(M=0.2, omega=1.0, mu_tilde=2.0, lambda1=-0.01, lambda2=5.0, N1=-3.0)
    p0, prov = _params(base, overrides)
    m_l = 2.0
    ns = [1, 2, 3, 4, 5]
    alphas = [k / 100 for k in range(10, 101)]
    prov += [("m_l", m_l, CAPTION), ("n set", ns, CAPTION), ("alpha grid", "0.10:0.01:1.00", CHOSEN)]
    table = FigureTable(
        "fig2-left", "alpha", "E", "n", "alpha", "E", ns, prov, header=["n", "alpha"] + LEVEL_COLUMNS
    )
    for n in ns:
        for a in alphas:
            table.rows.append([n, a, *level_fields(p0.with_(alpha=a), n, m_l)])
    return table


def figure_fig2_right(overrides: dict) -> FigureTable:
    base = dict(alpha=0.2, M=0.2, omega=1.0, lambda1=-0.01, lambda2=0.5, N1=-3.0)
    p0, prov = _params(base, overrides)
    m_l = 2.0
    mus = [1.0, 2.0, 3.0, 4.0, 5.0]
    if overrides.get("mu_tilde") is not None:
        mus = [float(overrides["mu_tilde"])]
    prov += [("m_l", m_l, CAPTION), ("mu_tilde set", mus, CHOSEN if overrides.get("mu_tilde") is None else OVERRIDE),
             ("n range", "0..10", CHOSEN)]
    table = FigureTable(
        "fig2-right", "n", "E", "mu_tilde", "n", "E", mus, prov,
        header=["mu_tilde", "omega_AC", "Phi_AC", "n"] + LEVEL_COLUMNS,
    )
    for mu in mus:
        p = p0.with_(mu_tilde=mu)
        sec = derive_secondary_parameters(p)
        for n in range(11):
            table.rows.append([mu, sec.omega_AC, sec.Phi_AC, n, *level_fields(p, n, m_l)])
    return table


def figure_fig3_left(overrides: dict) -> FigureTable:
    base = dict(alpha=0.2, M=0.2, omega=1.0, lambda1=0.1, lambda2=0.5, N1=-3.0)
    p0, prov = _params(base, overrides)
    m_l, n = 2.0, 3
    mus = [1.0, 2.0, 3.0, 4.0, 5.0]
    if overrides.get("mu_tilde") is not None:
        mus = [float(overrides["mu_tilde"])]
    omegas = [k / 10 for k in range(0, 101)]
    prov += [
        ("m_l", m_l, CAPTION), ("n", n, CAPTION),
        ("mu_tilde set", mus, CHOSEN if overrides.get("mu_tilde") is None else OVERRIDE),
        ("omega_AC grid", "0.0:0.1:10.0 (lambda2 = omega_AC*M/mu_tilde, replacing the fixed lambda2)", CHOSEN),
    ]
    table = FigureTable(
        "fig3-left", "omega_AC", "E", "mu_tilde", "omega_AC", "E", mus, prov,
        header=["mu_tilde", "Phi_AC", "omega_AC", "lambda2"] + LEVEL_COLUMNS,
    )
    for mu in mus:
        for w in omegas:
            p = p0.with_(mu_tilde=mu, lambda2=w * p0.M / mu)
            Phi = derive_secondary_parameters(p).Phi_AC
            table.rows.append([mu, Phi, w, p.lambda2, *level_fields(p, n, m_l)])
    return table


def figure_fig3_right(overrides: dict) -> FigureTable:
    base = dict(alpha=0.2, M=0.2, omega=1.0, mu_tilde=2.0, lambda1=-0.01, lambda2=5.0)
    p0, prov = _params(base, overrides, chosen=("mu_tilde",))
    m_l = 2.0
    ns = [1, 2, 3, 4, 5]
    N1s = [k / 10 for k in range(-50, 51)]
    prov += [("m_l", m_l, CAPTION), ("n set", ns, CAPTION), ("N1 grid", "-5.0:0.1:5.0", CHOSEN)]
    table = FigureTable(
        "fig3-right", "N1", "E", "n", "N1", "E", ns, prov, header=["n", "N1"] + LEVEL_COLUMNS
    )
    for n in ns:
        for N1 in N1s:
            table.rows.append([n, N1, *level_fields(p0.with_(N1=N1), n, m_l)])
    return table


_BUILDERS = {
    "fig1": figure_fig1,
    "fig2-left": figure_fig2_left,
    "fig2-right": figure_fig2_right,
    "fig3-left": figure_fig3_left,
    "fig3-right": figure_fig3_right,
}


def build_figure(figure_id: str, overrides: dict | None = None) -> FigureTable:
    try:
        builder = _BUILDERS[figure_id]
    except KeyError:
        raise ValueError(f"unknown figure id {figure_id!r}; expected one of {', '.join(FIGURE_IDS)}") from None
    return builder(dict(overrides or {}))
