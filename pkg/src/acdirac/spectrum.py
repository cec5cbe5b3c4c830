"""Closed-form energy levels and spinor radial functions.

The radial equation maps onto the Nikiforov-Uvarov template with
beta1 = (1-alpha)/alpha, beta2 = beta3 = 0, zeta1 = tau1, zeta2 = tau2 and
zeta3 = tau3. Quantization gives

    E = +-sqrt(M**2 (1 + omega_AC**2/4) - tau2**2 / D**2),
    D = 1 + 2n + 2 sqrt(tau3 + (1/(2 alpha) - 1)**2),

and the upper component is

    psi_+(r) = r**beta12 exp(-sqrt(tau1) r) L_n^(2 sqrt(...))(2 sqrt(tau1) r).

The decay factor carries the r in the exponent (the Laguerre-limit form
requires exp(beta13 r) with beta13 = -sqrt(tau1)), and the squared
coefficient in the energy is tau2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    PhysicalParams,
    QuantumNumbers,
    continuum_threshold,
    derive_secondary_parameters,
    radial_coefficients,
    validate_params,
)
from .orthopoly import laguerre, laguerre_prime


class SpectrumError(ValueError):
    """Base class for levels that cannot be evaluated."""


class SupercriticalError(SpectrumError):
    """tau3 + (1/(2 alpha) - 1)**2 < 0: complex Laguerre order."""


class ImaginaryEnergyError(SpectrumError):
    """E**2 < 0: no real level."""


class InadmissibleLevelError(SpectrumError):
    """Level has no normalizable bound state (tau2 <= 0 or tau1 <= 0)."""


class SingularLowerComponentError(SpectrumError):
    """E = M, so the lower component cannot be reconstructed."""


def _branch_sign(branch) -> int:
    if branch in (1, "+", "+1", "plus"):
        return 1
    if branch in (-1, "-", "-1", "minus"):
        return -1
    raise ValueError(f"branch must be '+' or '-', got {branch!r}")


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    m_l: float
    branch: int
    E: float
    tau1: float
    tau2: float
    tau3: float
    order: float  # sqrt(tau3 + (1/(2 alpha) - 1)**2)
    admissible: bool

    @property
    def branch_label(self) -> str:
        return "+" if self.branch > 0 else "-"


def energy_level(p: PhysicalParams, n: int, m_l: float, branch="+", strict: bool = False) -> EnergyLevel:
    """Closed-form energy of level (n, m_l) on the requested branch.

    The formula is evaluated even when tau2 <= 0; such levels are returned
    with ``admissible=False`` since no normalizable bound state backs them.
    """
    sign = _branch_sign(branch)
    validate_params(p, QuantumNumbers(n, m_l), strict=strict)
    rc = radial_coefficients(p, m_l)
    order_sq = rc.tau3 + (1.0 / (2.0 * p.alpha) - 1.0) ** 2
    if order_sq < 0.0:
        raise SupercriticalError(f"supercritical centrifugal term, complex order (value {order_sq:.6g})")
    order = math.sqrt(order_sq)
    D = 1.0 + 2.0 * n + 2.0 * order
    tau1 = (rc.tau2 / D) ** 2
    E2 = continuum_threshold(p) - tau1
    if E2 < 0.0:
        raise ImaginaryEnergyError(f"imaginary energy, no real level (E^2={E2:.6g})")
    E = sign * math.sqrt(E2)
    return EnergyLevel(
        n=int(n),
        m_l=float(m_l),
        branch=sign,
        E=E,
        tau1=tau1,
        tau2=rc.tau2,
        tau3=rc.tau3,
        order=order,
        admissible=bool(rc.tau2 > 0.0 and tau1 > 0.0),
    )


@dataclass(frozen=True)
class RadialWavefunction:
    """Closed-form evaluator for the two spinor radial components of one level."""

    params: PhysicalParams
    level: EnergyLevel
    beta12: float
    decay: float
    laguerre_order: float

    def upper(self, r):
        r = np.asarray(r, dtype=float)
        k = self.decay
        out = r**self.beta12 * np.exp(-k * r) * laguerre(self.level.n, self.laguerre_order, 2.0 * k * r)
        return out[()] if out.ndim == 0 else out

    def upper_prime(self, r):
        r = np.asarray(r, dtype=float)
        out = self._rpow_m1(r) * np.exp(-self.decay * r) * self._upper_bracket(r)
        return out[()] if out.ndim == 0 else out

    def lower(self, r):
        """Lower component from the first-order equation acting on psi_+.

        psi_- = [-d/dr + (chi - a - M omega N1)/r + M omega_AC/2] psi_+ / (E - M)
        with a = (1 - alpha)/(2 alpha) and chi the effective angular coupling.
        """
        p, lev = self.params, self.level
        if lev.E == p.M:
            raise SingularLowerComponentError("lower component singular (zero-gap branch, E = M)")
        r = np.asarray(r, dtype=float)
        rc = radial_coefficients(p, lev.m_l)
        omega_AC = derive_secondary_parameters(p).omega_AC
        a = (1.0 - p.alpha) / (2.0 * p.alpha)
        c_inv = rc.chi - a - p.M * p.omega * p.N1
        c_const = 0.5 * p.M * omega_AC
        k = self.decay
        x = 2.0 * k * r
        L = laguerre(lev.n, self.laguerre_order, x)
        # r**(beta12-1) e^{-kr} [ -(beta12 - k r) L - 2 k r L' + c_inv L + c_const r L ]
        bracket = -self._upper_bracket(r) + (c_inv + c_const * r) * L
        out = self._rpow_m1(r) * np.exp(-k * r) * bracket / (lev.E - p.M)
        return out[()] if out.ndim == 0 else out

    def sample(self, grid):
        grid = np.asarray(grid, dtype=float)
        return self.upper(grid), self.lower(grid)

    def _upper_bracket(self, r):
        # r * d/dr [r**beta12 e^{-kr} L(2kr)] / (r**beta12 e^{-kr}), without the e^{-kr}
        k, n, a = self.decay, self.level.n, self.laguerre_order
        x = 2.0 * k * r
        return (self.beta12 - k * r) * laguerre(n, a, x) + x * laguerre_prime(n, a, x)

    def _rpow_m1(self, r):
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(r > 0.0, r ** (self.beta12 - 1.0), 0.0 if self.beta12 > 1.0 else np.inf)
        if self.beta12 == 1.0:
            out = np.where(r > 0.0, out, 1.0)
        return out


def wavefunction(p: PhysicalParams, n: int, m_l: float, branch="+", strict: bool = False) -> RadialWavefunction:
    lev = energy_level(p, n, m_l, branch, strict=strict)
    if not lev.admissible:
        raise InadmissibleLevelError(
            f"level n={n}, m_l={m_l} has no bound state (tau2={lev.tau2:.6g}, tau1={lev.tau1:.6g})"
        )
    decay = math.sqrt(lev.tau1)
    beta12 = 1.0 - 1.0 / (2.0 * p.alpha) + lev.order
    return RadialWavefunction(params=p, level=lev, beta12=beta12, decay=decay, laguerre_order=2.0 * lev.order)


def psi_upper(p: PhysicalParams, n: int, m_l: float, r):
    return wavefunction(p, n, m_l).upper(r)


def psi_lower(p: PhysicalParams, n: int, m_l: float, branch, r):
    return wavefunction(p, n, m_l, branch).lower(r)


def normalize_on_grid(samples, grid):
    """Scale samples so that the trapezoidal integral of |psi|**2 r dr is 1.

    Returns
    -------
    (numpy.ndarray, float)
        normalized samples and the scale factor applied
    """
    samples = np.asarray(samples, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or samples.shape != grid.shape:
        raise ValueError("grid must be 1-D with at least 2 points and match samples")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    norm2 = np.trapezoid(samples * samples * grid, grid)
    if not norm2 > 0.0:
        raise ValueError("cannot normalize: samples carry zero weight")
    scale = 1.0 / math.sqrt(norm2)
    return samples * scale, scale


def count_sign_changes(values) -> int:
    """Sign changes in a sampled function, ignoring exact zeros."""
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass
class SpectrumTable:
    levels: list[EnergyLevel]
    groups: list[list[int]] = field(default_factory=list)
    tol: float = 1e-10

    @property
    def degenerate_groups(self) -> list[list[int]]:
        return [g for g in self.groups if len(g) > 1]


def spectrum_table(p: PhysicalParams, n_max: int, m_l_values, branches=("+",), tol: float = 1e-10,
                   strict: bool = False) -> SpectrumTable:
    """All levels for n <= n_max over the m_l values, with a degeneracy report.

    Levels are ordered by (n, m_l, branch). Groups hold indices into
    ``levels`` of energies that chain together with spacing below ``tol``.
    """
    levels = [
        energy_level(p, n, ml, b, strict=strict)
        for n in range(n_max + 1)
        for ml in m_l_values
        for b in branches
    ]
    order = sorted(range(len(levels)), key=lambda i: (levels[i].E, i))
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(levels[i].E - levels[groups[-1][-1]].E) < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    groups = [sorted(g) for g in groups]
    groups.sort()
    return SpectrumTable(levels=levels, groups=groups, tol=tol)
