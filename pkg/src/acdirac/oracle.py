"""Finite-difference eigensolver used to cross-check the closed-form spectrum.

The radial equation for psi_+ with a generic potential function f(r) is
brought to Liouville normal form with u = r**a psi_+, a = (1-alpha)/(2 alpha),
giving

    -u'' + V_eff(r) u = E**2 u.

It is discretized with second-order central differences on a uniform grid
with Dirichlet ends, and the lowest eigenvalues of the resulting symmetric
tridiagonal matrix are found by Sturm-sequence bisection. Nothing in the
eigenvalue path uses the closed-form energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .core import PhysicalParams, continuum_threshold, coupling_chi, derive_secondary_parameters


@dataclass(frozen=True)
class PotentialSpec:
    """The Dirac-oscillator potential function f(r).

    Use :meth:`coulomb`, :meth:`linear` or :meth:`tabulated` to build one.
    """

    kind: str
    N1: float = 0.0
    r_table: tuple = ()
    f_table: tuple = ()

    @classmethod
    def coulomb(cls, N1: float) -> "PotentialSpec":
        return cls(kind="coulomb", N1=float(N1))

    @classmethod
    def linear(cls) -> "PotentialSpec":
        return cls(kind="linear")

    @classmethod
    def tabulated(cls, r, f) -> "PotentialSpec":
        r = tuple(float(v) for v in r)
        f = tuple(float(v) for v in f)
        if len(r) < 3 or len(r) != len(f):
            raise ValueError("tabulated potential needs matching r and f with at least 3 points")
        if np.any(np.diff(r) <= 0.0):
            raise ValueError("tabulated r grid must be strictly increasing")
        return cls(kind="tabulated", r_table=r, f_table=f)

    def values(self, r):
        """Return (f(r), f'(r))."""
        r = np.asarray(r, dtype=float)
        if self.kind == "coulomb":
            return self.N1 / r, -self.N1 / (r * r)
        if self.kind == "linear":
            return r.copy(), np.ones_like(r)
        if self.kind == "tabulated":
            rt = np.asarray(self.r_table)
            ft = np.asarray(self.f_table)
            dft = np.gradient(ft, rt)
            return np.interp(r, rt, ft), np.interp(r, rt, dft)
        raise ValueError(f"unknown potential kind {self.kind!r}")


@dataclass(frozen=True)
class OracleConfig:
    """Grid settings for the finite-difference oracle.

    ``r_max=None`` selects 400, enlarged after a first pass when a computed
    level decays too slowly for the box (see :func:`verify_closed_form`).
    """

    r_max: float | None = None
    num_points: int = 80000
    k: int | None = None
    richardson: bool = True

    def __post_init__(self):
        if self.num_points < 100:
            raise ValueError("num_points must be at least 100")
        if self.r_max is not None and not self.r_max > 0.0:
            raise ValueError("r_max must be positive")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be at least 1")


DEFAULT_R_MAX = 400.0


def effective_potential(p: PhysicalParams, m_l: float, f: PotentialSpec, r):
    """V_eff(r) of the Liouville-transformed problem -u'' + V_eff u = E**2 u."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("effective potential requires r > 0")
    omega_AC = derive_secondary_parameters(p).omega_AC
    chi = coupling_chi(p, m_l)
    M, w = p.M, p.omega
    fv, fp = f.values(r)
    g = w * fv - 0.5 * omega_AC
    cent = (1.0 / (2.0 * p.alpha) - 1.0) ** 2 + chi - 0.25 - chi * chi
    a = (1.0 - p.alpha) / (2.0 * p.alpha)
    out = M * M + M * M * g * g - M * w * fp - 2.0 * chi * M * g / r - cent / (r * r) - (a - a * a) / (r * r)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Tridiagonal:
    """Symmetric tridiagonal matrix with its grid."""

    diag: np.ndarray
    offdiag: np.ndarray
    grid: np.ndarray
    h: float

    @property
    def size(self) -> int:
        return self.diag.size


def tridiagonal_from_potential(v, r_max: float, num_points: int) -> Tridiagonal:
    """Dirichlet discretization of -u'' + v(r) u on (0, r_max) with interior nodes i*h."""
    h = r_max / (num_points + 1)
    grid = h * np.arange(1, num_points + 1, dtype=float)
    vals = v(grid) if callable(v) else np.asarray(v, dtype=float)
    inv_h2 = 1.0 / (h * h)
    diag = 2.0 * inv_h2 + vals
    off = np.full(num_points - 1, -inv_h2)
    return Tridiagonal(diag=diag, offdiag=off, grid=grid, h=h)


def fd_hamiltonian(p: PhysicalParams, m_l: float, f: PotentialSpec, cfg: OracleConfig) -> Tridiagonal:
    r_max = DEFAULT_R_MAX if cfg.r_max is None else cfg.r_max
    return tridiagonal_from_potential(lambda r: effective_potential(p, m_l, f, r), r_max, cfg.num_points)


@njit(cache=True)
def _sturm_count(d, e2, x, pivmin):
    # number of eigenvalues strictly below x
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, d.size):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect_lowest(d, e2, k, lo, hi, rtol, pivmin):
    out = np.empty(k)
    for j in range(k):
        a = lo
        b = hi
        while True:
            mid = 0.5 * (a + b)
            tol = rtol * max(1.0, abs(a), abs(b))
            if b - a <= tol or mid <= a or mid >= b:
                break
            if _sturm_count(d, e2, mid, pivmin) > j:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        # eigenvalue j+1 is not below eigenvalue j
        lo = a
    return out


def sturm_count(op: Tridiagonal, x: float) -> int:
    """Number of eigenvalues of ``op`` strictly below ``x``."""
    e2 = op.offdiag * op.offdiag
    return int(_sturm_count(op.diag, e2, float(x), _pivmin(e2)))


def _pivmin(e2) -> float:
    return np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)


def fd_eigenvalues(op: Tridiagonal, k: int, rtol: float = 1e-10) -> np.ndarray:
    """The k algebraically smallest eigenvalues by Sturm-sequence bisection.

    Each eigenvalue is bracketed to a width of ``rtol * max(1, |lambda|)``.
    """
    if not 1 <= k <= op.size:
        raise ValueError(f"k must lie in [1, {op.size}], got {k}")
    d = np.ascontiguousarray(op.diag, dtype=float)
    off = np.abs(np.asarray(op.offdiag, dtype=float))
    e2 = off * off
    radius = np.zeros_like(d)
    radius[:-1] += off
    radius[1:] += off
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    pad = 2.0 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0)
    return _bisect_lowest(d, e2, int(k), lo - pad, hi + pad, float(rtol), _pivmin(e2))


@dataclass(frozen=True)
class LevelCheck:
    n: int
    E2_closed: float | None
    E2_oracle: float | None
    rel_error: float | None
    status: str  # PASS, FAIL or SKIPPED
    note: str = ""


@dataclass
class VerificationReport:
    m_l: float
    levels: list[LevelCheck]
    tolerance: float
    r_max: float | None = None
    num_points: int | None = None
    h: float | None = None
    richardson: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(lv.status != "FAIL" for lv in self.levels)

    def render(self) -> str:
        lines = [
            f"verification m_l={self.m_l:g} tolerance={self.tolerance:g} r_max={self.r_max} "
            f"num_points={self.num_points} richardson={self.richardson}"
        ]
        for lv in self.levels:
            if lv.status == "SKIPPED":
                lines.append(f"  n={lv.n}  SKIPPED  {lv.note}")
            else:
                lines.append(
                    f"  n={lv.n}  {lv.status}  E2_closed={lv.E2_closed:.12g}  "
                    f"E2_oracle={lv.E2_oracle:.12g}  rel_err={lv.rel_error:.3e}"
                )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def oracle_levels(p: PhysicalParams, m_l: float, f: PotentialSpec, k: int, r_max: float,
                  num_points: int, richardson: bool) -> np.ndarray:
    """Lowest k values of E**2 from the finite-difference problem.

    With ``richardson`` the grid is refined to h/2 (2N+1 interior points, so
    nodes nest) and the two results are combined as (4 lam_h/2 - lam_h)/3.
    """
    cfg = OracleConfig(r_max=r_max, num_points=num_points)
    lam = fd_eigenvalues(fd_hamiltonian(p, m_l, f, cfg), k)
    if not richardson:
        return lam
    fine = OracleConfig(r_max=r_max, num_points=2 * num_points + 1)
    lam_fine = fd_eigenvalues(fd_hamiltonian(p, m_l, f, fine), k)
    return (4.0 * lam_fine - lam) / 3.0


MAX_AUTO_POINTS = 2_000_000


def _auto_box(p, m_l, f, k, num_points):
    # enlarge the box until every requested level has >= 40 decay lengths inside it,
    # keeping h fixed; decay rates come from the oracle's own eigenvalues
    r_max = DEFAULT_R_MAX
    h = r_max / (num_points + 1)
    threshold = continuum_threshold(p)
    for _ in range(4):
        lam = fd_eigenvalues(fd_hamiltonian(p, m_l, f, OracleConfig(r_max=r_max, num_points=num_points)), k)
        gap = threshold - float(lam[-1])
        if gap <= 0.0:
            break
        needed = 40.0 / math.sqrt(gap)
        if needed <= r_max:
            break
        r_max = needed
        num_points = int(math.ceil(r_max / h)) - 1
        if num_points > MAX_AUTO_POINTS:
            num_points = MAX_AUTO_POINTS
            break
    return r_max, num_points


def verify_closed_form(p: PhysicalParams, m_l: float, n_max: int, cfg: OracleConfig | None = None,
                       tolerance: float = 1e-3) -> VerificationReport:
    """Compare closed-form E**2 with the (n+1)-th smallest oracle eigenvalue for n <= n_max.

    Levels without a bound state (tau2 <= 0) are reported as skipped and the
    oracle is not run for them.
    """
    from .core import radial_coefficients
    from .spectrum import SpectrumError, energy_level

    cfg = OracleConfig() if cfg is None else cfg
    tau2 = radial_coefficients(p, m_l).tau2
    closed = {}
    skipped = {}
    for n in range(n_max + 1):
        if not tau2 > 0.0:
            skipped[n] = f"no bound state expected (tau2={tau2:.6g} <= 0)"
            continue
        try:
            lev = energy_level(p, n, m_l)
        except SpectrumError as exc:
            skipped[n] = f"no bound state expected ({exc})"
            continue
        if not lev.admissible:
            skipped[n] = "no bound state expected (inadmissible level)"
            continue
        closed[n] = lev.E * lev.E

    report = VerificationReport(m_l=m_l, levels=[], tolerance=tolerance, richardson=cfg.richardson)
    if not closed:
        report.levels = [LevelCheck(n, None, None, None, "SKIPPED", skipped[n]) for n in range(n_max + 1)]
        return report

    f = PotentialSpec.coulomb(p.N1)
    k = cfg.k if cfg.k is not None else n_max + 1
    k = max(k, max(closed) + 1)
    if cfg.r_max is None:
        r_max, num_points = _auto_box(p, m_l, f, k, cfg.num_points)
    else:
        r_max, num_points = cfg.r_max, cfg.num_points
    lam = oracle_levels(p, m_l, f, k, r_max, num_points, cfg.richardson)

    report.r_max = r_max
    report.num_points = num_points
    report.h = r_max / (num_points + 1)
    for n in range(n_max + 1):
        if n in skipped:
            report.levels.append(LevelCheck(n, None, None, None, "SKIPPED", skipped[n]))
            continue
        e2c = closed[n]
        e2o = float(lam[n])
        rel = abs(e2o - e2c) / abs(e2c)
        report.levels.append(LevelCheck(n, e2c, e2o, rel, "PASS" if rel < tolerance else "FAIL"))
    return report
