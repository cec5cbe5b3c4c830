"""Parametric Nikiforov-Uvarov solver.

Handles second-order equations of the form

    psi'' + (beta1 - beta2 r) / (r (1 - beta3 r)) psi'
          + (-zeta1 r**2 + zeta2 r - zeta3) / (r (1 - beta3 r))**2 psi = 0.

The six inputs fix the derived constants beta4..beta13, a quantization
condition, and polynomial eigenfunctions (Jacobi for beta3 > 0, Laguerre in
the beta3 = 0 limit). zeta1 plays the role of the spectral unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .orthopoly import jacobi, laguerre


class NUInadmissibleError(ValueError):
    """Derived exponents are complex (beta8 < 0 or beta9 < 0)."""


class NoBoundStateError(ValueError):
    """The quantization condition has no root in the requested branch."""


@dataclass(frozen=True)
class NuCoefficients:
    beta1: float
    beta2: float
    beta3: float
    zeta1: float
    zeta2: float
    zeta3: float

    def __post_init__(self):
        if self.beta3 < 0.0:
            raise ValueError(f"beta3 must be non-negative, got {self.beta3}")

    @property
    def laguerre_limit(self) -> bool:
        # exact comparison on purpose: only a literal zero selects the limit form
        return self.beta3 == 0.0

    def with_zeta1(self, zeta1: float) -> "NuCoefficients":
        return NuCoefficients(self.beta1, self.beta2, self.beta3, zeta1, self.zeta2, self.zeta3)


@dataclass(frozen=True)
class NuDerived:
    beta4: float
    beta5: float
    beta6: float
    beta7: float
    beta8: float
    beta9: float
    beta10: float
    beta11: float
    beta12: float
    beta13: float


def derive_betas(c: NuCoefficients) -> NuDerived:
    b4 = 0.5 * (1.0 - c.beta1)
    b5 = 0.5 * (c.beta2 - 2.0 * c.beta3)
    b6 = b5 * b5 + c.zeta1
    b7 = 2.0 * b4 * b5 - c.zeta2
    b8 = b4 * b4 + c.zeta3
    b9 = c.beta3 * b7 + c.beta3 * c.beta3 * b8 + b6
    if b8 < 0.0 or b9 < 0.0:
        raise NUInadmissibleError(
            f"complex NU exponents / unphysical parameters (beta8={b8:.6g}, beta9={b9:.6g})"
        )
    s8 = math.sqrt(b8)
    s9 = math.sqrt(b9)
    return NuDerived(
        beta4=b4,
        beta5=b5,
        beta6=b6,
        beta7=b7,
        beta8=b8,
        beta9=b9,
        beta10=c.beta1 + 2.0 * b4 + 2.0 * s8,
        beta11=c.beta2 - 2.0 * b5 + 2.0 * (s9 + c.beta3 * s8),
        beta12=b4 + s8,
        beta13=b5 - s9 - c.beta3 * s8,
    )


def quantization_residual(c: NuCoefficients, n: int) -> float:
    """Left side of the NU eigenvalue condition; zero at an eigenvalue for level n.

    The beta3 term enters as ``+(2n+1)(sqrt(beta9) + beta3 sqrt(beta8))``, the
    sign for which the Jacobi-form eigenfunction solves the equation. At
    beta3 = 0 the sign is immaterial.
    """
    d = derive_betas(c)
    s8 = math.sqrt(d.beta8)
    s9 = math.sqrt(d.beta9)
    return (
        n * c.beta2
        - (2 * n + 1) * d.beta5
        + (2 * n + 1) * (s9 + c.beta3 * s8)
        + d.beta7
        + 2.0 * c.beta3 * d.beta8
        + 2.0 * math.sqrt(d.beta8 * d.beta9)
        + n * (n - 1) * c.beta3
    )


def solve_zeta1_closed(c: NuCoefficients, n: int) -> float:
    """Closed-form zeta1 for the Coulomb limit beta2 = beta3 = 0.

    The condition reduces to ``sqrt(zeta1) * (1 + 2n + 2 sqrt(beta8)) = zeta2``.
    """
    if c.beta2 != 0.0 or c.beta3 != 0.0:
        raise ValueError("closed form requires beta2 = beta3 = 0")
    if c.zeta2 <= 0.0:
        raise NoBoundStateError(f"no bound state in this branch: zeta2={c.zeta2} <= 0")
    b4 = 0.5 * (1.0 - c.beta1)
    b8 = b4 * b4 + c.zeta3
    if b8 < 0.0:
        raise NUInadmissibleError(f"complex NU exponents (beta8={b8:.6g})")
    denom = 1.0 + 2.0 * n + 2.0 * math.sqrt(b8)
    return (c.zeta2 / denom) ** 2


def solve_zeta1(c: NuCoefficients, n: int, lo: float | None = None, hi: float | None = None) -> float:
    """Find zeta1 solving the quantization condition by bracketed root finding.

    Works for general beta2, beta3. The search range starts at the smallest
    zeta1 keeping beta9 >= 0 (or ``lo``) and the upper end is doubled until
    the residual changes sign, up to 200 doublings.
    """
    b4 = 0.5 * (1.0 - c.beta1)
    b5 = 0.5 * (c.beta2 - 2.0 * c.beta3)
    b7 = 2.0 * b4 * b5 - c.zeta2
    b8 = b4 * b4 + c.zeta3
    if b8 < 0.0:
        raise NUInadmissibleError(f"complex NU exponents (beta8={b8:.6g})")
    # beta9 = zeta1 + (b5^2 + beta3 b7 + beta3^2 b8) must stay >= 0
    zmin = -(b5 * b5 + c.beta3 * b7 + c.beta3 * c.beta3 * b8)
    a = zmin if lo is None else max(lo, zmin)

    def f(z):
        return quantization_residual(c.with_zeta1(z), n)

    fa = f(a)
    if fa == 0.0:
        return a
    b = a + 1.0 if hi is None else hi
    fb = f(b)
    step = max(1.0, abs(a))
    for _ in range(200):
        if np.sign(fa) != np.sign(fb):
            break
        step *= 2.0
        b = a + step
        fb = f(b)
    else:
        raise NoBoundStateError(f"no sign change of the quantization residual for n={n}")
    return brentq(f, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)


def nu_eigenfunction(c: NuCoefficients, n: int, r):
    """Unnormalized NU eigenfunction of degree n at r.

    For beta3 > 0 this is the Jacobi form, valid on 0 <= r < 1/beta3; for
    beta3 = 0 it is ``r**beta12 * exp(beta13 r) * L_n^(beta10 - 1)(beta11 r)``.
    """
    d = derive_betas(c)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise ValueError("r must be non-negative")
    if c.laguerre_limit:
        out = r**d.beta12 * np.exp(d.beta13 * r) * laguerre(n, d.beta10 - 1.0, d.beta11 * r)
    else:
        if np.any(r >= 1.0 / c.beta3):
            raise ValueError(f"r must lie below 1/beta3 = {1.0 / c.beta3}")
        b3 = c.beta3
        out = (
            r**d.beta12
            * (1.0 - b3 * r) ** (-d.beta12 - d.beta13 / b3)
            * jacobi(n, d.beta10 - 1.0, d.beta11 / b3 - d.beta10 - 1.0, 1.0 - 2.0 * b3 * r)
        )
    return out[()] if np.ndim(out) == 0 else out
