"""Physical parameters and the effective coefficients of the radial equation.

All quantities are in natural units (hbar = c = G = 1). The radial equation
for the upper spinor component with the Coulomb-type potential function
f(r) = N1/r reads

    psi'' + (beta1/r) psi' + (-tau1 r**2 + tau2 r - tau3) / r**2 * psi = 0

with beta1 = (1 - alpha)/alpha. Only tau1 depends on the energy.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace


class ParameterError(ValueError):
    """Raised for physical or quantum-number inputs outside the supported domain."""


class NonHalfIntegerWarning(UserWarning):
    """m_l is not a half-odd integer; accepted because strict mode is off."""


@dataclass(frozen=True)
class PhysicalParams:
    """The seven physical inputs.

    Parameters
    ----------
    alpha : float
        Cosmic-string deficit parameter, in (0, 1].
    M : float
        Fermion mass.
    omega : float
        Dirac oscillator frequency.
    mu_tilde : float
        Permanent magnetic dipole moment.
    lambda1 : float
        Charge-filament parameter (generates the A-C phase).
    lambda2 : float
        Charged-cylinder parameter (generates the A-C frequency).
    N1 : float
        Coulomb strength of the potential function f(r) = N1/r.

    Notes
    -----
    lambda1 and lambda2 are free reals. The positivity of the underlying
    charge densities is not enforced since the reference figure settings use
    lambda1 < 0.
    """

    alpha: float = 1.0
    M: float = 1.0
    omega: float = 1.0
    mu_tilde: float = 1.0
    lambda1: float = 0.0
    lambda2: float = 1.0
    N1: float = 1.0

    def with_(self, **changes) -> "PhysicalParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class SecondaryParams:
    omega_AC: float
    Phi_AC: float


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m_l: float


@dataclass(frozen=True)
class RadialCoefficients:
    """Energy-independent coefficients of the radial equation."""

    tau2: float
    tau3: float
    beta1_drift: float
    chi: float


def derive_secondary_parameters(p: PhysicalParams) -> SecondaryParams:
    """A-C frequency ``mu_tilde*lambda2/M`` and A-C phase ``4*pi*alpha*mu_tilde*lambda1``."""
    omega_AC = p.mu_tilde * p.lambda2 / p.M
    Phi_AC = 4.0 * math.pi * p.alpha * p.mu_tilde * p.lambda1
    return SecondaryParams(omega_AC=omega_AC, Phi_AC=Phi_AC)


def coupling_chi(p: PhysicalParams, m_l: float) -> float:
    """Effective angular coupling ``m_l/alpha + Phi_AC/(2*pi*alpha)``.

    This is the only place where m_l and the A-C phase enter the radial
    problem, which is what makes the spectrum periodic under
    ``(m_l, Phi_AC) -> (m_l + 1, Phi_AC - 2*pi)``.
    """
    Phi_AC = derive_secondary_parameters(p).Phi_AC
    return m_l / p.alpha + Phi_AC / (2.0 * math.pi * p.alpha)


def radial_coefficients(p: PhysicalParams, m_l: float) -> RadialCoefficients:
    omega_AC = derive_secondary_parameters(p).omega_AC
    chi = coupling_chi(p, m_l)
    MwN = p.M * p.omega * p.N1
    tau2 = p.M**2 * p.omega * omega_AC * p.N1 - chi * p.M * omega_AC
    tau3 = (
        0.25
        - (1.0 / (2.0 * p.alpha) - 1.0) ** 2
        - chi
        + chi**2
        + MwN * (1.0 + MwN - 2.0 * chi)
    )
    beta1 = (1.0 - p.alpha) / p.alpha
    return RadialCoefficients(tau2=tau2, tau3=tau3, beta1_drift=beta1, chi=chi)


def continuum_threshold(p: PhysicalParams) -> float:
    """``M**2 (1 + omega_AC**2/4)``, the value of E**2 + tau1 for every energy."""
    omega_AC = derive_secondary_parameters(p).omega_AC
    return p.M * p.M * (1.0 + omega_AC * omega_AC / 4.0)


def tau1_from_energy(p: PhysicalParams, E: float) -> float:
    return continuum_threshold(p) - E * E


def centrifugal_order_squared(p: PhysicalParams, m_l: float) -> float:
    """``tau3 + (1/(2 alpha) - 1)**2``; its square root sets the Laguerre order."""
    rc = radial_coefficients(p, m_l)
    return rc.tau3 + (1.0 / (2.0 * p.alpha) - 1.0) ** 2


def is_half_odd_integer(m_l: float) -> bool:
    twice = 2.0 * m_l
    return twice == round(twice) and int(round(twice)) % 2 == 1


def validate_params(p: PhysicalParams, q: QuantumNumbers | None = None, strict: bool = False) -> None:
    """Check parameter ranges, raising :class:`ParameterError` on violation.

    With ``strict`` a non half-odd-integer m_l is an error; otherwise it only
    triggers :class:`NonHalfIntegerWarning`.
    """
    for name in ("alpha", "M", "omega", "mu_tilde", "lambda1", "lambda2", "N1"):
        value = getattr(p, name)
        if not math.isfinite(value):
            raise ParameterError(f"{name} must be finite, got {value!r}")
    if not (0.0 < p.alpha <= 1.0):
        raise ParameterError(f"alpha out of range (0,1]: {p.alpha}")
    if p.M <= 0.0:
        raise ParameterError(f"M must be positive: {p.M}")
    if p.omega < 0.0:
        raise ParameterError(f"omega must be non-negative: {p.omega}")
    if q is None:
        return
    if int(q.n) != q.n or q.n < 0:
        raise ParameterError(f"n must be a non-negative integer: {q.n}")
    if not math.isfinite(q.m_l):
        raise ParameterError(f"m_l must be finite, got {q.m_l!r}")
    if not is_half_odd_integer(q.m_l):
        if strict:
            raise ParameterError(f"m_l must be a half-odd integer in strict mode: {q.m_l}")
        warnings.warn(
            f"m_l={q.m_l} is not a half-odd integer; proceeding", NonHalfIntegerWarning, stacklevel=2
        )
