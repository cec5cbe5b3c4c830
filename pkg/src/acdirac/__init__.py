"""Generalized Dirac oscillator with a Coulomb-type coupling under
Aharonov-Casher and cosmic-string effects: closed-form spectra via the
Nikiforov-Uvarov method and a finite-difference cross-check."""

from .core import (
    NonHalfIntegerWarning,
    ParameterError,
    PhysicalParams,
    QuantumNumbers,
    RadialCoefficients,
    SecondaryParams,
    coupling_chi,
    derive_secondary_parameters,
    radial_coefficients,
    tau1_from_energy,
    validate_params,
)
from .spectrum import (
    EnergyLevel,
    RadialWavefunction,
    energy_level,
    normalize_on_grid,
    psi_lower,
    psi_upper,
    spectrum_table,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "EnergyLevel",
    "NonHalfIntegerWarning",
    "ParameterError",
    "PhysicalParams",
    "QuantumNumbers",
    "RadialCoefficients",
    "RadialWavefunction",
    "SecondaryParams",
    "coupling_chi",
    "derive_secondary_parameters",
    "energy_level",
    "normalize_on_grid",
    "psi_lower",
    "psi_upper",
    "radial_coefficients",
    "spectrum_table",
    "tau1_from_energy",
    "validate_params",
    "wavefunction",
]
