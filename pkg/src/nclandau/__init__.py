"""Landau levels and the noncommutative oscillator they map onto."""
from __future__ import annotations

from .landau import (
    E_CHARGE,
    HBAR,
    M_ELECTRON,
    Gauge,
    NormalizationMode,
    PhysicalParams,
    QuantumState,
    Sign,
    energy,
    energy_landau,
    energy_symmetric,
)
from .ncmap import NcParams, isomorphism_check, theta_from_B, zeta_from

__version__ = "0.1.0"

__all__ = [
    "E_CHARGE",
    "HBAR",
    "M_ELECTRON",
    "Gauge",
    "NormalizationMode",
    "PhysicalParams",
    "QuantumState",
    "Sign",
    "NcParams",
    "energy",
    "energy_landau",
    "energy_symmetric",
    "isomorphism_check",
    "theta_from_B",
    "zeta_from",
]
