"""Landau problem: energies and eigenfunctions in the symmetric and Landau gauges.

All quantities are SI. The symmetric-gauge Hamiltonian is

    H = p^2/2mu + (e^2 B^2 / 8 mu) r^2 - s (eB / 2mu) L_z

and the first Landau gauge reads ``(p_x + s eB y)^2 / 2mu + p_y^2 / 2mu``,
where ``s = +1`` means ``qB = +eB`` and ``s = -1`` means ``qB = -eB``.
The second Landau gauge is ``p_x^2/2mu + (p_y - s eB x)^2 / 2mu``.

A Gaussian-units variant of the same Hamiltonian (``omega_c = eB / mu c``)
exists in the literature; it is not implemented, SI is used throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .special import hermite_phys, laguerre_assoc, ln_factorial

__all__ = [
    "HBAR",
    "E_CHARGE",
    "M_ELECTRON",
    "Gauge",
    "Sign",
    "NormalizationMode",
    "PhysicalParams",
    "QuantumState",
    "DegenerateLevel",
    "cyclotron_frequency",
    "magnetic_length",
    "energy_symmetric",
    "energy_landau",
    "energy",
    "eigenfunction_symmetric",
    "eigenfunction_landau",
    "landau_center",
    "degeneracy_listing",
]

# CODATA 2018
HBAR = 1.054571817e-34
E_CHARGE = 1.602176634e-19
M_ELECTRON = 9.1093837015e-31


class Gauge(enum.Enum):
    SYMMETRIC = "symmetric"
    LANDAU_FIRST = "landau1"
    LANDAU_SECOND = "landau2"

    @property
    def is_landau(self) -> bool:
        return self is not Gauge.SYMMETRIC


class Sign(enum.IntEnum):
    """Sign convention for the product qB."""

    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, value) -> "Sign":
        if isinstance(value, str):
            table = {"+": cls.PLUS, "+1": cls.PLUS, "1": cls.PLUS, "plus": cls.PLUS,
                     "-": cls.MINUS, "-1": cls.MINUS, "minus": cls.MINUS}
            try:
                return table[value.strip().lower()]
            except KeyError:
                raise ValueError(f"unknown sign convention {value!r}") from None
        return cls(int(value))


class NormalizationMode(enum.Enum):
    """How the Hermite argument of the Landau-gauge states is scaled.

    ``ORTHONORMAL`` uses ``sqrt(eB/hbar) (y - y0)``, the shifted-oscillator
    scale that makes the states orthonormal eigenfunctions.
    ``PAPER_LITERAL`` uses ``(eB/hbar) (y - y0)`` exactly as the formula is
    usually printed; it is not an eigenfunction and is kept for figure matching.
    """

    ORTHONORMAL = "orthonormal"
    PAPER_LITERAL = "paper"


@dataclass(frozen=True)
class PhysicalParams:
    """Particle mass ``mu`` [kg] and field strength ``B`` [T], plus constants."""

    mu: float = M_ELECTRON
    B: float = 12.0
    hbar: float = HBAR
    e: float = E_CHARGE

    def __post_init__(self):
        for name in ("mu", "B", "hbar", "e"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    def with_field(self, B: float) -> "PhysicalParams":
        return PhysicalParams(mu=self.mu, B=B, hbar=self.hbar, e=self.e)


@dataclass(frozen=True)
class QuantumState:
    """One eigenstate label.

    Symmetric-gauge states use ``(n_r, m_l)``; Landau-gauge states use
    ``(n_perp, k)`` where ``n_perp`` is ``n_y`` (first gauge) or ``n_x``
    (second gauge) and ``k`` [1/m] is the plane-wave number along the
    other axis. The unused pair is ignored.
    """

    gauge: Gauge = Gauge.SYMMETRIC
    sign: Sign = Sign.PLUS
    n_r: int = 0
    m_l: int = 0
    n_perp: int = 0
    k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "gauge", Gauge(self.gauge))
        object.__setattr__(self, "sign", Sign.parse(self.sign))
        if self.n_r < 0 or self.n_perp < 0:
            raise ValueError("radial/oscillator quantum numbers must be non-negative")
        if int(self.n_r) != self.n_r or int(self.m_l) != self.m_l or int(self.n_perp) != self.n_perp:
            raise ValueError("quantum numbers n_r, m_l, n_perp must be integers")

    @classmethod
    def symmetric(cls, n_r: int, m_l: int, sign=Sign.PLUS) -> "QuantumState":
        return cls(Gauge.SYMMETRIC, sign, n_r=n_r, m_l=m_l)

    @classmethod
    def landau(cls, n: int, k: float = 0.0, gauge=Gauge.LANDAU_FIRST, sign=Sign.PLUS) -> "QuantumState":
        gauge = Gauge(gauge)
        if not gauge.is_landau:
            raise ValueError("landau() needs a Landau gauge")
        return cls(gauge, sign, n_perp=n, k=float(k))

    def describe(self) -> dict:
        d = {"gauge": self.gauge.value, "sign": int(self.sign)}
        if self.gauge is Gauge.SYMMETRIC:
            d.update(n_r=int(self.n_r), m_l=int(self.m_l))
        else:
            d.update(n=int(self.n_perp), k=float(self.k))
        return d


def cyclotron_frequency(p: PhysicalParams) -> float:
    """``omega_c = eB / mu`` in rad/s."""
    return p.e * p.B / p.mu


def magnetic_length(p: PhysicalParams) -> float:
    """``l_B = sqrt(hbar / eB)`` in metres."""
    return math.sqrt(p.hbar / (p.e * p.B))


def _half_quantum(p: PhysicalParams) -> float:
    return p.hbar * p.e * p.B / (2.0 * p.mu)


def energy_symmetric(n_r: int, m_l: int, p: PhysicalParams, sign=Sign.PLUS) -> float:
    """Symmetric-gauge level ``(2 n_r + |m_l| + 1 - s m_l) hbar omega_c / 2`` [J]."""
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    s = int(Sign.parse(sign))
    return (2 * n_r + abs(m_l) + 1 - s * m_l) * _half_quantum(p)


def energy_landau(n_perp: int, p: PhysicalParams) -> float:
    """Landau-gauge level ``(2n + 1) hbar omega_c / 2`` [J]; no k or sign dependence."""
    if n_perp < 0:
        raise ValueError("n_perp must be non-negative")
    return (2 * n_perp + 1) * _half_quantum(p)


def energy(state: QuantumState, p: PhysicalParams) -> float:
    """Energy of any labelled state, dispatching on its gauge."""
    if state.gauge is Gauge.SYMMETRIC:
        return energy_symmetric(state.n_r, state.m_l, p, state.sign)
    return energy_landau(state.n_perp, p)


def eigenfunction_symmetric(state: QuantumState, p: PhysicalParams, r, phi,
                            mode: NormalizationMode = NormalizationMode.ORTHONORMAL):
    """Symmetric-gauge eigenfunction in polar coordinates [1/m].

    The expression is already normalized, so `mode` has no effect here; it
    is accepted so callers can treat both gauges uniformly. The same form
    holds for both sign conventions.
    """
    if state.gauge is not Gauge.SYMMETRIC:
        raise ValueError("eigenfunction_symmetric needs a symmetric-gauge state")
    return _symmetric_wavefunction(state.n_r, state.m_l, p.e * p.B / p.hbar, r, phi)


def _symmetric_wavefunction(n_r: int, m_l: int, eb_over_hbar: float, r, phi):
    # shared by the Landau side (eB/hbar) and the oscillator side (4/theta)
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    am = abs(int(m_l))
    u = 0.5 * eb_over_hbar * r * r
    log_pref = (-0.5 * math.log(2.0 * math.pi) + 0.5 * math.log(eb_over_hbar)
                + 0.5 * (ln_factorial(n_r) - ln_factorial(n_r + am)))
    lag = laguerre_assoc(n_r, am, u)
    with np.errstate(divide="ignore"):
        log_amp = log_pref - 0.5 * u + np.log(np.abs(lag))
        if am:
            log_amp = log_amp + 0.5 * am * np.log(u)
    radial = np.sign(lag) * np.exp(log_amp)
    return radial * np.exp(1j * m_l * phi)


def landau_center(state: QuantumState, p: PhysicalParams) -> float:
    """Centre [m] of the transverse oscillator of a Landau-gauge state.

    First gauge: ``y0 = -s hbar k / eB``; second gauge: ``x0 = +s hbar k / eB``.
    """
    if not state.gauge.is_landau:
        raise ValueError("landau_center needs a Landau-gauge state")
    shift = p.hbar * state.k / (p.e * p.B)
    flip = 1 if state.gauge is Gauge.LANDAU_FIRST else -1
    return -flip * int(state.sign) * shift


def _oscillator_profile(n: int, xi, scale_sq: float, hermite_scale: float):
    """``(2^n n!)^-1/2 (scale_sq/pi)^1/4 exp(-scale_sq xi^2/2) H_n(hermite_scale xi)``."""
    xi = np.asarray(xi, dtype=float)
    log_pref = -0.5 * (n * math.log(2.0) + ln_factorial(n)) + 0.25 * math.log(scale_sq / math.pi)
    herm = hermite_phys(n, hermite_scale * xi)
    with np.errstate(divide="ignore"):
        log_amp = log_pref - 0.5 * scale_sq * xi * xi + np.log(np.abs(herm))
    return np.sign(herm) * np.exp(log_amp)


def eigenfunction_landau(state: QuantumState, p: PhysicalParams, x, y,
                         mode: NormalizationMode = NormalizationMode.ORTHONORMAL):
    """Landau-gauge eigenfunction ``phi_n(transverse - centre) exp(i k longitudinal)``.

    Normalized per unit length along the plane-wave direction. The second
    gauge reuses the first-gauge profile with x and y swapped and the shift
    sign reversed.
    """
    if not state.gauge.is_landau:
        raise ValueError("eigenfunction_landau needs a Landau-gauge state")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if state.gauge is Gauge.LANDAU_FIRST:
        transverse, longitudinal = y, x
    else:
        transverse, longitudinal = x, y
    eb = p.e * p.B / p.hbar
    a = math.sqrt(eb) if NormalizationMode(mode) is NormalizationMode.ORTHONORMAL else eb
    xi = transverse - landau_center(state, p)
    return _oscillator_profile(state.n_perp, xi, eb, a) * np.exp(1j * state.k * longitudinal)


class DegenerateLevel(NamedTuple):
    units: int
    states: list
    infinite: bool


def degeneracy_listing(max_units: int, sign=Sign.PLUS, cutoff: int = 3) -> list[DegenerateLevel]:
    """Group symmetric-gauge states by energy (in units of ``hbar omega_c / 2``).

    Only ``|m_l| <= cutoff`` is enumerated. Every level has an infinite
    family (fixed ``n_r``, ``s m_l >= 0``), so each entry carries
    ``infinite=True`` and its list is a truncation.
    """
    if max_units < 1 or max_units % 2 == 0:
        raise ValueError("max_units must be an odd positive integer")
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    s = int(Sign.parse(sign))
    levels: dict[int, list] = {u: [] for u in range(1, max_units + 1, 2)}
    for n_r in range((max_units - 1) // 2 + 1):
        for m_l in range(-cutoff, cutoff + 1):
            units = 2 * n_r + abs(m_l) + 1 - s * m_l
            if units <= max_units:
                levels[units].append((n_r, m_l))
    out = []
    for units, members in levels.items():
        members.sort(key=lambda nm: (-nm[0], abs(nm[1])))
        out.append(DegenerateLevel(units, members, True))
    return out
