"""Bopp-shifted noncommutative oscillator and its map onto the Landau problem.

With ``[x, y] = i theta`` the Bopp shift ``x -> x - (theta/2hbar) p_y``,
``y -> y + (theta/2hbar) p_x`` turns the isotropic oscillator of mass ``m``
and frequency ``omega`` into a commutative Hamiltonian

    (1/2m + m omega^2 theta^2 / 8 hbar^2) p^2 + (m omega^2 / 2) r^2 - (theta/2hbar) m omega^2 L_z

The map to the Landau problem fixes ``theta = 4 hbar / eB`` and rescales the
theta-only oscillator by ``zeta = e^2 B^2 / 8 mu``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .landau import (
    E_CHARGE,
    HBAR,
    Gauge,
    NormalizationMode,
    PhysicalParams,
    Sign,
    _oscillator_profile,
    _symmetric_wavefunction,
    cyclotron_frequency,
)

__all__ = [
    "PAPER_THETA",
    "NcParams",
    "BoppHamiltonianCoeffs",
    "RawPairSolution",
    "IsomorphismReport",
    "bopp_coeffs",
    "effective_params_raw",
    "theta_from_B",
    "B_from_theta",
    "zeta_from",
    "theta_dependent_params",
    "zeta_scaled_params",
    "raw_system",
    "landau_gauge_comparison",
    "isomorphism_check",
    "nc_energy_symmetric",
    "nc_eigenfunction_symmetric",
    "nc_energy_landau",
    "nc_eigenfunction_landau",
    "nc_quantum_matches",
]

# theta at B = 12 T as used for the published plots (m^2)
PAPER_THETA = 2.195e-16

ISOMORPHISM_TOL = 1e-12


@dataclass(frozen=True)
class NcParams:
    """Oscillator-side configuration.

    ``zeta`` is stored in C^2 T^2 / kg, which is dimensionally kg Hz^2.
    """

    theta: float
    zeta: float
    M_eff: float
    Omega_eff: float

    def __post_init__(self):
        for name in ("theta", "zeta", "M_eff", "Omega_eff"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def from_theta_zeta(cls, theta: float, zeta: float, hbar: float = HBAR) -> "NcParams":
        M, Omega = zeta_scaled_params(theta, zeta, hbar)
        return cls(theta, zeta, M, Omega)

    @classmethod
    def from_physical(cls, p: PhysicalParams) -> "NcParams":
        return cls.from_theta_zeta(theta_from_B(p), zeta_from(p), p.hbar)

    @property
    def quantum(self) -> float:
        """``zeta * theta``, the energy unit of the oscillator spectrum [J]."""
        return self.zeta * self.theta


@dataclass(frozen=True)
class BoppHamiltonianCoeffs:
    """Coefficients of ``kinetic p^2 + potential r^2 - angular L_z``."""

    kinetic: float
    potential: float
    angular: float


def bopp_coeffs(m: float, omega: float, theta: float, hbar: float = HBAR) -> BoppHamiltonianCoeffs:
    if m <= 0 or omega <= 0 or theta < 0:
        raise ValueError("need m > 0, omega > 0, theta >= 0")
    k = m * omega * omega
    return BoppHamiltonianCoeffs(
        kinetic=1.0 / (2.0 * m) + k * theta * theta / (8.0 * hbar * hbar),
        potential=0.5 * k,
        angular=theta / (2.0 * hbar) * k,
    )


def effective_params_raw(m: float, omega: float, theta: float, hbar: float = HBAR) -> tuple[float, float]:
    """Effective ``(M, Omega)`` from the raw Bopp form; ``M Omega^2 == m omega^2``."""
    if m <= 0 or omega <= 0 or theta < 0:
        raise ValueError("need m > 0, omega > 0, theta >= 0")
    g = 1.0 + (m * omega * theta) ** 2 / (4.0 * hbar * hbar)
    return m / g, omega * math.sqrt(g)


def theta_from_B(p: PhysicalParams) -> float:
    """``theta = 4 hbar / eB`` [m^2]."""
    return 4.0 * p.hbar / (p.e * p.B)


def B_from_theta(theta: float, hbar: float = HBAR, e: float = E_CHARGE) -> float:
    """Inverse of :func:`theta_from_B`, in tesla."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    return 4.0 * hbar / (e * theta)


def zeta_from(p: PhysicalParams) -> float:
    """``zeta = e^2 B^2 / 8 mu``."""
    return (p.e * p.B) ** 2 / (8.0 * p.mu)


def theta_dependent_params(theta: float, hbar: float = HBAR) -> tuple[float, float]:
    """``M = 2 hbar^2 / theta^2`` and ``Omega = theta / hbar``.

    These are numerical stand-ins; the units do not close until the
    ``zeta`` rescaling is applied.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    return 2.0 * hbar * hbar / (theta * theta), theta / hbar


def zeta_scaled_params(theta: float, zeta: float, hbar: float = HBAR) -> tuple[float, float]:
    """``M = 2 hbar^2 / (zeta theta^2)`` and ``Omega = zeta theta / hbar``."""
    if theta <= 0 or zeta <= 0:
        raise ValueError("theta and zeta must be positive")
    return 2.0 * hbar * hbar / (zeta * theta * theta), zeta * theta / hbar


@dataclass(frozen=True)
class RawPairSolution:
    """Result of solving two of the three raw coefficient relations for (m, omega).

    ``m`` and ``omega`` are ``None`` when no finite solution exists.
    ``residual`` is the relative mismatch of the remaining relation
    (``inf`` when the pair has no solution).
    """

    pair: tuple[str, str]
    other: str
    m: float | None
    omega: float | None
    residual: float
    note: str


def raw_system(p: PhysicalParams, theta: float | None = None) -> list[RawPairSolution]:
    """Try to match the raw Bopp Hamiltonian to the Landau one coefficient by coefficient.

    The three relations are

    - ``mass``:    ``m / (1 + m^2 omega^2 theta^2 / 4 hbar^2) = mu``
    - ``spring``:  ``m omega^2 / 2 = e^2 B^2 / 8 mu``
    - ``angular``: ``(theta / 2 hbar) m omega^2 = eB / 2 mu``

    Each pair is solved for ``(m, omega)`` at fixed theta (default
    ``4 hbar / eB``) and the third is evaluated. None of the pairs yields a
    solution that satisfies all three.
    """
    hbar, mu = p.hbar, p.mu
    eB = p.e * p.B
    theta = theta_from_B(p) if theta is None else float(theta)
    k_spring = eB * eB / (4.0 * mu)         # m omega^2 from "spring"
    k_angular = eB * hbar / (mu * theta)   # m omega^2 from "angular"
    c = theta * theta / (4.0 * hbar * hbar)

    def mass_lhs(m, w):
        return m / (1.0 + (m * w * theta) ** 2 / (4.0 * hbar * hbar))

    def rel(a, b):
        return abs(a - b) / abs(b)

    out = []
    for k_mw2, name, other, target in (
        (k_spring, "spring", "angular", lambda m, w: rel(theta / (2 * hbar) * m * w * w, eB / (2 * mu))),
        (k_angular, "angular", "spring", lambda m, w: rel(0.5 * m * w * w, eB * eB / (8 * mu))),
    ):
        # mass relation with m omega^2 = K: m (1 - mu K c) = mu
        q = mu * k_mw2 * c
        denom = 1.0 - q
        if denom <= 1e-12:
            out.append(RawPairSolution(("mass", name), other, None, None, math.inf,
                                       f"mass relation becomes m (1 - q) = mu with q = {q:.12g}; "
                                       "no finite positive mass"))
            continue
        m = mu / denom
        w = math.sqrt(k_mw2 / m)
        out.append(RawPairSolution(("mass", name), other, m, w, target(m, w), "solved"))

    if rel(k_spring, k_angular) > 1e-12:
        out.append(RawPairSolution(("spring", "angular"), "mass", None, None, math.inf,
                                   "spring and angular relations disagree on m omega^2"))
    else:
        # both fix only m omega^2; take m = mu, the only natural mass scale
        m = mu
        w = math.sqrt(k_spring / m)
        out.append(RawPairSolution(("spring", "angular"), "mass", m, w, rel(mass_lhs(m, w), mu),
                                   "m omega^2 fixed only; m = mu chosen"))
    return out


def landau_gauge_comparison(p: PhysicalParams, gauge: Gauge = Gauge.LANDAU_FIRST) -> list[dict]:
    """Term-by-term coefficients of a Landau-gauge Hamiltonian and the zeta-scaled oscillator.

    The oscillator is reduced by dropping the coordinate that the Landau
    gauge treats as cyclic (``x`` for the first gauge, ``y`` for the second);
    then ``-L_z`` becomes ``+y p_x`` or ``-x p_y``.
    """
    gauge = Gauge(gauge)
    if not gauge.is_landau:
        raise ValueError("needs a Landau gauge")
    nc = NcParams.from_physical(p)
    eB, mu, hbar = p.e * p.B, p.mu, p.hbar
    coord = "y" if gauge is Gauge.LANDAU_FIRST else "x"
    cross = "y p_x" if gauge is Gauge.LANDAU_FIRST else "x p_y"
    cross_sign = 1.0 if gauge is Gauge.LANDAU_FIRST else -1.0
    rows = [
        ("p^2", 1.0 / (2 * mu), nc.zeta * nc.theta ** 2 / (4 * hbar * hbar)),
        (f"{coord}^2", eB * eB / (2 * mu), nc.zeta),
        (cross, cross_sign * eB / mu, cross_sign * nc.zeta * nc.theta / hbar),
    ]
    return [{"term": t, "landau": a, "oscillator": b, "ratio": a / b} for t, a, b in rows]


SIGN_NOTE = (
    "qB = -eB flips the sign of the Landau L_z term, so matching it would need "
    "-zeta*theta/hbar = eB/(2 mu). With theta > 0 and zeta > 0 the left side is "
    "negative and the right side positive; rescaling zeta cannot fix this because "
    "zeta multiplies the kinetic and potential terms too. No mapping exists."
)


@dataclass
class IsomorphismReport:
    theta: float
    zeta: float
    M_eff: float
    Omega_eff: float
    residuals: dict
    verdict: bool
    sign: int
    sign_note: str = ""
    theta_only: dict = field(default_factory=dict)
    raw: list = field(default_factory=list)
    landau_gauges: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        d["raw"] = [
            {**asdict(r), "pair": list(r.pair), "residual": None if math.isinf(r.residual) else r.residual}
            for r in self.raw
        ]
        return d

    def to_text(self, precision: int = 4) -> str:
        g = f".{max(precision - 1, 0)}e"
        lines = [
            "Isomorphism: Landau problem <-> noncommutative oscillator",
            f"  sign convention       qB = {'+' if self.sign > 0 else '-'}eB",
            f"  theta                 {self.theta:{g}} m^2",
            f"  zeta                  {self.zeta:{g}} C^2 T^2 / kg",
            f"  M (zeta-scaled)       {self.M_eff:{g}} kg",
            f"  Omega (zeta-scaled)   {self.Omega_eff:{g}} rad/s",
            "",
            "theta-only parametrization",
            f"  M = 2 hbar^2/theta^2  {self.theta_only['M']:{g}}",
            f"  Omega = theta/hbar    {self.theta_only['Omega']:{g}}",
            "",
            "raw Bopp coefficients (no zeta), theta fixed",
        ]
        for r in self.raw:
            pair = "+".join(r.pair)
            if r.m is None:
                lines.append(f"  {pair:<16} no solution ({r.note})")
            else:
                lines.append(f"  {pair:<16} m={r.m:{g}} omega={r.omega:{g}}  "
                             f"{r.other} residual={r.residual:{g}}")
        lines += ["", "zeta-scaled relations (relative residuals)"]
        for name, value in self.residuals.items():
            lines.append(f"  {name:<10} {value:.3e}")
        for gauge, rows in self.landau_gauges.items():
            lines += ["", f"{gauge} vs reduced oscillator (coefficient ratio landau/oscillator)"]
            for row in rows:
                lines.append(f"  {row['term']:<6} {row['landau']:{g}}  {row['oscillator']:{g}}  "
                             f"ratio={row['ratio']:.{precision}g}")
        lines += ["", f"verdict: {'pass' if self.verdict else 'fail'}"]
        if self.sign_note:
            lines.append(f"note: {self.sign_note}")
        return "\n".join(lines)


def isomorphism_check(p: PhysicalParams, sign=Sign.PLUS) -> IsomorphismReport:
    """Build theta and zeta from ``p`` and test the zeta-scaled coefficient relations.

    The angular relation is compared with the sign that ``qB`` gives the
    Landau ``L_z`` term, so ``sign = -1`` fails with a residual of 2.
    """
    s = int(Sign.parse(sign))
    hbar, mu, eB = p.hbar, p.mu, p.e * p.B
    theta, zeta = theta_from_B(p), zeta_from(p)
    M, Omega = zeta_scaled_params(theta, zeta, hbar)
    residuals = {
        "kinetic": abs(zeta * theta ** 2 / (4 * hbar ** 2) - 1 / (2 * mu)) * (2 * mu),
        "spring": abs(zeta - eB * eB / (8 * mu)) / (eB * eB / (8 * mu)),
        "angular": abs(zeta * theta / hbar - s * eB / (2 * mu)) / (eB / (2 * mu)),
    }
    verdict = s > 0 and all(v <= ISOMORPHISM_TOL for v in residuals.values())
    M0, Omega0 = theta_dependent_params(theta, hbar)
    return IsomorphismReport(
        theta=theta, zeta=zeta, M_eff=M, Omega_eff=Omega,
        residuals=residuals, verdict=verdict, sign=s,
        sign_note="" if s > 0 else SIGN_NOTE,
        theta_only={"M": M0, "Omega": Omega0},
        raw=raw_system(p, theta),
        landau_gauges={g.value: landau_gauge_comparison(p, g) for g in (Gauge.LANDAU_FIRST, Gauge.LANDAU_SECOND)},
    )


def nc_energy_symmetric(n_r: int, m_l: int, nc: NcParams) -> float:
    """``(2 n_r + |m_l| + 1 - m_l) zeta theta`` [J]."""
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    return (2 * n_r + abs(m_l) + 1 - m_l) * nc.quantum


def nc_eigenfunction_symmetric(n_r: int, m_l: int, theta: float, r, phi):
    """Oscillator eigenfunction in the symmetric-gauge picture [1/m]; ``eB/hbar -> 4/theta``."""
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    if theta <= 0:
        raise ValueError("theta must be positive")
    return _symmetric_wavefunction(n_r, m_l, 4.0 / theta, r, phi)


def nc_energy_landau(n_y: int, nc: NcParams) -> float:
    """``(2 n_y + 1) zeta theta`` [J]; ``k0`` does not enter."""
    if n_y < 0:
        raise ValueError("n_y must be non-negative")
    return (2 * n_y + 1) * nc.quantum


def nc_eigenfunction_landau(n_y: int, k0: float, theta: float, y,
                            mode: NormalizationMode = NormalizationMode.ORTHONORMAL,
                            gauge: Gauge = Gauge.LANDAU_FIRST):
    """Real transverse profile of the reduced oscillator, centred at ``-theta k0 / 4``.

    For the second gauge pass the x coordinate as `y`; the centre moves to
    ``+theta k0 / 4``.
    """
    if n_y < 0:
        raise ValueError("n_y must be non-negative")
    if theta <= 0:
        raise ValueError("theta must be positive")
    gauge = Gauge(gauge)
    flip = 1.0 if gauge is Gauge.LANDAU_FIRST else -1.0
    scale_sq = 4.0 / theta
    a = 2.0 / math.sqrt(theta) if NormalizationMode(mode) is NormalizationMode.ORTHONORMAL else 4.0 / theta
    xi = np.asarray(y, dtype=float) + flip * theta * k0 / 4.0
    return _oscillator_profile(n_y, xi, scale_sq, a)


def nc_quantum_matches(p: PhysicalParams) -> float:
    """Relative gap between ``zeta theta`` and ``hbar omega_c / 2``."""
    target = p.hbar * cyclotron_frequency(p) / 2.0
    return abs(zeta_from(p) * theta_from_B(p) - target) / target
