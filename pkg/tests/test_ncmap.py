from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nclandau.landau import (
    HBAR,
    M_ELECTRON,
    Gauge,
    NormalizationMode,
    PhysicalParams,
    QuantumState,
    Sign,
    cyclotron_frequency,
    eigenfunction_symmetric,
    energy_landau,
    energy_symmetric,
)
from nclandau.ncmap import (
    PAPER_THETA,
    B_from_theta,
    NcParams,
    bopp_coeffs,
    effective_params_raw,
    isomorphism_check,
    landau_gauge_comparison,
    nc_eigenfunction_landau,
    nc_eigenfunction_symmetric,
    nc_energy_landau,
    nc_energy_symmetric,
    nc_quantum_matches,
    raw_system,
    theta_dependent_params,
    theta_from_B,
    zeta_from,
    zeta_scaled_params,
)
from nclandau.verify import QuadratureGrid

# 30-digit mpmath evaluations with CODATA 2018 constants at B = 12 T
THETA_12T = 2.19403985515869157282941626023e-16
ZETA_12T = 5.07229258440741938792070762352e-7
M_THETA_ONLY = 4.6205459397640259208e-37
OMEGA_THETA_ONLY = 2.08050302482025420259208032698e18


def test_theta_zeta_oracle(p12):
    assert theta_from_B(p12) == pytest.approx(THETA_12T, rel=1e-14)
    assert zeta_from(p12) == pytest.approx(ZETA_12T, rel=1e-14)


def test_theta_zeta_published(p12):
    assert theta_from_B(p12) == pytest.approx(2.195e-16, rel=1e-3)
    assert zeta_from(p12) == pytest.approx(5.071e-7, rel=1e-3)


def test_theta_other_fields():
    assert theta_from_B(PhysicalParams(B=24.0)) == pytest.approx(1.0975e-16, rel=1e-3)
    assert theta_from_B(PhysicalParams(B=20.0)) == pytest.approx(1.317e-16, rel=1e-3)
    assert zeta_from(PhysicalParams(B=10.0)) == pytest.approx(3.522e-7, rel=1e-3)


@settings(max_examples=50, deadline=None)
@given(B=st.floats(1e-3, 1e3), mu=st.floats(1e-32, 1e-25))
def test_mapping_identity(B, mu):
    p = PhysicalParams(mu=mu, B=B)
    assert B_from_theta(theta_from_B(p)) == pytest.approx(B, rel=1e-14)
    assert zeta_from(p) * theta_from_B(p) == pytest.approx(HBAR * cyclotron_frequency(p) / 2, rel=1e-14)
    assert nc_quantum_matches(p) < 1e-14


def test_theta_dependent_params():
    M, Omega = theta_dependent_params(THETA_12T)
    assert M == pytest.approx(M_THETA_ONLY, rel=1e-14)
    assert Omega == pytest.approx(OMEGA_THETA_ONLY, rel=1e-14)
    M, Omega = theta_dependent_params(PAPER_THETA)
    assert M == pytest.approx(4.620e-37, rel=1e-3)
    assert Omega == pytest.approx(2.081e18, rel=1e-3)
    assert M * Omega == pytest.approx(2 * HBAR / PAPER_THETA, rel=1e-14)
    with pytest.raises(ValueError):
        theta_dependent_params(0.0)


def test_zeta_scaled_params(p12):
    M, Omega = zeta_scaled_params(theta_from_B(p12), zeta_from(p12))
    assert M == pytest.approx(M_ELECTRON, rel=1e-12)
    assert Omega == pytest.approx(cyclotron_frequency(p12) / 2, rel=1e-12)
    assert zeta_scaled_params(PAPER_THETA, 1.0) == pytest.approx(theta_dependent_params(PAPER_THETA), rel=1e-15)


def test_ncparams_validation():
    with pytest.raises(ValueError):
        NcParams(-1.0, 1.0, 1.0, 1.0)
    nc = NcParams.from_theta_zeta(THETA_12T, ZETA_12T)
    assert nc.M_eff == pytest.approx(2 * HBAR ** 2 / (ZETA_12T * THETA_12T ** 2), rel=1e-15)


def test_bopp_commutative_limit():
    c = bopp_coeffs(M_ELECTRON, 1e12, 0.0)
    assert c.kinetic == 1 / (2 * M_ELECTRON)
    assert c.potential == 0.5 * (M_ELECTRON * 1e12 * 1e12)
    assert c.angular == 0.0


def test_bopp_coeffs_values():
    m, w, th = M_ELECTRON, 1e12, 2.195e-16
    c = bopp_coeffs(m, w, th)
    assert c.angular == pytest.approx(th / (2 * HBAR) * m * w * w, rel=1e-15)
    M, _ = effective_params_raw(m, w, th)
    assert c.kinetic == pytest.approx(1 / (2 * M), rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(m=st.floats(1e-31, 1e-26), w=st.floats(1e9, 1e16), th=st.floats(0, 1e-14))
def test_effective_invariant(m, w, th):
    M, Omega = effective_params_raw(m, w, th)
    assert M * Omega ** 2 == pytest.approx(m * w * w, rel=1e-12)
    assert M == pytest.approx(m / (1 + (m * w * th) ** 2 / (4 * HBAR ** 2)), rel=1e-12)


def test_effective_identity_limit():
    assert effective_params_raw(M_ELECTRON, 2.11e12, 0.0) == (M_ELECTRON, 2.11e12)


def test_raw_system_inconsistent(p12):
    sols = raw_system(p12)
    assert len(sols) == 3
    for s in sols:
        assert s.residual > 0.1
    by_pair = {s.pair: s for s in sols}
    assert by_pair[("mass", "spring")].m is None
    assert by_pair[("mass", "angular")].m is None
    sa = by_pair[("spring", "angular")]
    assert sa.m == M_ELECTRON
    assert sa.residual == pytest.approx(0.5, rel=1e-12)


def test_raw_system_other_theta(p12):
    # away from 4 hbar/eB the mass pairs become solvable but still violate the third relation
    sols = raw_system(p12, theta=THETA_12T / 3)
    assert all(s.residual > 0.1 for s in sols)
    assert any(s.m is not None for s in sols if s.pair[0] == "mass")


def test_landau_gauge_comparison(p12):
    for gauge in (Gauge.LANDAU_FIRST, Gauge.LANDAU_SECOND):
        rows = landau_gauge_comparison(p12, gauge)
        assert [r["ratio"] for r in rows] == pytest.approx([1.0, 4.0, 2.0], rel=1e-12)
    with pytest.raises(ValueError):
        landau_gauge_comparison(p12, Gauge.SYMMETRIC)


def test_isomorphism_pass(p12):
    rep = isomorphism_check(p12)
    assert rep.verdict
    assert rep.theta == pytest.approx(2.195e-16, rel=1e-3)
    assert rep.zeta == pytest.approx(5.071e-7, rel=1e-3)
    assert max(rep.residuals.values()) <= 1e-12
    assert rep.theta_only["M"] == pytest.approx(4.620e-37, rel=1e-3)
    d = rep.to_dict()
    assert d["verdict"] == "pass"
    assert d["raw"][0]["residual"] is None
    assert "verdict: pass" in rep.to_text()


def test_isomorphism_20T():
    rep = isomorphism_check(PhysicalParams(B=20.0))
    assert rep.verdict
    assert rep.theta == pytest.approx(1.317e-16, rel=1e-3)


@settings(max_examples=25, deadline=None)
@given(B=st.floats(0.1, 100), mu=st.floats(1e-31, 1e-27))
def test_sign_obstruction(B, mu):
    rep = isomorphism_check(PhysicalParams(mu=mu, B=B), Sign.MINUS)
    assert not rep.verdict
    assert rep.sign_note
    assert rep.residuals["angular"] == pytest.approx(2.0, rel=1e-12)


def test_nc_energies(p12):
    nc = NcParams.from_physical(p12)
    assert nc_energy_symmetric(0, 0, nc) == pytest.approx(1.112e-22, rel=1e-3)
    assert nc_energy_symmetric(2, 2, nc) == pytest.approx(5.566e-22, rel=1e-3)
    assert nc_energy_landau(0, nc) == pytest.approx(1.112e-22, rel=1e-3)
    assert nc_energy_landau(2, nc) == pytest.approx(5 * nc_energy_landau(0, nc), rel=1e-15)
    for n_r in range(7):
        for m in range(-6, 7):
            assert nc_energy_symmetric(n_r, m, nc) == pytest.approx(energy_symmetric(n_r, m, p12), rel=1e-12)
        assert nc_energy_landau(n_r, nc) == pytest.approx(energy_landau(n_r, p12), rel=1e-12)


def test_nc_state_isomorphism(p12, l_b):
    theta = theta_from_B(p12)
    r = np.linspace(0, 8 * l_b, 50)
    phi = np.linspace(0, 2 * math.pi, 50, endpoint=False)
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    for n_r, m_l in [(0, 0), (1, -2), (3, 3)]:
        a = nc_eigenfunction_symmetric(n_r, m_l, theta, rr, pp)
        b = eigenfunction_symmetric(QuantumState.symmetric(n_r, m_l), p12, rr, pp)
        mask = np.abs(b) > 1e-30
        assert np.max(np.abs(a[mask] - b[mask]) / np.abs(b[mask])) <= 1e-12


def test_nc_symmetric_origin():
    v = nc_eigenfunction_symmetric(0, 0, PAPER_THETA, 0.0, 0.0)
    assert v == pytest.approx(math.sqrt(2 / (math.pi * PAPER_THETA)), rel=1e-14)


def test_nc_symmetric_norm():
    l_b = 0.5 * math.sqrt(PAPER_THETA)
    grid = QuadratureGrid.polar(12 * l_b, 256, 16, radial="log")
    r, phi = grid.mesh()
    psi = nc_eigenfunction_symmetric(1, 2, PAPER_THETA, r, phi)
    assert np.sum(np.abs(psi) ** 2 * grid.weights) == pytest.approx(1.0, abs=1e-10)


def test_nc_landau_profile():
    theta = PAPER_THETA
    assert nc_eigenfunction_landau(0, 0.0, theta, 0.0) == pytest.approx((4 / (math.pi * theta)) ** 0.25, rel=1e-14)
    l_b = 0.5 * math.sqrt(theta)
    y = np.linspace(-12 * l_b, 12 * l_b, 4001)
    w = np.full_like(y, y[1] - y[0])
    w[[0, -1]] *= 0.5
    k0 = 4e7
    dens = nc_eigenfunction_landau(0, k0, theta, y) ** 2
    assert np.sum(dens * w) == pytest.approx(1.0, abs=1e-12)
    assert np.sum(y * dens * w) == pytest.approx(-theta * k0 / 4, rel=1e-10)
    second = nc_eigenfunction_landau(0, k0, theta, y, gauge=Gauge.LANDAU_SECOND) ** 2
    assert np.sum(y * second * w) == pytest.approx(theta * k0 / 4, rel=1e-10)


def test_nc_landau_matches_landau_side(p12, l_b):
    from nclandau.landau import eigenfunction_landau
    theta = theta_from_B(p12)
    y = np.linspace(-6 * l_b, 6 * l_b, 301)
    k = 1.5 / l_b
    for mode in NormalizationMode:
        a = nc_eigenfunction_landau(2, k, theta, y, mode)
        b = eigenfunction_landau(QuantumState.landau(2, k), p12, 0.0, y, mode).real
        assert np.allclose(a, b, rtol=1e-12, atol=1e-12 * np.max(np.abs(b)))


def test_nc_input_validation():
    with pytest.raises(ValueError):
        nc_eigenfunction_symmetric(0, 0, -1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        nc_eigenfunction_landau(-1, 0.0, PAPER_THETA, 0.0)
    with pytest.raises(ValueError):
        B_from_theta(0.0)
