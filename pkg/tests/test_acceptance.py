"""Acceptance criteria, one check per criterion.

Each test prints a single ``AC<n> PASS|FAIL ...`` line (visible under
``pytest -v`` and when run as a script) and then asserts. Run standalone
with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import contextlib
import io
import math
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

from nclandau.cli import main as cli_main
from nclandau.cli import spectrum_rows
from nclandau.landau import (
    E_CHARGE,
    HBAR,
    M_ELECTRON,
    Gauge,
    PhysicalParams,
    QuantumState,
    Sign,
    cyclotron_frequency,
    eigenfunction_symmetric,
    energy_landau,
    energy_symmetric,
    magnetic_length,
)
from nclandau.ncmap import (
    NcParams,
    isomorphism_check,
    nc_eigenfunction_symmetric,
    nc_energy_landau,
    nc_energy_symmetric,
    theta_dependent_params,
    theta_from_B,
    zeta_from,
    zeta_scaled_params,
)
from nclandau.sampler import (
    export,
    half_max_radius,
    load_json,
    peak_radius,
    profile_centroid,
    radial_nodes,
    sample_landau,
    sample_symmetric,
    sweep_field,
)
from nclandau.verify import (
    QuadratureGrid,
    gram_matrix,
    grid_diagonalize,
    hamiltonian_residual,
    sample_state,
    spectrum_match,
)

P = PhysicalParams(mu=M_ELECTRON, B=12.0)
PUBLISHED_ROUNDING = 1e-3

# published energy tables: (n_r, m_l) -> (J, eV)
TABLE_6 = {(1, 0): (3.340e-22, 2.085e-3), (2, 0): (5.566e-22, 3.475e-3), (3, 0): (7.793e-22, 4.864e-3)}
TABLE_7 = {
    (0, 3): (1.112e-22, 6.943e-4), (0, 2): (1.112e-22, 6.943e-4), (0, 1): (1.112e-22, 6.943e-4),
    (0, -1): (3.340e-22, 2.085e-3), (0, -2): (5.566e-22, 3.475e-3), (0, -3): (7.793e-22, 4.864e-3),
}
TABLE_8 = {
    (1, 1): (3.340e-22, 2.085e-3), (2, 1): (5.566e-22, 3.475e-3), (3, 1): (7.793e-22, 4.864e-3),
    (1, 2): (3.340e-22, 2.085e-3), (2, 2): (5.566e-22, 3.475e-3), (3, 2): (7.793e-22, 4.864e-3),
    (1, 3): (3.340e-22, 2.085e-3), (2, 3): (5.566e-22, 3.475e-3), (3, 3): (7.793e-22, 4.864e-3),
    (1, -1): (5.566e-22, 3.475e-3), (2, -1): (7.793e-22, 4.864e-3), (3, -1): (1.002e-21, 6.254e-3),
    (1, -2): (7.793e-22, 4.864e-3), (2, -2): (1.002e-21, 6.254e-3), (3, -2): (1.225e-21, 7.644e-3),
    (1, -3): (1.002e-21, 6.254e-3), (2, -3): (1.225e-21, 7.644e-3), (3, -3): (1.447e-21, 9.034e-3),
}


def _rel(a, b):
    return abs(a - b) / abs(b)


def _best_time(fn, repeat=20):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


# -- checks: each returns (ok, detail) ------------------------------------------

def check_1():
    def mapping():
        return theta_from_B(P), zeta_from(P)

    elapsed = _best_time(mapping)
    theta, zeta = mapping()
    e_t, e_z = _rel(theta, 2.195e-16), _rel(zeta, 5.071e-7)
    ok = e_t <= PUBLISHED_ROUNDING and e_z <= PUBLISHED_ROUNDING and elapsed < 1e-3
    return ok, (f"theta={theta:.4e} m^2 (rel {e_t:.1e}), zeta={zeta:.4e} (rel {e_z:.1e}), "
                f"{elapsed * 1e3:.4f} ms")


def check_2():
    M0, W0 = theta_dependent_params(theta_from_B(P))
    e_m, e_w = _rel(M0, 4.620e-37), _rel(W0, 2.081e18)
    M, W = zeta_scaled_params(theta_from_B(P), zeta_from(P))
    e_mu, e_wc = _rel(M, P.mu), _rel(W, cyclotron_frequency(P) / 2)
    ok = e_m <= PUBLISHED_ROUNDING and e_w <= PUBLISHED_ROUNDING and e_mu <= 1e-12 and e_wc <= 1e-12
    return ok, (f"theta-only M={M0:.4e} (rel {e_m:.1e}), Omega={W0:.4e} (rel {e_w:.1e}); "
                f"zeta-scaled M/mu-1={e_mu:.1e}, Omega/(wc/2)-1={e_wc:.1e}")


def check_3():
    cfg = {"B": 12.0, "mu": M_ELECTRON, "gauge": "symmetric", "sign": "+"}

    def table():
        return spectrum_rows(cfg, 3, (-3, 3))

    elapsed = _best_time(table)
    header, rows = table()
    col = {name: i for i, name in enumerate(header)}
    by_state = {(r[0], r[1]): r for r in rows}
    worst = 0.0
    count = 0
    for published in (TABLE_6, TABLE_7, TABLE_8):
        for key, (joule, ev) in published.items():
            row = by_state[key]
            for side in ("landau", "nc"):
                worst = max(worst, _rel(row[col[f"E_{side}_J"]], joule), _rel(row[col[f"E_{side}_eV"]], ev))
            count += 1
    ok = worst <= PUBLISHED_ROUNDING and elapsed < 1e-2 and count == 27
    return ok, f"{count} rows, worst rel error {worst:.1e} (J and eV), table in {elapsed * 1e3:.3f} ms"


def check_4():
    nc = NcParams.from_physical(P)
    worst = 0.0
    for n in range(7):
        worst = max(worst, _rel(nc_energy_landau(n, nc), energy_landau(n, P)))
        for m in range(-6, 7):
            worst = max(worst, _rel(nc_energy_symmetric(n, m, nc), energy_symmetric(n, m, P)))
    minus = isomorphism_check(P, Sign.MINUS)
    plus = isomorphism_check(P, Sign.PLUS)
    ok = worst <= 1e-12 and plus.verdict and not minus.verdict and bool(minus.sign_note)
    return ok, (f"worst rel gap {worst:.1e} over n<=6, |m|<=6; sign +1 "
                f"{'pass' if plus.verdict else 'fail'}, sign -1 {'pass' if minus.verdict else 'fail'}")


def check_5():
    l_b = magnetic_length(P)
    theta = 4 * HBAR / (E_CHARGE * P.B)
    r = np.linspace(0, 8 * l_b, 50)
    phi = np.linspace(0, 2 * np.pi, 50, endpoint=False)
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    worst = 0.0
    for n_r in range(5):
        for m in range(-4, 5):
            a = nc_eigenfunction_symmetric(n_r, m, theta, rr, pp)
            b = eigenfunction_symmetric(QuantumState.symmetric(n_r, m), P, rr, pp)
            mask = np.abs(b) > 1e-30
            worst = max(worst, float(np.max(np.abs(a[mask] - b[mask]) / np.abs(b[mask]))))
    return worst <= 1e-12, f"worst pointwise rel gap {worst:.1e} over 45 states on 50x50 polar grid"


def check_6():
    l_b = magnetic_length(P)
    t0 = time.perf_counter()
    grid = QuadratureGrid.polar(14 * l_b, 512, 32, radial="log")
    fields = [sample_state(QuantumState.symmetric(n, m), P, grid) for n in range(5) for m in range(-4, 5)]
    err = float(np.max(np.abs(gram_matrix(fields, grid) - np.eye(len(fields)))))
    elapsed = time.perf_counter() - t0
    return err <= 1e-6 and elapsed < 30, f"{len(fields)} states, max |G - I| = {err:.1e}, {elapsed:.2f} s"


def _order(state, coarse, fine):
    # the coarse grid only sets the slope, so its truncation guard is off
    rc = hamiltonian_residual(state, P, coarse, tol=None)
    rf = hamiltonian_residual(state, P, fine)
    return math.log(rc / rf) / math.log(coarse.spacing[0] / fine.spacing[0]), rf


def check_7():
    l_b = magnetic_length(P)
    worst_res, worst_order = 0.0, math.inf
    count = 0
    # symmetric gauge on polar grids: 40 and 80 points per l_B
    coarse = QuadratureGrid.polar(10 * l_b, 401, 256)
    fine = QuadratureGrid.polar(10 * l_b, 801, 512)
    for s in (Sign.PLUS, Sign.MINUS):
        for n_r in range(4):
            for m in range(-3, 4):
                order, rf = _order(QuantumState.symmetric(n_r, m, s), coarse, fine)
                worst_res, worst_order = max(worst_res, rf), min(worst_order, order)
                count += 1
    # Landau gauges on transverse lines: 20 and 40 points per l_B
    coarse = QuadratureGrid.cartesian1d(-10 * l_b, 10 * l_b, 401)
    fine = QuadratureGrid.cartesian1d(-10 * l_b, 10 * l_b, 801)
    for gauge in (Gauge.LANDAU_FIRST, Gauge.LANDAU_SECOND):
        for s in (Sign.PLUS, Sign.MINUS):
            for n in range(4):
                for k in (0.0, 1.0 / l_b):
                    order, rf = _order(QuantumState.landau(n, k, gauge, s), coarse, fine)
                    worst_res = max(worst_res, rf)
                    worst_order = min(worst_order, order)
                    count += 1
    ok = worst_res <= 1e-3 and worst_order >= 1.8
    return ok, f"{count} states, worst residual {worst_res:.2e}, lowest observed order {worst_order:.3f}"


def check_8():
    l_b = magnetic_length(P)
    t0 = time.perf_counter()
    line = QuadratureGrid.cartesian1d(-10 * l_b, 10 * l_b, 801)
    landau = spectrum_match([energy_landau(n, P) for n in range(6)],
                            grid_diagonalize(P, Gauge.LANDAU_FIRST, line, 6), 1e-2)
    box = QuadratureGrid.box(10 * l_b, 50)
    unknowns = (box.counts[0] - 2) * (box.counts[1] - 2)
    ground = grid_diagonalize(P, Gauge.SYMMETRIC, box, 1)[0]
    e_ground = _rel(ground, 1.112e-22)
    elapsed = time.perf_counter() - t0
    ok = landau.verdict and e_ground <= 1e-2 and unknowns <= 4096 and elapsed < 120
    return ok, (f"Landau lowest 6 worst rel {landau.max_error:.1e}; symmetric ground {ground:.4e} J "
                f"(rel {e_ground:.1e}) with {unknowns} unknowns; {elapsed:.1f} s")


def check_9():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        def roundtrip(grid, name):
            return load_json(export(grid, "json", tmp / f"{name}.json"))

        nodes_ok = all(radial_nodes(roundtrip(sample_symmetric(n, m), f"n{n}m{m}")) == n
                       for n in range(5) for m in (-1, 0, 2))
        mirror = 0.0
        for n in range(4):
            for m in range(1, 4):
                a = roundtrip(sample_symmetric(n, m), "a").abs2
                b = roundtrip(sample_symmetric(n, -m), "b").abs2
                mirror = max(mirror, float(np.max(np.abs(a - b)) / np.max(a)))
        radii = [peak_radius(roundtrip(sample_symmetric(0, m), f"ring{m}")) for m in range(4)]
        rings_ok = all(b > a for a, b in zip(radii, radii[1:]))
        ks = np.linspace(0, 5e7, 5)
        sweep = roundtrip(sample_landau(0, theta=theta_from_B(P), k0_values=ks), "sweep")
        expected = -sweep.meta["theta"] * ks / 4
        shift_err = float(np.max(np.abs(profile_centroid(sweep) - expected))) / magnetic_length(P)
        half = [half_max_radius(roundtrip(g, f"B{i}"))
                for i, g in enumerate(sweep_field([10, 15, 20], QuantumState.symmetric(0, 0)))]
        shrink_ok = half[0] > half[1] > half[2]
    ok = nodes_ok and mirror <= 1e-12 and rings_ok and shift_err <= 1e-9 and shrink_ok
    return ok, (f"nodes {'ok' if nodes_ok else 'BAD'}, mirror gap {mirror:.1e}, ring radii "
                f"{'increasing' if rings_ok else 'NOT increasing'}, centre error {shift_err:.1e} l_B, "
                f"half-max radii {', '.join(f'{h:.3e}' for h in half)} m")


def _cli_output(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def check_10():
    runs = [_cli_output(["spectrum", "--format", fmt, "--n-max", "3"]) for fmt in ("text", "csv", "json") for _ in (0, 1)]
    spectrum_same = all(runs[i] == runs[i + 1] and runs[i][0] == 0 for i in (0, 2, 4))
    with tempfile.TemporaryDirectory() as tmp:
        dirs = [Path(tmp) / "a", Path(tmp) / "b"]
        codes = []
        for d in dirs:
            for extra in (["--state", "0,1", "--state", "2,0"], ["--landau", "--n", "1", "--k0-sweep", "0:5e7:5"]):
                for fmt in ("csv", "json"):
                    code, _ = _cli_output(["sample", "--out", str(d), "--format", fmt, *extra])
                    codes.append(code)
        names = sorted(p.name for p in dirs[0].iterdir())
        same = names == sorted(p.name for p in dirs[1].iterdir()) and all(
            (dirs[0] / n).read_bytes() == (dirs[1] / n).read_bytes() for n in names)
    ok = spectrum_same and same and not any(codes)
    return ok, (f"spectrum outputs {'identical' if spectrum_same else 'DIFFER'}; "
                f"{len(names)} sample files {'byte-identical' if same else 'DIFFER'}")


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 11)}
TITLES = {
    1: "parameter mapping",
    2: "effective parameters",
    3: "energy tables",
    4: "spectrum isomorphism",
    5: "state isomorphism",
    6: "orthonormality",
    7: "operator residual",
    8: "oracle equivalence",
    9: "figure properties",
    10: "determinism",
}


def _line(n, ok, detail):
    return f"AC{n:<2} {'PASS' if ok else 'FAIL'}  {TITLES[n]}: {detail}"


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_acceptance(n, capsys):
    ok, detail = CHECKS[n]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in CHECKS.items():
        ok, detail = fn()
        print(_line(n, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
