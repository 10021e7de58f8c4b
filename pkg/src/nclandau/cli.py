"""``nc-landau`` command line: spectra, isomorphism report, verification, sampling.

Effective configuration is built from defaults, then a flat JSON config
file (``--config`` or ``$NC_LANDAU_CONFIG``), then explicit flags.

Exit codes: 0 success, 1 invalid input, 2 a verification failed, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import sampler, verify
from .landau import (
    M_ELECTRON,
    Gauge,
    NormalizationMode,
    PhysicalParams,
    QuantumState,
    Sign,
    energy_landau,
    energy_symmetric,
    magnetic_length,
)
from .ncmap import NcParams, isomorphism_check, nc_energy_landau, nc_energy_symmetric, theta_from_B

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_IO = 0, 1, 2, 3
CONFIG_ENV = "NC_LANDAU_CONFIG"

DEFAULTS = {
    "B": 12.0,
    "mu": M_ELECTRON,
    "gauge": "symmetric",
    "sign": "+",
    "mode": "orthonormal",
    "out": None,
    "format": "text",
    "precision": 4,
    "timestamp": 0,
}
_FORMATS = ("text", "csv", "json")


class ConfigError(ValueError):
    pass


def load_config(path) -> dict:
    """Read a flat JSON object of config keys."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(sorted(unknown))}")
    return data


def validate_config(cfg: dict) -> dict:
    """Normalize types and reject bad values before any computation."""
    out = dict(cfg)
    try:
        out["B"] = float(cfg["B"])
        out["mu"] = float(cfg["mu"])
        out["precision"] = int(cfg["precision"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad numeric config value: {exc}") from exc
    if not (out["B"] > 0 and math.isfinite(out["B"])):
        raise ConfigError("B must be a positive field strength in tesla")
    if not (out["mu"] > 0 and math.isfinite(out["mu"])):
        raise ConfigError("mu must be a positive mass in kg")
    if not 1 <= out["precision"] <= 17:
        raise ConfigError("precision must be between 1 and 17")
    try:
        out["gauge"] = Gauge(cfg["gauge"]).value
        out["mode"] = NormalizationMode(cfg["mode"]).value
        out["sign"] = "+" if Sign.parse(cfg["sign"]) > 0 else "-"
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if isinstance(out["timestamp"], str):
        try:
            out["timestamp"] = json.loads(out["timestamp"])
        except json.JSONDecodeError:
            pass
    if out["format"] not in _FORMATS:
        raise ConfigError(f"format must be one of {', '.join(_FORMATS)}")
    return out


def effective_config(args) -> dict:
    cfg = dict(DEFAULTS)
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        cfg.update(load_config(path))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return validate_config(cfg)


def _params(cfg) -> PhysicalParams:
    return PhysicalParams(mu=cfg["mu"], B=cfg["B"])


def _fmt(value, precision: int) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(value)
    return f"{value:.{precision - 1}e}"


def _table(header, rows, cfg) -> str:
    fmt, prec = cfg["format"], cfg["precision"]
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2)
    cells = [[_fmt(v, prec) for v in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"range must look like LO:HI, got {text!r}") from exc
    if lo > hi:
        raise ConfigError("range start exceeds end")
    return lo, hi


# -- spectrum -----------------------------------------------------------------

def spectrum_rows(cfg: dict, n_max: int, m_range: tuple[int, int] | None = None) -> tuple[list, list]:
    """Header and rows of the energy table, Landau side next to oscillator side."""
    if n_max < 0:
        raise ConfigError("n_max must be non-negative")
    p = _params(cfg)
    nc = NcParams.from_physical(p)
    e = p.e
    rows = []
    if Gauge(cfg["gauge"]) is Gauge.SYMMETRIC:
        lo, hi = m_range if m_range is not None else (-n_max, n_max)
        header = ["n_r", "m_l", "E_landau_J", "E_landau_eV", "E_nc_J", "E_nc_eV", "rel_diff"]
        for n_r in range(n_max + 1):
            for m in range(lo, hi + 1):
                a = energy_symmetric(n_r, m, p, cfg["sign"])
                b = nc_energy_symmetric(n_r, m, nc)
                rows.append([n_r, m, a, a / e, b, b / e, abs(b - a) / a])
    else:
        header = ["n", "E_landau_J", "E_landau_eV", "E_nc_J", "E_nc_eV", "rel_diff"]
        for n in range(n_max + 1):
            a = energy_landau(n, p)
            b = nc_energy_landau(n, nc)
            rows.append([n, a, a / e, b, b / e, abs(b - a) / a])
    return header, rows


def cmd_spectrum(cfg, args) -> int:
    m_range = _parse_range(args.m_range) if args.m_range else None
    header, rows = spectrum_rows(cfg, args.n_max, m_range)
    print(_table(header, rows, cfg))
    return EXIT_OK


# -- isomorphism --------------------------------------------------------------

def cmd_isomorphism(cfg, args) -> int:
    if cfg["format"] == "csv":
        raise ConfigError("the isomorphism report is available as text or json")
    report = isomorphism_check(_params(cfg), cfg["sign"])
    if cfg["format"] == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.to_text(cfg["precision"]))
    return EXIT_OK if report.verdict else EXIT_FAILED


# -- verify -------------------------------------------------------------------

def _check(name, value, tol, passed=None, **extra) -> dict:
    ok = bool(value <= tol) if passed is None else bool(passed)
    return {"check": name, "value": float(value), "tol": float(tol), "pass": ok, **extra}


def suite_norm(cfg) -> list[dict]:
    p = _params(cfg)
    l_b = magnetic_length(p)
    sign = cfg["sign"]
    if Gauge(cfg["gauge"]) is Gauge.SYMMETRIC:
        grid = verify.QuadratureGrid.polar(12 * l_b, 384, 32, radial="log")
        labels = [(n, m) for n in range(3) for m in range(-2, 3)]
        states = [QuantumState.symmetric(n, m, sign) for n, m in labels]
    else:
        grid = verify.QuadratureGrid.cartesian1d(-12 * l_b, 12 * l_b, 1601)
        labels = list(range(5))
        states = [QuantumState.landau(n, 0.0, cfg["gauge"], sign) for n in labels]
    fields = [verify.sample_state(s, p, grid, cfg["mode"]) for s in states]
    gram = verify.gram_matrix(fields, grid)
    err = float(np.max(np.abs(gram - np.eye(len(fields)))))
    return [_check("norm/gram", err, 1e-6, states=len(fields))]


def suite_residual(cfg, offset_units: float = 0.0) -> list[dict]:
    p = _params(cfg)
    l_b = magnetic_length(p)
    sign = cfg["sign"]
    offset = offset_units * verify.landau_quantum(p)
    out = []
    if Gauge(cfg["gauge"]) is Gauge.SYMMETRIC:
        grid = verify.QuadratureGrid.polar(10 * l_b, 801, 512)
        cases = [(QuantumState.symmetric(n, m, sign), f"({n},{m})") for n, m in ((0, 0), (1, 0), (0, 1), (0, -1))]
    else:
        grid = verify.QuadratureGrid.cartesian1d(-10 * l_b, 10 * l_b, 801)
        cases = [(QuantumState.landau(n, 0.0, cfg["gauge"], sign), f"n={n}") for n in range(4)]
    for state, label in cases:
        res = verify.hamiltonian_residual(state, p, grid, mode=cfg["mode"], energy_offset=offset)
        out.append(_check(f"residual/{label}", res, 1e-3))
    return out


def suite_oracle(cfg) -> list[dict]:
    p = _params(cfg)
    l_b = magnetic_length(p)
    sign = cfg["sign"]
    if Gauge(cfg["gauge"]) is Gauge.SYMMETRIC:
        grid = verify.QuadratureGrid.box(10 * l_b, 50)
        vals = verify.grid_diagonalize(p, Gauge.SYMMETRIC, grid, 1, sign=sign)
        target = energy_symmetric(0, 0, p, sign)
        rep = verify.spectrum_match([target], vals, 1e-2)
        return [_check("oracle/ground", rep.max_error, 1e-2, numeric=rep.numeric, analytic=rep.analytic)]
    grid = verify.QuadratureGrid.cartesian1d(-10 * l_b, 10 * l_b, 801)
    vals = verify.grid_diagonalize(p, cfg["gauge"], grid, 6, sign=sign)
    rep = verify.spectrum_match([energy_landau(n, p) for n in range(6)], vals, 1e-2)
    return [_check("oracle/levels", rep.max_error, 1e-2, numeric=rep.numeric, analytic=rep.analytic)]


def cmd_verify(cfg, args) -> int:
    suites = ("norm", "residual", "oracle") if args.suite == "all" else (args.suite,)
    checks = []
    for suite in suites:
        if suite == "norm":
            checks += suite_norm(cfg)
        elif suite == "residual":
            checks += suite_residual(cfg, args.inject_offset)
        else:
            checks += suite_oracle(cfg)
    ok = all(c["pass"] for c in checks)
    summary = {"config": cfg, "suites": list(suites), "checks": checks, "pass": ok}
    if cfg["format"] == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        for c in checks:
            verdict = "pass" if c["pass"] else "FAIL"
            print(f"{verdict}  {c['check']:<20} {c['value']:.3e}  (tol {c['tol']:.0e})")
        print(f"overall: {'pass' if ok else 'FAIL'}")
    if cfg["out"]:
        path = Path(cfg["out"]) / "verify-summary.json"
        _write_text(path, json.dumps(summary, indent=2, sort_keys=True) + "\n")
        if cfg["format"] != "json":
            print(f"summary: {path}")
    return EXIT_OK if ok else EXIT_FAILED


# -- sample -------------------------------------------------------------------

def _write_text(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise sampler.ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _parse_state(text: str) -> tuple[int, int]:
    try:
        n_r, m_l = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"state must look like N_R,M_L, got {text!r}") from exc
    if n_r < 0:
        raise ConfigError("n_r must be non-negative")
    return n_r, m_l


def _parse_sweep(text: str) -> np.ndarray:
    try:
        a, b, c = text.split(":")
        lo, hi, count = float(a), float(b), int(c)
    except ValueError as exc:
        raise ConfigError(f"sweep must look like START:STOP:COUNT, got {text!r}") from exc
    if count < 2 or not hi > lo:
        raise ConfigError("sweep needs STOP > START and COUNT >= 2")
    return np.linspace(lo, hi, count)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from exc


def cmd_sample(cfg, args) -> int:
    fmt = "csv" if cfg["format"] == "text" else cfg["format"]
    out = Path(cfg["out"] or ".")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise sampler.ExportError(f"cannot create {out}: {exc.strerror or exc}") from exc
    gauge = Gauge(cfg["gauge"])
    landau = args.landau or gauge.is_landau
    if landau and not gauge.is_landau:
        gauge = Gauge.LANDAU_FIRST
    kind = args.grid or ("line" if landau else "polar")
    counts = tuple(int(c) for c in args.counts.split(",")) if args.counts else ()
    try:
        spec = sampler.GridSpec(kind, args.extent, counts, args.extent_unit)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    jobs = []  # (stem, FieldGrid)
    stamp, mode = cfg["timestamp"], cfg["mode"]
    if args.sweep_B:
        fields = _parse_floats(args.sweep_B)
        if landau:
            state = QuantumState.landau(args.n, args.k0, gauge)
            stems = [f"{gauge.value}_n{args.n}_k{args.k0:g}" for _ in fields]
        else:
            n_r, m_l = _parse_state((args.state or ["0,0"])[0])
            state = QuantumState.symmetric(n_r, m_l)
            stems = [f"sym_n{n_r}_m{m_l}" for _ in fields]
        grids = sampler.sweep_field(fields, state, spec, mu=cfg["mu"], mode=mode, timestamp=stamp)
        jobs += [(f"{s}_B{b:g}", g) for s, b, g in zip(stems, fields, grids)]
    else:
        theta = args.theta if args.theta is not None else theta_from_B(_params(cfg))
        if landau:
            if args.k0_sweep:
                ks = _parse_sweep(args.k0_sweep)
                g = sampler.sample_landau(args.n, theta=theta, spec=spec, mode=mode, gauge=gauge,
                                          k0_values=ks, timestamp=stamp, mu=cfg["mu"])
                jobs.append((f"{gauge.value}_n{args.n}_k0sweep", g))
            else:
                g = sampler.sample_landau(args.n, args.k0, theta, spec, mode=mode, gauge=gauge,
                                          timestamp=stamp, mu=cfg["mu"])
                jobs.append((f"{gauge.value}_n{args.n}_k{args.k0:g}", g))
        else:
            for text in args.state or ["0,0"]:
                n_r, m_l = _parse_state(text)
                g = sampler.sample_symmetric(n_r, m_l, theta, spec, mode=mode, timestamp=stamp, mu=cfg["mu"])
                jobs.append((f"sym_n{n_r}_m{m_l}", g))

    manifest = []
    heat_fields = args.heatmap if args.heatmap is not None else ["abs2"]
    for stem, grid in jobs:
        manifest.append(sampler.export(grid, fmt, out / f"{stem}.{fmt}"))
        if len(grid.axes) == 2 and not args.no_heatmap:
            for field in heat_fields:
                manifest.append(sampler.render_heatmap(grid, field, out / f"{stem}_{field}.ppm"))
    for path in manifest:
        print(path)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are validation failures (exit 1); 2 is reserved for failed checks
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--B", type=float, help="magnetic field [T] (default 12)")
    common.add_argument("--mu", type=float, help="particle mass [kg] (default electron mass)")
    common.add_argument("--gauge", choices=[g.value for g in Gauge])
    common.add_argument("--sign", choices=["+", "-"], help="charge sign convention, qB = +eB or -eB")
    common.add_argument("--mode", choices=[m.value for m in NormalizationMode])
    common.add_argument("--config", help=f"flat JSON config file (fallback: ${CONFIG_ENV})")
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=_FORMATS)
    common.add_argument("--precision", type=int, help="significant figures in text/CSV tables (default 4)")
    common.add_argument("--timestamp", help="value stored in sampled-file metadata (default 0)")
    common.add_argument("--print-config", action="store_true", help="print the effective config and exit")

    parser = _Parser(prog="nc-landau", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="energy table, Landau and oscillator side")
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--m-range", help="LO:HI for m_l, e.g. --m-range=-3:3 (default -n_max:n_max)")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("isomorphism", parents=[common], help="parameter map and coefficient checks")
    sp.set_defaults(func=cmd_isomorphism)

    sp = sub.add_parser("verify", parents=[common], help="numerical oracle suites")
    sp.add_argument("--suite", choices=["norm", "residual", "oracle", "all"], default="all")
    sp.add_argument("--inject-offset", type=float, default=0.0, metavar="UNITS",
                    help="add UNITS * hbar omega_c to E in the residual suite (negative control)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample", parents=[common], help="write sampled fields and heatmaps")
    sp.add_argument("--state", action="append", help="symmetric state N_R,M_L (repeatable)")
    sp.add_argument("--landau", action="store_true", help="sample the Landau-gauge profile")
    sp.add_argument("--n", type=int, default=0, help="Landau-gauge level n_y")
    sp.add_argument("--k0", type=float, default=0.0, help="Landau-gauge wavenumber [1/m]")
    sp.add_argument("--k0-sweep", help="START:STOP:COUNT, writes a 2-D (y, k0) grid")
    sp.add_argument("--sweep-B", help="comma-separated field strengths [T]")
    sp.add_argument("--theta", type=float, help="noncommutativity [m^2] (default 4 hbar / eB)")
    sp.add_argument("--grid", choices=["polar", "cartesian", "line"])
    sp.add_argument("--extent", type=float, default=8.0)
    sp.add_argument("--extent-unit", choices=["lB", "m"], default="lB")
    sp.add_argument("--counts", help="points per axis, e.g. 256,128")
    sp.add_argument("--heatmap", action="append", choices=["re", "im", "abs2"],
                    help="field(s) to render for 2-D grids (default abs2)")
    sp.add_argument("--no-heatmap", action="store_true")
    sp.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = effective_config(args)
        if args.print_config:
            print(json.dumps(cfg, indent=2, sort_keys=True))
            return EXIT_OK
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(cfg, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, verify.ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
