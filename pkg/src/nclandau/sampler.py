"""Sampled wavefunctions of the noncommutative oscillator, export and heatmaps.

A :class:`FieldGrid` holds ``Re psi``, ``Im psi`` and ``|psi|^2`` on a
tensor grid together with enough metadata to regenerate it. Grids are
written as CSV (one row per point, outer axis major) or JSON (metadata
plus flat arrays); both are byte-stable for identical inputs because
floats are written with ``repr`` and the metadata timestamp is supplied
by the caller.
"""
from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .landau import (
    E_CHARGE,
    HBAR,
    M_ELECTRON,
    Gauge,
    NormalizationMode,
    PhysicalParams,
    QuantumState,
)
from .ncmap import (
    PAPER_THETA,
    B_from_theta,
    nc_eigenfunction_landau,
    nc_eigenfunction_symmetric,
    theta_from_B,
)

__all__ = [
    "GridSpec",
    "FieldGrid",
    "ExportError",
    "sample_symmetric",
    "sample_landau",
    "sweep_field",
    "export",
    "load_json",
    "render_heatmap",
    "read_ppm",
    "count_sign_changes",
    "radial_profile",
    "radial_nodes",
    "half_max_radius",
    "peak_radius",
    "profile_centroid",
]

SCHEMA = "nclandau.fieldgrid/1"
MAX_EXTENT_LB = 64.0
MIN_SAMPLES_PER_LB = 4.0
_FIELDS = ("re", "im", "abs2")


class ExportError(OSError):
    """File could not be written or read; the message names the path."""


def _length_scale(theta: float) -> float:
    # magnetic length of the mapped Landau problem, sqrt(hbar/eB) = sqrt(theta)/2
    return 0.5 * math.sqrt(theta)


@dataclass(frozen=True)
class GridSpec:
    """Sampling layout.

    ``kind`` is ``"polar"`` (radius ``[0, extent]`` by angle ``[0, 2 pi)``),
    ``"cartesian"`` (square ``[-extent, extent]^2``) or ``"line"`` (a
    transverse axis ``[-extent, extent]``). ``extent`` is in magnetic
    lengths when ``unit="lB"`` and in metres when ``unit="m"``.
    """

    kind: str = "polar"
    extent: float = 8.0
    counts: tuple = ()
    unit: str = "lB"

    def __post_init__(self):
        if self.kind not in ("polar", "cartesian", "line"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        if self.unit not in ("lB", "m"):
            raise ValueError(f"extent unit must be 'lB' or 'm', got {self.unit!r}")
        if not (self.extent > 0 and math.isfinite(self.extent)):
            raise ValueError("grid extent must be positive")
        if not self.counts:
            default = {"polar": (256, 128), "cartesian": (256, 256), "line": (256,)}[self.kind]
            object.__setattr__(self, "counts", default)
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != (1 if self.kind == "line" else 2):
            raise ValueError(f"{self.kind} grid needs {1 if self.kind == 'line' else 2} counts")
        if min(counts) < 2:
            raise ValueError("each axis needs at least 2 points")
        object.__setattr__(self, "counts", counts)

    def extent_m(self, theta: float) -> float:
        """Extent in metres, checked against the sane range for this `theta`."""
        l_b = _length_scale(theta)
        ext = self.extent * l_b if self.unit == "lB" else self.extent
        if ext > MAX_EXTENT_LB * l_b * (1 + 1e-12):
            raise ValueError(f"grid extent {ext / l_b:.1f} l_B exceeds {MAX_EXTENT_LB:g} l_B")
        span = ext if self.kind == "polar" else 2 * ext
        step = span / (self.counts[0] - 1)
        if step > l_b / MIN_SAMPLES_PER_LB:
            raise ValueError(
                f"grid too coarse: {l_b / step:.2f} points per l_B, need >= {MIN_SAMPLES_PER_LB:g}")
        return ext


@dataclass(eq=False)
class FieldGrid:
    """Sampled complex field on a tensor grid.

    ``axes`` are strictly increasing 1-D arrays; ``re``, ``im`` and
    ``abs2`` have shape ``tuple(len(a) for a in axes)``. ``axis_names``
    and ``axis_units`` label the axes and ``field_units`` labels
    ``(re/im, abs2)``.
    """

    kind: str
    axis_names: tuple
    axis_units: tuple
    axes: tuple
    re: np.ndarray
    im: np.ndarray
    abs2: np.ndarray
    field_units: tuple = ("1/m", "1/m^2")
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        for name in _FIELDS:
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (len(self.axes) == len(self.axis_names) == len(self.axis_units)):
            raise ValueError("axes, names and units must have equal length")
        for a in self.axes:
            if a.ndim != 1 or (len(a) > 1 and np.any(np.diff(a) <= 0)):
                raise ValueError("axes must be strictly increasing 1-D arrays")
        for name in _FIELDS:
            if getattr(self, name).shape != self.shape:
                raise ValueError(f"{name} has shape {getattr(self, name).shape}, grid is {self.shape}")

    @classmethod
    def from_complex(cls, kind, axis_names, axis_units, axes, psi, field_units=("1/m", "1/m^2"),
                     meta=None) -> "FieldGrid":
        psi = np.asarray(psi, dtype=complex)
        return cls(kind, tuple(axis_names), tuple(axis_units), tuple(axes),
                   psi.real.copy(), psi.imag.copy(), psi.real ** 2 + psi.imag ** 2,
                   tuple(field_units), dict(meta or {}))

    @property
    def shape(self) -> tuple:
        return tuple(len(a) for a in self.axes)

    @property
    def psi(self) -> np.ndarray:
        return self.re + 1j * self.im

    def mesh(self):
        return np.meshgrid(*self.axes, indexing="ij")

    def area_weights(self) -> np.ndarray:
        """Trapezoid weights with the area element (``r dr dphi`` on polar grids)."""
        ws = []
        for i, a in enumerate(self.axes):
            if self.kind == "polar" and i == 1:
                ws.append(np.full(len(a), 2 * math.pi / len(a)))
                continue
            w = np.empty(len(a))
            d = np.diff(a)
            w[0], w[-1] = 0.5 * d[0], 0.5 * d[-1]
            w[1:-1] = 0.5 * (d[:-1] + d[1:])
            if self.kind == "polar" and i == 0:
                w = w * a
            ws.append(w)
        out = ws[0]
        for w in ws[1:]:
            out = np.multiply.outer(out, w)
        return out

    def norm(self) -> float:
        """Discrete integral of ``abs2`` over the whole grid."""
        return float(np.sum(self.abs2 * self.area_weights()))

    def allclose(self, other: "FieldGrid", rtol: float = 1e-15, atol: float = 0.0) -> bool:
        if (self.kind, self.axis_names, self.axis_units, self.field_units) != (
                other.kind, other.axis_names, other.axis_units, other.field_units):
            return False
        if self.shape != other.shape or self.meta != other.meta:
            return False
        pairs = list(zip(self.axes, other.axes)) + [(getattr(self, f), getattr(other, f)) for f in _FIELDS]
        return all(np.allclose(a, b, rtol=rtol, atol=atol) for a, b in pairs)


def _meta(state: dict, theta: float, mode, timestamp, mu: float) -> dict:
    return {
        "side": "noncommutative",
        "state": state,
        "theta": float(theta),
        "B": float(B_from_theta(theta)),
        "mu": float(mu),
        "length_scale": _length_scale(theta),
        "mode": NormalizationMode(mode).value,
        "timestamp": timestamp,
    }


def sample_symmetric(n_r: int, m_l: int, theta: float = PAPER_THETA, spec: GridSpec | None = None, *,
                     mode=NormalizationMode.ORTHONORMAL, timestamp=0, mu: float = M_ELECTRON) -> FieldGrid:
    """Symmetric-picture oscillator eigenfunction on a polar or Cartesian grid.

    The eigenfunction is already normalized, so `mode` is only recorded in
    the metadata. `mu` is recorded too; it does not change the shape.
    """
    spec = spec or GridSpec("polar")
    if spec.kind == "line":
        raise ValueError("symmetric-picture states need a polar or Cartesian grid")
    ext = spec.extent_m(theta)
    state = {"gauge": Gauge.SYMMETRIC.value, "n_r": int(n_r), "m_l": int(m_l)}
    meta = _meta(state, theta, mode, timestamp, mu)
    if spec.kind == "polar":
        n_rad, n_phi = spec.counts
        r = np.linspace(0.0, ext, n_rad)
        phi = 2 * math.pi / n_phi * np.arange(n_phi)
        rr, pp = np.meshgrid(r, phi, indexing="ij")
        psi = nc_eigenfunction_symmetric(n_r, m_l, theta, rr, pp)
        return FieldGrid.from_complex("polar", ("r", "phi"), ("m", "rad"), (r, phi), psi, meta=meta)
    nx, ny = spec.counts
    x = np.linspace(-ext, ext, nx)
    y = np.linspace(-ext, ext, ny)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    psi = nc_eigenfunction_symmetric(n_r, m_l, theta, np.hypot(xx, yy), np.arctan2(yy, xx))
    return FieldGrid.from_complex("cartesian", ("x", "y"), ("m", "m"), (x, y), psi, meta=meta)


def sample_landau(n_y: int, k0: float = 0.0, theta: float = PAPER_THETA, spec: GridSpec | None = None, *,
                  mode=NormalizationMode.ORTHONORMAL, gauge=Gauge.LANDAU_FIRST,
                  k0_values=None, timestamp=0, mu: float = M_ELECTRON) -> FieldGrid:
    """Transverse profile of the reduced oscillator, centred at ``-theta k0 / 4``.

    With `k0_values` the result is a 2-D ``(y, k0)`` sweep (one profile per
    column) and `k0` is ignored. The profile is normalized per unit length
    along the plane-wave direction, so ``abs2`` is in 1/m. For the second
    gauge the transverse axis is x and the centre moves to ``+theta k0 / 4``.
    """
    spec = spec or GridSpec("line")
    if spec.kind != "line":
        raise ValueError("Landau-picture states are sampled on a line grid")
    gauge = Gauge(gauge)
    if not gauge.is_landau:
        raise ValueError("sample_landau needs a Landau gauge")
    ext = spec.extent_m(theta)
    u = np.linspace(-ext, ext, spec.counts[0])
    name = "y" if gauge is Gauge.LANDAU_FIRST else "x"
    units = ("1/m^(1/2)", "1/m")
    if k0_values is None:
        state = {"gauge": gauge.value, "n_y": int(n_y), "k0": float(k0)}
        psi = nc_eigenfunction_landau(n_y, k0, theta, u, mode, gauge)
        return FieldGrid.from_complex("cartesian", (name,), ("m",), (u,), psi, units,
                                      _meta(state, theta, mode, timestamp, mu))
    ks = np.asarray(k0_values, dtype=float)
    if ks.ndim != 1 or len(ks) < 2:
        raise ValueError("k0 sweep needs at least two values")
    cols = [nc_eigenfunction_landau(n_y, float(k), theta, u, mode, gauge) for k in ks]
    state = {"gauge": gauge.value, "n_y": int(n_y), "k0": "sweep"}
    return FieldGrid.from_complex("cartesian", (name, "k0"), ("m", "1/m"), (u, ks),
                                  np.stack(cols, axis=1), units,
                                  _meta(state, theta, mode, timestamp, mu))


def sweep_field(B_values, state: QuantumState, spec: GridSpec | None = None, *,
                mu: float = M_ELECTRON, mode=NormalizationMode.ORTHONORMAL, timestamp=0,
                hbar: float = HBAR, e: float = E_CHARGE) -> list[FieldGrid]:
    """One :class:`FieldGrid` per field strength, with ``theta = 4 hbar / eB`` each time.

    A symmetric-gauge `state` samples ``(n_r, m_l)``; a Landau-gauge state
    samples ``n_perp`` at fixed ``k0 = state.k``. Note that an extent given
    in magnetic lengths shrinks with B; use ``unit="m"`` for a common grid.
    """
    B_values = [float(b) for b in B_values]
    if not B_values or any(not (b > 0) for b in B_values):
        raise ValueError("all field strengths must be positive")
    out = []
    for B in B_values:
        theta = theta_from_B(PhysicalParams(mu=mu, B=B, hbar=hbar, e=e))
        if state.gauge is Gauge.SYMMETRIC:
            out.append(sample_symmetric(state.n_r, state.m_l, theta, spec, mode=mode,
                                        timestamp=timestamp, mu=mu))
        else:
            out.append(sample_landau(state.n_perp, state.k, theta, spec, mode=mode,
                                     gauge=state.gauge, timestamp=timestamp, mu=mu))
    return out


# -- export -------------------------------------------------------------------

def _header(grid: FieldGrid) -> list[str]:
    cols = [f"{n} [{u}]" for n, u in zip(grid.axis_names, grid.axis_units)]
    wu, du = grid.field_units
    return cols + [f"re [{wu}]", f"im [{wu}]", f"abs2 [{du}]"]


def _json_payload(grid: FieldGrid) -> dict:
    return {
        "schema": SCHEMA,
        "kind": grid.kind,
        "shape": list(grid.shape),
        "axes": [{"name": n, "unit": u, "values": a.tolist()}
                 for n, u, a in zip(grid.axis_names, grid.axis_units, grid.axes)],
        "field_units": list(grid.field_units),
        "fields": {f: getattr(grid, f).ravel().tolist() for f in _FIELDS},
        "meta": grid.meta,
    }


def export(grid: FieldGrid, fmt: str, path) -> Path:
    """Write `grid` as ``"csv"`` or ``"json"`` to `path` and return the path.

    CSV rows enumerate the grid with the first axis outermost; every float
    is written with ``repr`` so the file round-trips exactly.
    """
    path = Path(path)
    try:
        if fmt == "csv":
            cols = [m.ravel() for m in grid.mesh()] + [getattr(grid, f).ravel() for f in _FIELDS]
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(_header(grid))
                for row in zip(*cols):
                    writer.writerow([repr(float(v)) for v in row])
        elif fmt == "json":
            text = json.dumps(_json_payload(grid), sort_keys=True, separators=(",", ":"))
            path.write_text(text + "\n")
        else:
            raise ValueError(f"unknown export format {fmt!r}")
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def load_json(path) -> FieldGrid:
    """Inverse of ``export(grid, "json", path)``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if data.get("schema") != SCHEMA:
        raise ValueError(f"{path}: not a field grid file")
    shape = tuple(data["shape"])
    axes = data["axes"]
    fields = {f: np.array(data["fields"][f], dtype=float).reshape(shape) for f in _FIELDS}
    return FieldGrid(data["kind"], tuple(a["name"] for a in axes), tuple(a["unit"] for a in axes),
                     tuple(np.array(a["values"], dtype=float) for a in axes),
                     fields["re"], fields["im"], fields["abs2"],
                     tuple(data["field_units"]), data["meta"])


# -- heatmaps -----------------------------------------------------------------

def _raster(grid: FieldGrid, values: np.ndarray, size: int) -> np.ndarray:
    """Image array (rows top to bottom) of `values`; NaN marks pixels off the grid."""
    if grid.kind == "polar":
        r, phi = grid.axes
        r_max = r[-1]
        c = (np.arange(size) + 0.5) / size * 2 * r_max - r_max
        xx, yy = np.meshgrid(c, c[::-1])
        rr = np.hypot(xx, yy)
        pp = np.mod(np.arctan2(yy, xx), 2 * math.pi)
        ir = np.clip(np.rint(np.interp(rr, r, np.arange(len(r)))).astype(int), 0, len(r) - 1)
        dphi = 2 * math.pi / len(phi)
        ip = np.rint((pp - phi[0]) / dphi).astype(int) % len(phi)
        img = values[ir, ip]
        return np.where(rr <= r_max, img, np.nan)
    # first axis left to right, second axis bottom to top
    return values.T[::-1, :]


def render_heatmap(grid: FieldGrid, field: str, path, size: int = 256) -> Path:
    """Write a binary PPM grayscale image of one field, min-max normalized.

    Polar grids are resampled onto a ``size x size`` Cartesian raster by
    nearest neighbour; pixels outside the sampled disc are black. A
    constant field renders uniform mid-gray and emits a ``RuntimeWarning``.
    """
    if field not in _FIELDS:
        raise ValueError(f"field must be one of {_FIELDS}")
    if len(grid.axes) != 2:
        raise ValueError("heatmaps need a 2-D grid")
    img = _raster(grid, getattr(grid, field), size)
    inside = ~np.isnan(img)
    lo, hi = np.min(img[inside]), np.max(img[inside])
    scale = max(abs(lo), abs(hi))
    if hi - lo <= 1e-12 * scale or hi == lo:
        warnings.warn(f"field {field!r} is constant; rendering mid-gray", RuntimeWarning, stacklevel=2)
        gray = np.full(img.shape, 128, dtype=np.uint8)
    else:
        gray = np.rint(255 * (np.where(inside, img, lo) - lo) / (hi - lo)).astype(np.uint8)
    gray[~inside] = 0
    h, w = gray.shape
    path = Path(path)
    try:
        with path.open("wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(np.repeat(gray[:, :, None], 3, axis=2).tobytes())
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_ppm(path) -> np.ndarray:
    """Gray levels (first channel) of a binary PPM written by :func:`render_heatmap`."""
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6":
        raise ValueError(f"{path}: not a binary PPM")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError(f"{path}: unsupported depth {maxval}")
    pixels = np.frombuffer(parts[4][: w * h * 3], dtype=np.uint8)
    return pixels.reshape(h, w, 3)[:, :, 0].copy()


# -- analysis of sampled data -------------------------------------------------

def count_sign_changes(values, floor: float = 1e-8) -> int:
    """Sign changes along a real profile, ignoring samples below ``floor * max|v|``."""
    v = np.asarray(values, dtype=float)
    keep = np.abs(v) > floor * np.max(np.abs(v))
    s = np.sign(v[keep])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def radial_profile(grid: FieldGrid, field: str = "abs2", phi_index: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """``(r, values)`` along one ray of a polar grid."""
    if grid.kind != "polar":
        raise ValueError("radial profiles need a polar grid")
    return grid.axes[0], getattr(grid, field)[:, phi_index]


def radial_nodes(grid: FieldGrid) -> int:
    """Interior radial zeros, from sign changes of ``Re psi`` along ``phi = 0`` (excluding r = 0)."""
    r, re = radial_profile(grid, "re")
    return count_sign_changes(re[r > 0])


def half_max_radius(grid: FieldGrid) -> float:
    """Smallest radius beyond the peak where ``abs2`` drops to half its maximum (linear interpolation)."""
    r, d = radial_profile(grid)
    i = int(np.argmax(d))
    half = 0.5 * d[i]
    below = np.nonzero(d[i:] <= half)[0]
    if not len(below):
        raise ValueError("density never falls to half maximum on this grid")
    j = i + int(below[0])
    return float(np.interp(half, [d[j], d[j - 1]], [r[j], r[j - 1]]))


def peak_radius(grid: FieldGrid) -> float:
    """Radius of the ``abs2`` maximum along ``phi = 0``."""
    r, d = radial_profile(grid)
    return float(r[int(np.argmax(d))])


def profile_centroid(grid: FieldGrid) -> np.ndarray | float:
    """``sum(u |psi|^2) / sum(|psi|^2)`` along the transverse axis.

    Returns a float for a single profile and one value per ``k0`` for a
    sweep. For an oscillator eigenstate this is the oscillator centre.
    """
    u = grid.axes[0]
    d = grid.abs2
    if d.ndim == 1:
        return float(np.sum(u * d) / np.sum(d))
    return (u[:, None] * d).sum(axis=0) / d.sum(axis=0)
