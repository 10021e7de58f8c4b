"""Numerical oracles for the analytic Landau/oscillator results.

Three independent checks:

- quadrature inner products on polar or Cartesian grids (normalization,
  orthogonality);
- finite-difference application of the Hamiltonian to a sampled state
  (residual ``||H psi - E psi|| / ||E psi||``);
- diagonalization of a discretized Hamiltonian, which recovers the Landau
  levels without using any analytic spectrum.
"""
from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass
import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .landau import (
    Gauge,
    NormalizationMode,
    PhysicalParams,
    QuantumState,
    Sign,
    cyclotron_frequency,
    eigenfunction_landau,
    eigenfunction_symmetric,
    energy,
    landau_center,
    magnetic_length,
)

__all__ = [
    "GridMismatchError",
    "ResolutionError",
    "ConvergenceError",
    "QuadratureGrid",
    "SpectrumMatchReport",
    "sample_state",
    "inner_product",
    "gram_matrix",
    "hamiltonian_residual",
    "predicted_truncation",
    "convergence_order",
    "assemble_hamiltonian",
    "lanczos_smallest",
    "grid_diagonalize",
    "spectrum_match",
    "cluster_levels",
    "landau_quantum",
]

MIN_POINTS = 16
MIN_POINTS_PER_LB = 20
DENSE_LIMIT = 4096


class GridMismatchError(ValueError):
    pass


class ResolutionError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


def _trapezoid_weights(n: int, h: float) -> np.ndarray:
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return w


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Tensor-product grid with composite-trapezoid weights.

    ``axes`` holds the 1-D coordinate arrays (``(r, phi)`` for polar,
    ``(x,)`` or ``(x, y)`` for Cartesian); fields sampled on the grid have
    shape ``counts`` with axis order as listed. ``weights`` already contains
    the area element, so an integral is ``sum(f * weights)``.
    """

    kind: str
    axes: tuple
    weights: np.ndarray
    radial: str = "uniform"

    @property
    def counts(self) -> tuple:
        return tuple(len(a) for a in self.axes)

    @property
    def shape(self) -> tuple:
        return self.counts

    @property
    def extents(self) -> tuple:
        return tuple((float(a[0]), float(a[-1])) for a in self.axes)

    @property
    def spacing(self) -> tuple:
        """Uniform spacing per axis (radial spacing is ``nan`` on a log grid)."""
        out = []
        for i, a in enumerate(self.axes):
            if self.kind == "polar" and i == 0 and self.radial == "log":
                out.append(float("nan"))
            elif self.kind == "polar" and i == 1:
                out.append(2 * math.pi / len(a))
            else:
                out.append(float(a[1] - a[0]))
        return tuple(out)

    def mesh(self):
        return np.meshgrid(*self.axes, indexing="ij")

    @classmethod
    def polar(cls, r_max: float, n_r: int, n_phi: int, radial: str = "uniform",
              r_min: float | None = None) -> "QuadratureGrid":
        """Polar grid on ``[0, r_max] x [0, 2 pi)``.

        ``radial="uniform"`` places ``n_r`` equispaced radii including 0.
        ``radial="log"`` is equispaced in ``t = ln r`` from `r_min` (default
        ``1e-6 r_max``) to `r_max`; the weight ``r dr = r^2 dt`` makes the
        trapezoid rule converge spectrally because the integrand decays at
        both ends of the t axis.
        """
        _check_counts(n_r, n_phi)
        if r_max <= 0:
            raise ValueError("r_max must be positive")
        h_phi = 2 * math.pi / n_phi
        phi = h_phi * np.arange(n_phi)
        if radial == "uniform":
            r = np.linspace(0.0, r_max, n_r)
            wr = _trapezoid_weights(n_r, r[1] - r[0]) * r
        elif radial == "log":
            r_min = r_max * 1e-6 if r_min is None else r_min
            if not 0 < r_min < r_max:
                raise ValueError("need 0 < r_min < r_max")
            t = np.linspace(math.log(r_min), math.log(r_max), n_r)
            r = np.exp(t)
            wr = _trapezoid_weights(n_r, t[1] - t[0]) * r * r
        else:
            raise ValueError(f"unknown radial spacing {radial!r}")
        w = np.outer(wr, np.full(n_phi, h_phi))
        return cls("polar", (r, phi), w, radial)

    @classmethod
    def cartesian1d(cls, lo: float, hi: float, n: int) -> "QuadratureGrid":
        _check_counts(n)
        x = np.linspace(lo, hi, n)
        return cls("cartesian1d", (x,), _trapezoid_weights(n, x[1] - x[0]))

    @classmethod
    def cartesian2d(cls, x_range: tuple, y_range: tuple, nx: int, ny: int | None = None) -> "QuadratureGrid":
        ny = nx if ny is None else ny
        _check_counts(nx, ny)
        x = np.linspace(*x_range, nx)
        y = np.linspace(*y_range, ny)
        w = np.outer(_trapezoid_weights(nx, x[1] - x[0]), _trapezoid_weights(ny, y[1] - y[0]))
        return cls("cartesian2d", (x, y), w)

    @classmethod
    def box(cls, half_width: float, n: int) -> "QuadratureGrid":
        return cls.cartesian2d((-half_width, half_width), (-half_width, half_width), n)

    def check_extent(self, l_b: float, minimum: float = 8.0):
        """Raise if a polar grid reaches less than ``minimum`` magnetic lengths."""
        if self.kind == "polar" and self.axes[0][-1] < minimum * l_b * (1 - 1e-12):
            raise ResolutionError(
                f"polar extent {self.axes[0][-1] / l_b:.2f} l_B < {minimum} l_B")


def _check_counts(*counts):
    for c in counts:
        if c < MIN_POINTS:
            raise ValueError(f"need at least {MIN_POINTS} points per axis, got {c}")


def sample_state(state: QuantumState, p: PhysicalParams, grid: QuadratureGrid,
                 mode: NormalizationMode = NormalizationMode.ORTHONORMAL) -> np.ndarray:
    """Evaluate the analytic eigenfunction of `state` on every node of `grid`.

    On a 1-D grid a Landau-gauge state is sampled along its transverse axis
    (plane-wave coordinate set to 0); symmetric-gauge states need a 2-D grid.
    """
    if grid.kind == "polar":
        r, phi = grid.mesh()
        if state.gauge is Gauge.SYMMETRIC:
            return eigenfunction_symmetric(state, p, r, phi, mode)
        return eigenfunction_landau(state, p, r * np.cos(phi), r * np.sin(phi), mode)
    if grid.kind == "cartesian2d":
        x, y = grid.mesh()
        if state.gauge is Gauge.SYMMETRIC:
            return eigenfunction_symmetric(state, p, np.hypot(x, y), np.arctan2(y, x), mode)
        return eigenfunction_landau(state, p, x, y, mode)
    (u,) = grid.axes
    if state.gauge is Gauge.SYMMETRIC:
        raise ValueError("symmetric-gauge states need a 2-D grid")
    zero = np.zeros_like(u)
    if state.gauge is Gauge.LANDAU_FIRST:
        return eigenfunction_landau(state, p, zero, u, mode)
    return eigenfunction_landau(state, p, u, zero, mode)


def inner_product(psi_a, psi_b, grid: QuadratureGrid) -> complex:
    """``<a|b> = sum conj(a) b w`` with the grid's area weights."""
    psi_a = np.asarray(psi_a)
    psi_b = np.asarray(psi_b)
    if psi_a.shape != grid.shape or psi_b.shape != grid.shape:
        raise GridMismatchError(
            f"field shapes {psi_a.shape} and {psi_b.shape} do not match grid {grid.shape}")
    return complex(np.sum(np.conj(psi_a) * psi_b * grid.weights))


def gram_matrix(fields, grid: QuadratureGrid) -> np.ndarray:
    """Matrix of all pairwise inner products of `fields`."""
    flat = []
    for f in fields:
        f = np.asarray(f)
        if f.shape != grid.shape:
            raise GridMismatchError(f"field shape {f.shape} does not match grid {grid.shape}")
        flat.append(f.ravel())
    a = np.array(flat)
    w = grid.weights.ravel()
    return np.conj(a) @ (a * w).T


# -- finite-difference Hamiltonian residual ---------------------------------

def _d1(f, h, axis):
    # central first derivative, interior only (edges wrap and are discarded)
    return (np.roll(f, -1, axis) - np.roll(f, 1, axis)) / (2 * h)


def _d2(f, h, axis):
    return (np.roll(f, -1, axis) - 2 * f + np.roll(f, 1, axis)) / (h * h)


def _apply_h(state: QuantumState, p: PhysicalParams, grid: QuadratureGrid, psi: np.ndarray):
    """Return ``(H psi, interior mask)`` using second-order central differences."""
    hbar, mu, eB = p.hbar, p.mu, p.e * p.B
    s = int(state.sign)
    kin = -hbar * hbar / (2 * mu)
    mask = np.ones(grid.shape, dtype=bool)

    if grid.kind == "polar":
        if grid.radial != "uniform":
            raise ResolutionError("finite differences need a uniform radial grid")
        if state.gauge is not Gauge.SYMMETRIC:
            raise ValueError("polar residual is implemented for the symmetric gauge")
        r, _ = grid.mesh()
        hr, hphi = grid.spacing
        with np.errstate(divide="ignore", invalid="ignore"):
            lap = _d2(psi, hr, 0) + _d1(psi, hr, 0) / r + _d2(psi, hphi, 1) / (r * r)
        lz = -1j * hbar * _d1(psi, hphi, 1)
        hpsi = kin * lap + eB * eB / (8 * mu) * r * r * psi - s * eB / (2 * mu) * lz
        mask[0, :] = mask[-1, :] = False
        return hpsi, mask

    if grid.kind == "cartesian2d":
        x, y = grid.mesh()
        hx, hy = grid.spacing
        lap = _d2(psi, hx, 0) + _d2(psi, hy, 1)
        dx, dy = _d1(psi, hx, 0), _d1(psi, hy, 1)
        if state.gauge is Gauge.SYMMETRIC:
            lz = -1j * hbar * (x * dy - y * dx)
            hpsi = kin * lap + eB * eB / (8 * mu) * (x * x + y * y) * psi - s * eB / (2 * mu) * lz
        elif state.gauge is Gauge.LANDAU_FIRST:
            hpsi = kin * lap + eB * eB / (2 * mu) * y * y * psi + s * eB / mu * y * (-1j * hbar * dx)
        else:
            hpsi = kin * lap + eB * eB / (2 * mu) * x * x * psi - s * eB / mu * x * (-1j * hbar * dy)
        mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = False
        return hpsi, mask

    if state.gauge is Gauge.SYMMETRIC:
        raise ValueError("symmetric-gauge states need a 2-D grid")
    (u,) = grid.axes
    (h,) = grid.spacing
    hpsi = kin * _d2(psi, h, 0) + _landau_potential(state, p, u) * psi
    mask[0] = mask[-1] = False
    return hpsi, mask


def _landau_potential(state: QuantumState, p: PhysicalParams, u, k: float | None = None):
    """``(hbar k + s eB y)^2 / 2mu`` (first gauge) or ``(hbar k - s eB x)^2 / 2mu`` (second)."""
    k = state.k if k is None else k
    s = int(state.sign)
    flip = 1 if state.gauge is Gauge.LANDAU_FIRST else -1
    return (p.hbar * k + flip * s * p.e * p.B * u) ** 2 / (2 * p.mu)


def _points_per_lb(grid: QuadratureGrid, l_b: float) -> float:
    if grid.kind == "polar":
        return l_b / grid.spacing[0]
    return l_b / max(grid.spacing)


def predicted_truncation(state: QuantumState, p: PhysicalParams, grid: QuadratureGrid) -> float:
    """Estimated relative residual of the second-order stencil for `state` on `grid`.

    The absolute error grows like ``(h / l_B)^2`` times a polynomial in the
    oscillator index, plus ``(m dphi)^2`` on polar grids; dividing by the
    level energy turns it into a relative residual. The polynomial
    coefficients come from a fit to measured residuals (n_r <= 3,
    |m_l| <= 4) with a 1.5x margin; the estimate tracks the measurement to
    within about a factor of two, so it guards against grossly coarse
    grids rather than giving a strict bound.
    """
    l_b = magnetic_length(p)
    h = 1.0 / _points_per_lb(grid, l_b)
    if state.gauge is Gauge.SYMMETRIC:
        osc = 2 * state.n_r + abs(state.m_l)
        units = osc + 1 - int(state.sign) * state.m_l
        am = abs(state.m_l)
        est = h * h * (0.111 + 0.094 * osc + 0.027 * osc * osc)
        if grid.kind == "polar":
            est += (state.m_l * grid.spacing[1]) ** 2 * (0.032 + 0.032 * am + 0.026 * am * am)
        return 1.5 * est / units
    est = h * h * (0.2 + 0.05 * state.n_perp)
    if grid.kind == "cartesian2d":
        est += (state.k * max(grid.spacing)) ** 2 / 6.0
    return est


def hamiltonian_residual(state: QuantumState, p: PhysicalParams, grid: QuadratureGrid, *,
                         mode: NormalizationMode = NormalizationMode.ORTHONORMAL,
                         psi: np.ndarray | None = None,
                         energy_value: float | None = None,
                         energy_offset: float = 0.0,
                         tol: float | None = 1e-3) -> float:
    """Relative residual ``||H psi - E psi||_2 / ||E psi||_2`` over interior nodes.

    `psi` defaults to the analytic eigenfunction sampled on `grid`; pass a
    different array (same grid) to test other functions under the same
    operator. `energy_offset` [J] is added to the energy as a negative control.

    Raises
    ------
    ResolutionError
        if the grid has fewer than 20 points per magnetic length, or if the
        predicted truncation error exceeds `tol` (skip with ``tol=None``).
    """
    l_b = magnetic_length(p)
    if _points_per_lb(grid, l_b) < MIN_POINTS_PER_LB * (1 - 1e-9):
        raise ResolutionError(
            f"grid resolves l_B with {_points_per_lb(grid, l_b):.1f} points; need >= {MIN_POINTS_PER_LB}")
    if tol is not None:
        pred = predicted_truncation(state, p, grid)
        if pred > tol:
            raise ResolutionError(f"predicted truncation {pred:.2e} exceeds tolerance {tol:.1e}")
    if psi is None:
        psi = sample_state(state, p, grid, mode)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != grid.shape:
        raise GridMismatchError(f"field shape {psi.shape} does not match grid {grid.shape}")
    e = (energy(state, p) if energy_value is None else energy_value) + energy_offset
    hpsi, mask = _apply_h(state, p, grid, psi)
    w = grid.weights
    diff = np.abs(hpsi - e * psi)[mask] ** 2 * w[mask]
    ref = np.abs(e * psi)[mask] ** 2 * w[mask]
    return float(math.sqrt(diff.sum() / ref.sum()))


def convergence_order(state: QuantumState, p: PhysicalParams, coarse: QuadratureGrid,
                      fine: QuadratureGrid, **kwargs) -> tuple[float, float, float]:
    """Observed order ``log(res_coarse / res_fine) / log(h_coarse / h_fine)``.

    Returns ``(order, res_coarse, res_fine)``.
    """
    rc = hamiltonian_residual(state, p, coarse, **kwargs)
    rf = hamiltonian_residual(state, p, fine, **kwargs)
    ratio = coarse.spacing[0] / fine.spacing[0]
    return math.log(rc / rf) / math.log(ratio), rc, rf


# -- grid diagonalization -----------------------------------------------------

# fourth-order central second difference: (-1, 16, -30, 16, -1) / 12 h^2
_STENCIL = ((1, 16.0 / 12.0), (2, -1.0 / 12.0))
_STENCIL_DIAG = 30.0 / 12.0


def assemble_hamiltonian(p: PhysicalParams, gauge: Gauge, grid: QuadratureGrid,
                         sign=Sign.PLUS, k: float = 0.0) -> sp.csr_matrix:
    """Dirichlet finite-difference Hamiltonian on the interior nodes of `grid`.

    Symmetric gauge: complex Hermitian matrix on a Cartesian 2-D box. The
    kinetic term ``(p - a)^2 / 2mu`` with ``a = s (eB/2) (-y, x)`` is
    discretized gauge-covariantly: every hop of the fourth-order stencil
    carries the phase ``exp(-i a . d / hbar)`` of the vector potential along
    it, which keeps each Landau level degenerate on the lattice.
    Landau gauge: real symmetric matrix on a 1-D transverse grid at fixed
    `k`, same stencil, potential ``(hbar k + s eB y)^2 / 2mu``.

    The result is explicitly symmetrized, so ``H == H.conj().T`` exactly.
    """
    gauge = Gauge(gauge)
    s = int(Sign.parse(sign))
    hbar, mu, eB = p.hbar, p.mu, p.e * p.B
    if gauge is Gauge.SYMMETRIC:
        if grid.kind != "cartesian2d":
            raise ValueError("symmetric-gauge oracle needs a Cartesian 2-D grid")
        xs, ys = (a[1:-1] for a in grid.axes)
        hx, hy = grid.spacing
        nx, ny = len(xs), len(ys)
        index = np.arange(nx * ny).reshape(nx, ny)
        rows, cols, vals = [], [], []
        for d, w in _STENCIL:
            # x hops at fixed y: a_x = -s eB y / 2
            i0, i1 = index[:-d, :].ravel(), index[d:, :].ravel()
            ax = -s * 0.5 * eB * np.broadcast_to(ys, (nx - d, ny)).ravel()
            t = -w * hbar * hbar / (2 * mu * hx * hx) * np.exp(-1j * ax * d * hx / hbar)
            rows += [i0, i1]
            cols += [i1, i0]
            vals += [t, np.conj(t)]
            # y hops at fixed x: a_y = +s eB x / 2
            j0, j1 = index[:, :-d].ravel(), index[:, d:].ravel()
            ay = s * 0.5 * eB * np.broadcast_to(xs[:, None], (nx, ny - d)).ravel()
            t = -w * hbar * hbar / (2 * mu * hy * hy) * np.exp(-1j * ay * d * hy / hbar)
            rows += [j0, j1]
            cols += [j1, j0]
            vals += [t, np.conj(t)]
        diag = _STENCIL_DIAG * hbar * hbar / mu * (0.5 / (hx * hx) + 0.5 / (hy * hy))
        h = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                          shape=(nx * ny, nx * ny)).tocsr()
        h = h + sp.diags(np.full(nx * ny, diag, dtype=complex))
    else:
        if grid.kind != "cartesian1d":
            raise ValueError("Landau-gauge oracle needs a 1-D transverse grid")
        u = grid.axes[0][1:-1]
        (hu,) = grid.spacing
        n = len(u)
        c = hbar * hbar / (2 * mu * hu * hu)
        diags = {0: _STENCIL_DIAG * c + _landau_potential(QuantumState.landau(0, k, gauge, s), p, u)}
        for d, w in _STENCIL:
            diags[d] = diags[-d] = np.full(n - d, -w * c)
        h = sp.diags(list(diags.values()), list(diags.keys()))
    h = sp.csr_matrix(h)
    return ((h + h.conj().T) * 0.5).tocsr()


def lanczos_smallest(a: sp.spmatrix, count: int, *, shift: float = 0.0, block: int | None = None,
                     max_steps: int = 200, tol: float = 1e-10, seed: int = 0) -> np.ndarray:
    """Smallest `count` eigenvalues of a Hermitian sparse matrix by block shift-invert Lanczos.

    The three-term block recurrence runs on ``(A - shift)^-1`` (LU factored
    once) with full re-orthogonalization against all previous blocks. The
    block size (default `count`) must cover the multiplicity of the wanted
    eigenvalues; a single starting vector only ever sees one direction of
    a degenerate eigenspace. Ritz pairs are accepted once their residual
    bounds ``||B_m S_mi||`` fall below ``tol`` times the Ritz value.

    Raises
    ------
    ConvergenceError
        after `max_steps` block steps; ``diagnostics`` holds the last bounds.
    """
    n = a.shape[0]
    count = int(count)
    if not 0 < count <= n:
        raise ValueError("count must be in 1..n")
    b = min(block or count, n)
    complex_ = np.iscomplexobj(a.data)
    dtype = np.complex128 if complex_ else np.float64
    lu = spla.splu(sp.csc_matrix(a - shift * sp.identity(n, dtype=a.dtype, format="csc")))
    rng = np.random.default_rng(seed)

    def random_block(m):
        v = rng.standard_normal((n, m))
        if complex_:
            v = v + 1j * rng.standard_normal((n, m))
        return v.astype(dtype)

    q, _ = np.linalg.qr(random_block(b))
    basis = [q]
    alphas, betas = [], []
    bounds = None
    for step in range(max_steps):
        w = lu.solve(basis[-1])
        al = basis[-1].conj().T @ w
        al = 0.5 * (al + al.conj().T)
        w = w - basis[-1] @ al
        if betas:
            w = w - basis[-2] @ betas[-1].conj().T
        qall = np.hstack(basis)
        for _ in range(2):
            w -= qall @ (qall.conj().T @ w)
        q_next, be = np.linalg.qr(w)
        alphas.append(al)

        m = len(alphas)
        t = np.zeros((m * b, m * b), dtype=dtype)
        for i, blk in enumerate(alphas):
            t[i * b:(i + 1) * b, i * b:(i + 1) * b] = blk
        for i, blk in enumerate(betas):
            t[(i + 1) * b:(i + 2) * b, i * b:(i + 1) * b] = blk
            t[i * b:(i + 1) * b, (i + 1) * b:(i + 2) * b] = blk.conj().T
        theta, svec = np.linalg.eigh(t)
        order = np.argsort(-np.abs(theta))[:count]
        bounds = np.linalg.norm(be @ svec[-b:, order], axis=0)
        exhausted = m * b + b > n
        if len(order) == count and (exhausted or np.all(bounds <= tol * np.abs(theta[order]))):
            return np.sort(shift + 1.0 / theta[order])

        # replace directions that collapsed (invariant subspace found) with fresh ones
        weak = np.abs(np.diag(be)) < 1e-12 * max(1.0, np.abs(theta).max())
        if np.any(weak):
            fresh = random_block(int(weak.sum()))
            qall = np.hstack(basis + [q_next[:, ~weak]])
            for _ in range(2):
                fresh -= qall @ (qall.conj().T @ fresh)
            q_next[:, weak], _ = np.linalg.qr(fresh)
            be[weak, :] = 0.0
        betas.append(be)
        basis.append(q_next)
    raise ConvergenceError(
        f"block Lanczos did not converge {count} eigenvalues in {max_steps} steps",
        {"steps": max_steps, "block": b, "bounds": None if bounds is None else bounds.tolist()},
    )


def _box_warning(p: PhysicalParams, gauge: Gauge, grid: QuadratureGrid, k: float, sign):
    # ground-state density ~ exp(-d^2 / 2 l_B^2) (symmetric) or exp(-d^2 / l_B^2) (Landau)
    l_b = magnetic_length(p)
    if gauge is Gauge.SYMMETRIC:
        d = min(min(abs(lo), abs(hi)) for lo, hi in grid.extents)
        ratio = math.exp(-d * d / (2 * l_b * l_b))
    else:
        c = landau_center(QuantumState.landau(0, k, gauge, sign), p)
        lo, hi = grid.extents[0]
        d = min(c - lo, hi - c)
        ratio = math.exp(-d * d / (l_b * l_b)) if d > 0 else 1.0
    if ratio > 1e-8:
        warnings.warn(f"box too small: ground density at boundary is {ratio:.1e} of peak",
                      RuntimeWarning, stacklevel=3)
    return ratio


def grid_diagonalize(p: PhysicalParams, gauge: Gauge, grid: QuadratureGrid, count: int, *,
                     sign=Sign.PLUS, k: float = 0.0, method: str = "auto") -> np.ndarray:
    """Lowest `count` eigenvalues [J] of the discretized Hamiltonian.

    ``method`` is ``"dense"`` (LAPACK Hermitian solve), ``"lanczos"``
    (:func:`lanczos_smallest`) or ``"auto"`` (dense up to 4096 unknowns).
    """
    if not 1 <= count <= 12:
        raise ValueError("count must be between 1 and 12")
    gauge = Gauge(gauge)
    _box_warning(p, gauge, grid, k, sign)
    h = assemble_hamiltonian(p, gauge, grid, sign, k)
    n = h.shape[0]
    if method == "auto":
        method = "dense" if n <= DENSE_LIMIT else "lanczos"
    if method == "dense":
        return scipy.linalg.eigh(h.toarray(), eigvals_only=True, subset_by_index=[0, count - 1])
    if method == "lanczos":
        return lanczos_smallest(h, count)
    raise ValueError(f"unknown method {method!r}")


# -- spectrum comparison -----------------------------------------------------

@dataclass
class SpectrumMatchReport:
    analytic: list
    numeric: list
    errors: list
    max_error: float
    tol: float
    verdict: bool
    truncated: bool = False

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        return d


def spectrum_match(analytic, numeric, tol: float) -> SpectrumMatchReport:
    """Sort both lists, pair them up and compare with relative tolerance `tol`.

    Unequal lengths are truncated to the shorter one and flagged.
    """
    a = sorted(float(v) for v in analytic)
    b = sorted(float(v) for v in numeric)
    if not a or not b:
        raise ValueError("both spectra must be non-empty")
    truncated = len(a) != len(b)
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    errors = [abs(y - x) / abs(x) for x, y in zip(a, b)]
    worst = max(errors)
    return SpectrumMatchReport(a, b, errors, worst, tol, worst <= tol, truncated)


def cluster_levels(values, gap: float) -> list[list[float]]:
    """Split sorted `values` wherever consecutive entries differ by more than `gap`."""
    vals = sorted(values)
    groups = [[vals[0]]]
    for v in vals[1:]:
        if v - groups[-1][-1] > gap:
            groups.append([v])
        else:
            groups[-1].append(v)
    return groups


def landau_quantum(p: PhysicalParams) -> float:
    """``hbar omega_c``, the spacing between Landau levels [J]."""
    return p.hbar * cyclotron_frequency(p)
