"""Orthogonal polynomials and log-factorials used by the eigenfunction formulas.

Everything here is evaluated with upward three-term recurrences so that
moderate orders (n up to ~50) at large arguments stay finite; the factorial
series forms overflow long before that.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["laguerre_assoc", "hermite_phys", "ln_factorial"]


def _check_order(n) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"polynomial order must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"polynomial order must be non-negative, got {n}")
    return n


def _as_finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("polynomial argument must be finite")
    return x


def laguerre_assoc(n: int, alpha: float, x):
    """Generalized Laguerre polynomial :math:`L_n^{\\alpha}(x)`.

    Parameters
    ----------
    n : int
        polynomial order, ``n >= 0``
    alpha : float
        shaping parameter; physical call sites pass ``|m_l|``
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
        same shape as `x`

    Notes
    -----
    Uses ``k L_k = (2k - 1 + alpha - x) L_{k-1} - (k - 1 + alpha) L_{k-2}``.
    """
    n = _check_order(n)
    x = _as_finite(x)
    alpha = float(alpha)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k
    return cur if cur.ndim else float(cur)


def hermite_phys(n: int, x):
    """Physicists' Hermite polynomial :math:`H_n(x)`, via ``H_{k+1} = 2x H_k - 2k H_{k-1}``."""
    n = _check_order(n)
    x = _as_finite(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for k in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return cur if cur.ndim else float(cur)


def ln_factorial(n: int) -> float:
    """``ln(n!)``; exact integer product up to 20!, log-gamma beyond."""
    n = _check_order(n)
    if n <= 20:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1.0)
