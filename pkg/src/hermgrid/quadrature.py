"""Quadrature rules and cached basis tables.

All rules are cached by node count and returned as read-only arrays: the
first-touch cost of large allocations on this class of host is significant,
so every integral in the package contracts against these shared tables
instead of rebuilding them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_hermite, roots_legendre

from .hermite import phi_row


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts and tolerances shared by every integral evaluation.

    refine=True evaluates each quadrature at the configured node count and
    at double that count; the difference is reported as the error estimate.
    With refine=False no estimate exists and NaN is reported instead.
    """

    gh_nodes: int = 64
    radial_nodes: int = 400
    tol: float = 1e-8
    refine: bool = True

    def __post_init__(self) -> None:
        if self.gh_nodes < 8:
            raise ValueError(f"gh_nodes must be >= 8, got {self.gh_nodes}")
        if self.radial_nodes < 8:
            raise ValueError(f"radial_nodes must be >= 8, got {self.radial_nodes}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


def _freeze(*arrays: np.ndarray) -> tuple[np.ndarray, ...]:
    for a in arrays:
        a.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def gauss_hermite(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for integral e^{-x^2} f(x) dx over the real line."""
    x, w = roots_hermite(n_nodes)
    return _freeze(x, w)


@lru_cache(maxsize=None)
def gauss_legendre(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for integral f(y) dy over [-1, 1]."""
    y, w = roots_legendre(n_nodes)
    return _freeze(y, w)


@lru_cache(maxsize=None)
def gauss_laguerre_half(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Generalized Gauss-Laguerre rule for integral sqrt(x) e^{-x} f(x) dx on [0, inf).

    Built by the Golub-Welsch eigenvalue route.  The library routine for this
    rule overflows internally and returns NaN nodes already at a few hundred
    points, which is inside this package's default radial resolution.
    """
    alpha = 0.5
    k = np.arange(n_nodes, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    x, vec = eigh_tridiagonal(diag, off)
    w = math.gamma(alpha + 1.0) * vec[0] ** 2
    return _freeze(x, w)


@lru_cache(maxsize=None)
def weighted_phi_table(n_max: int, n_nodes: int) -> np.ndarray:
    """Table B[n, i] = phi_n(x_i) sqrt(w_i) on the Gauss-Hermite grid.

    Row dot products give basis overlaps: sum_i B[n,i] B[m,i] is the
    orthonormality integral, exact for n + m < 2 n_nodes.  Entries stay
    O(1) for any order because the Gaussian halves live in the weights.
    """
    x, w = gauss_hermite(n_nodes)
    table = phi_row(n_max, x) * np.sqrt(w)
    table.setflags(write=False)
    return table
