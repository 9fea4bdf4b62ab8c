"""Scaled Hermite basis functions and their index-space difference calculus.

The basis function of order n is

    xi_n(k) = i^n e^{-k^2/2} H_n(k) / (pi^{1/4} 2^{n/2} sqrt(n!))

where H_n is the physicists' Hermite polynomial.  Everything in this package
that integrates over momentum expands in this basis, so the evaluation here
must stay accurate for orders in the hundreds.  Factorials and raw H_n values
overflow long before that, which is why all evaluation goes through normalized
three-term recurrences.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import OrderTooLargeError

_PI_QUARTER = math.pi ** 0.25

# H_30(10) already needs ~1e38-scale intermediates; beyond that raw polynomial
# values are useless in double precision.
_MAX_RAW_ORDER = 30


def hermite_poly(n: int, k: float) -> float:
    """Physicists' Hermite polynomial H_n(k) by the recurrence
    H_{n+1} = 2k H_n - 2n H_{n-1}, seeded with H_0 = 1 and H_1 = 2k.

    Only intended for small orders; use :func:`xi` for anything serious.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    if n > _MAX_RAW_ORDER:
        raise OrderTooLargeError(
            f"raw Hermite order {n} exceeds the stable limit {_MAX_RAW_ORDER}; "
            "use the normalized basis function instead"
        )
    h_prev, h = 1.0, 2.0 * k
    if n == 0:
        return 1.0
    for j in range(1, n):
        h_prev, h = h, 2.0 * k * h - 2.0 * j * h_prev
    return h


def xi(n: int, k: float) -> complex:
    """Scaled Hermite basis function xi_n(k).

    Computed by the normalized recurrence

        xi_{n+1} = i k sqrt(2/(n+1)) xi_n + sqrt(n/(n+1)) xi_{n-1}

    which never forms H_n or n! explicitly and is overflow-free for all n.
    The i^n phase is carried inside the value, so even orders are real and
    odd orders purely imaginary.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    cur = complex(math.exp(-0.5 * k * k) / _PI_QUARTER)
    if n == 0:
        return cur
    prev = 0j
    ik = 1j * k
    for j in range(n):
        prev, cur = cur, ik * math.sqrt(2.0 / (j + 1)) * cur + math.sqrt(j / (j + 1.0)) * prev
    return cur


def xi_axis(n_max: int, k: float) -> np.ndarray:
    """All of xi_0(k) .. xi_{n_max}(k) as one complex vector.

    Same recurrence as :func:`xi`; used by every mode sum in the package.
    """
    if n_max < 0:
        raise ValueError(f"order must be nonnegative, got {n_max}")
    out = np.empty(n_max + 1, dtype=complex)
    out[0] = math.exp(-0.5 * k * k) / _PI_QUARTER
    if n_max == 0:
        return out
    ik = 1j * k
    out[1] = ik * math.sqrt(2.0) * out[0]
    for j in range(1, n_max):
        out[j + 1] = ik * math.sqrt(2.0 / (j + 1)) * out[j] + math.sqrt(j / (j + 1.0)) * out[j - 1]
    return out


def xi_product(n: tuple[int, int, int], k: tuple[float, float, float]) -> complex:
    """Product over the three axes, prod_j xi_{n_j}(k_j)."""
    value = 1 + 0j
    for nj, kj in zip(n, k, strict=True):
        value *= xi(nj, kj)
    return value


def xi_delta_sharp(n: int, k: float) -> complex:
    """-i times the sharp difference applied to the order index of xi.

    Returns -i/sqrt(2) [sqrt(n+1) xi_{n+1}(k) - sqrt(n) xi_{n-1}(k)]; the
    lower term is absent at n = 0.  Equals k xi_n(k): the basis functions are
    eigenfunctions of the sharp difference operator with eigenvalue ik.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    upper = math.sqrt(n + 1.0) * xi(n + 1, k)
    lower = math.sqrt(float(n)) * xi(n - 1, k) if n > 0 else 0j
    return -1j / math.sqrt(2.0) * (upper - lower)


def phi_row(n_max: int, x: np.ndarray) -> np.ndarray:
    """Real polynomial parts phi_n(x) = H_n(x)/(2^{n/2} sqrt(n!)) for n <= n_max.

    Shape (n_max+1, len(x)).  xi_n(k) = i^n e^{-k^2/2} phi_n(k) / pi^{1/4},
    so tables of phi against Gauss-Hermite weights carry no exponentials at all.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    rows = np.empty((n_max + 1, x.size))
    rows[0] = 1.0
    if n_max >= 1:
        rows[1] = math.sqrt(2.0) * x
    for j in range(1, n_max):
        rows[j + 1] = math.sqrt(2.0 / (j + 1)) * x * rows[j] - math.sqrt(j / (j + 1.0)) * rows[j - 1]
    return rows


def phi_at_zero(n: int) -> float:
    """phi_n(0), nonzero only for even n.  Needed by pole subtractions."""
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    if n % 2 == 1:
        return 0.0
    val = 1.0
    # phi_{j+1}(0) = -sqrt(j/(j+1)) phi_{j-1}(0), stepping over even orders
    for j in range(1, n, 2):
        val *= -math.sqrt(j / (j + 1.0))
    return val
