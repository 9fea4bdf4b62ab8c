"""Static Green's functions of the sharp-difference Laplacian, their closed
coincidence forms, and the continuum comparisons.

The central object is

    G(n, nhat; mu) = integral d^3k  prod_j xi_{n_j}(k_j) conj(xi_{nhat_j}(k_j))
                     / (k.k + mu^2)

which inverts (sharp Laplacian - mu^2) with a Kronecker source and stays
finite at coincidence, unlike its continuum counterpart.  Three independent
evaluation routes are provided and cross-checked: tensor Gauss-Hermite in 3D
(g_sharp), a reduced radial-angular quadrature along one axis (g_sharp_axis),
and closed forms for the coincidence and massless cases.

Evaluation notes.  The integrand's denominator develops a near-pole at the
origin as mu -> 0, which plain Gauss-Hermite cannot resolve at any feasible
node count.  Both quadrature routes therefore subtract a local model of the
integrand at the pole (the quadratic Taylor approximant of the polynomial
pair product in 3D, the exact analytic continuation in the reduced route)
and add back the model's analytically known integral; the subtraction is
exact in the massless limit.  The reduced route drops the subtraction once
mu is large enough that the pole no longer limits the rule, because the
continuation factor grows exponentially with mu^2 there and would only add
cancellation noise.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx

from .errors import DomainError, NonconvergenceError
from .hermite import phi_at_zero, phi_row
from .quadrature import (
    QuadratureConfig,
    gauss_hermite,
    gauss_laguerre_half,
    gauss_legendre,
    weighted_phi_table,
)

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GreensValue:
    """A Green's function sample plus the honest refinement-based error bar.

    err_estimate is |value(N) - value(2N)| under node doubling when the
    config asked for refinement, exactly 0.0 for results that are exact by
    construction (parity zeros, closed forms), and NaN when refinement was
    disabled so no estimate exists.
    """

    value: complex
    err_estimate: float


@dataclass(frozen=True)
class MassParam:
    """Physical parameters: boson mass mu, fermion mass m, coupling g."""

    mu: float
    m: float
    g: float

    def __post_init__(self) -> None:
        if self.mu < 0:
            raise ValueError(f"mu must be nonnegative, got {self.mu}")
        if not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m}")


def _index3(n) -> tuple[int, int, int]:
    t = tuple(n)
    if len(t) != 3:
        raise ValueError(f"grid index needs three components, got {n!r}")
    out = []
    for v in t:
        iv = int(v)
        if iv != v or iv < 0:
            raise ValueError(f"grid index components must be nonnegative integers, got {n!r}")
        out.append(iv)
    return tuple(out)


# dense inverse-denominator tensors 1/(x_i^2+x_j^2+x_l^2+mu^2); a few tens of
# MB each at 128 nodes, so keep only the most recent handful
_DENOM_CACHE: OrderedDict[tuple[float, int], np.ndarray] = OrderedDict()
_DENOM_CACHE_MAX = 6

_RAW_MEMO: dict[tuple, complex] = {}


def clear_caches() -> None:
    """Drop memoized Green's values and denominator tensors."""
    _RAW_MEMO.clear()
    _DENOM_CACHE.clear()
    _ball_quad_moments.cache_clear()


def _inv_denominators(mu: float, n_nodes: int) -> np.ndarray:
    key = (float(mu), int(n_nodes))
    hit = _DENOM_CACHE.get(key)
    if hit is not None:
        _DENOM_CACHE.move_to_end(key)
        return hit
    x, _ = gauss_hermite(n_nodes)
    x2 = x * x
    base = np.add.outer(x2, x2) + mu * mu
    inv = np.empty((n_nodes, n_nodes, n_nodes))
    for i in range(n_nodes):
        np.add(base, x2[i], out=inv[i])
    np.reciprocal(inv, out=inv)
    inv.setflags(write=False)
    _DENOM_CACHE[key] = inv
    while len(_DENOM_CACHE) > _DENOM_CACHE_MAX:
        _DENOM_CACHE.popitem(last=False)
    return inv


def _ball_exact(mu: float) -> float:
    # integral of e^{-k.k}/(k.k+mu^2) over R^3
    return 2.0 * math.pi ** 1.5 - 2.0 * math.pi ** 2 * mu * float(erfcx(mu))


@lru_cache(maxsize=64)
def _ball_quad_moments(mu: float, n_nodes: int) -> tuple[float, float]:
    # Gauss-Hermite estimates of the zeroth and first-axis-second moments
    # of 1/(k.k+mu^2) under the Gaussian weight
    inv = _inv_denominators(mu, n_nodes)
    x, w = gauss_hermite(n_nodes)
    x2w = x * x * w
    b0 = 0.0
    b2 = 0.0
    for i in range(n_nodes):
        t = w @ inv[i] @ w
        b0 += w[i] * t
        b2 += x2w[i] * t
    return b0, b2


def _ball_defects(mu: float, n_nodes: int) -> tuple[float, float]:
    """Exact-minus-quadrature for the constant and per-axis quadratic pole
    models: the amounts the subtraction must add back analytically."""
    b0q, b2q = _ball_quad_moments(float(mu), int(n_nodes))
    b0 = _ball_exact(mu)
    b2 = (math.pi ** 1.5 - mu * mu * b0) / 3.0
    return b0 - b0q, b2 - b2q


def _pole_model(n: int, nhat: int) -> tuple[float, float]:
    """Value and half-second-derivative at the origin of the one-axis pair
    polynomial phi_n phi_nhat, from the Hermite differential relations
    phi_n'(0) = sqrt(2n) phi_{n-1}(0) and phi_n''(0) = -2n phi_n(0)."""
    z_n = phi_at_zero(n)
    z_h = phi_at_zero(nhat)
    q0 = z_n * z_h
    cross = 0.0
    if n >= 1 and nhat >= 1:
        cross = 2.0 * math.sqrt(n * nhat) * phi_at_zero(n - 1) * phi_at_zero(nhat - 1)
    return q0, -(n + nhat) * q0 + cross


def _g_eval(n: tuple[int, ...], nhat: tuple[int, ...], mu: float, n_nodes: int) -> complex:
    inv = _inv_denominators(mu, n_nodes)
    table = weighted_phi_table(max(max(n), max(nhat)), n_nodes)
    p1 = table[n[0]] * table[nhat[0]]
    p2 = table[n[1]] * table[nhat[1]]
    p3 = table[n[2]] * table[nhat[2]]
    acc = 0.0
    for i in range(n_nodes):
        acc += p1[i] * (p2 @ inv[i] @ p3)
    q0 = []
    q2 = []
    for a in range(3):
        v0, v2 = _pole_model(n[a], nhat[a])
        q0.append(v0)
        q2.append(v2)
    c0 = q0[0] * q0[1] * q0[2]
    c2 = (q2[0] * q0[1] * q0[2] + q0[0] * q2[1] * q0[2] + q0[0] * q0[1] * q2[2])
    if c0 != 0.0 or c2 != 0.0:
        d0, d2 = _ball_defects(mu, n_nodes)
        acc += c0 * d0 + c2 * d2
    phase = 1j ** ((sum(n) - sum(nhat)) % 4)
    return complex(phase * acc * math.pi ** -1.5)


def _g_raw(n: tuple[int, ...], nhat: tuple[int, ...], mu: float, n_nodes: int) -> complex:
    key = (n, nhat, float(mu), int(n_nodes))
    hit = _RAW_MEMO.get(key)
    if hit is None:
        hit = _RAW_MEMO[key] = _g_eval(n, nhat, mu, n_nodes)
    return hit


def g_sharp(n, nhat, mu: float, cfg: QuadratureConfig) -> GreensValue:
    """Tensor Gauss-Hermite evaluation of the 3D Green's function integral.

    The Gaussian weight is taken from the basis-function product, leaving a
    polynomial pair table over a shared inverse-denominator tensor, plus the
    pole subtraction described in the module docstring.  The i^(sum n - sum
    nhat) phase makes parity-allowed values real (sign (-1)^(diff/2)); pairs
    violating per-axis parity integrate to zero by node symmetry.
    """
    n = _index3(n)
    nhat = _index3(nhat)
    if not mu > 0:
        raise DomainError(f"mu must be positive here (massless goes through coulomb paths), got {mu}")
    coarse = _g_raw(n, nhat, mu, cfg.gh_nodes)
    if not cfg.refine:
        return GreensValue(coarse, math.nan)
    fine = _g_raw(n, nhat, mu, 2 * cfg.gh_nodes)
    err = abs(fine - coarse)
    if err > 100.0 * cfg.tol:
        raise NonconvergenceError(
            f"Green's function at n={n}, nhat={nhat}, mu={mu}: refinement defect "
            f"{err:.3e} exceeds 100*tol = {100.0 * cfg.tol:.3e}"
        )
    return GreensValue(fine, err)


def _phi_imag_axis(n1: int, t: np.ndarray) -> np.ndarray:
    """phi_{n1}(i t) for even n1, as the real array (-1)^(n1/2) r_{n1}(t).

    r follows the plus-sign recurrence r_{j+1} = sqrt(2/(j+1)) t r_j +
    sqrt(j/(j+1)) r_{j-1}, which is what the basis recurrence becomes on the
    imaginary axis.  Used for the pole term of the reduced quadrature.
    """
    prev = np.zeros_like(t)
    cur = np.ones_like(t)
    for j in range(n1):
        prev, cur = cur, math.sqrt(2.0 / (j + 1)) * t * cur + math.sqrt(j / (j + 1.0)) * prev
    sign = -1.0 if (n1 // 2) % 2 else 1.0
    return sign * cur


# Pole subtraction is only worth its numerical cost while the pole at
# x = -mu^2 sits close to the integration ray.  Beyond this threshold the
# plain rule already converges past machine precision, while the subtracted
# continuation phi_{n1}(i mu y) grows like e^{mu^2} times a polynomial in n1
# and the subtract-then-add-back round trip starts to cancel catastrophically
# (about 1e-6 absolute noise by n1 = 40, mu = 4).  Both branches are
# machine-accurate on either side of 1, so the switch is not delicate.
_AXIS_SUBTRACT_MAX_MU = 1.0


def _axis_eval(n1: int, mu: float, radial_nodes: int, ang_nodes: int) -> float:
    xr, wr = gauss_laguerre_half(radial_nodes)
    y, wy = gauss_legendre(ang_nodes)
    ph = phi_row(n1, (np.sqrt(xr)[:, None] * y[None, :]).ravel())[n1].reshape(radial_nodes, ang_nodes)
    if mu <= _AXIS_SUBTRACT_MAX_MU:
        pole = _phi_imag_axis(n1, mu * y)
        core = (ph - pole[None, :]) / (xr[:, None] + mu * mu)
        tail = _SQRT_PI - math.pi * mu * float(erfcx(mu))
        val = wr @ (core @ wy) + (pole @ wy) * tail
    else:
        val = wr @ ((ph / (xr[:, None] + mu * mu)) @ wy)
    sign = -1.0 if (n1 // 2) % 2 else 1.0
    return float(sign * val / _SQRT_PI)


def g_sharp_axis(n1: int, mu: float, cfg: QuadratureConfig) -> GreensValue:
    """Green's function along one axis, G((n1,0,0),(0,0,0); mu), via the
    reduced two-dimensional integral in x = k^2 and y = cos(theta).

    The radial rule carries the sqrt(x) e^{-x} measure of the reduced
    integrand.  For small mu the integrand's analytic continuation at
    x = -mu^2 is subtracted, removing the nearby pole exactly; for larger mu
    the pole is far from the ray and the plain rule is used (see
    _AXIS_SUBTRACT_MAX_MU).  Either way the result is machine-accurate
    uniformly in mu.  Odd orders vanish by angular parity and are returned
    as exact zeros.
    """
    n1 = int(n1)
    if n1 < 0:
        raise ValueError(f"order must be nonnegative, got {n1}")
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if n1 % 2 == 1:
        return GreensValue(0j, 0.0)
    ang = max(8, n1 // 2 + 2)
    coarse = _axis_eval(n1, mu, cfg.radial_nodes, ang)
    if not cfg.refine:
        return GreensValue(complex(coarse), math.nan)
    fine = _axis_eval(n1, mu, 2 * cfg.radial_nodes, 2 * ang)
    err = abs(fine - coarse)
    if err > 100.0 * cfg.tol:
        raise NonconvergenceError(
            f"axis Green's function at n1={n1}, mu={mu}: refinement defect {err:.3e} "
            f"exceeds 100*tol = {100.0 * cfg.tol:.3e}"
        )
    return GreensValue(complex(fine), err)


def incomplete_gamma_neg_half(x: float) -> float:
    """Gamma(-1/2, x) = integral_x^inf w^{-3/2} e^{-w} dw for x > 0.

    Uses the closed identity 2 e^{-x}/sqrt(x) - 2 sqrt(pi) erfc(sqrt(x))
    with the standard-library erfc; accurate to ~14 digits across the whole
    domain including the x -> 0 blowup.
    """
    if not x > 0:
        raise DomainError(f"argument must be positive, got {x}")
    s = math.sqrt(x)
    return 2.0 * math.exp(-x) / s - 2.0 * _SQRT_PI * math.erfc(s)


def yukawa_coincidence(mu: float) -> float:
    """Closed coincidence value mu e^{mu^2} Gamma(-1/2, mu^2).

    Finite for every mu > 0 and -> 2 as mu -> 0+; the continuum kernel
    diverges at coincidence, this is the formalism's headline finite number.
    """
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    return mu * math.exp(mu * mu) * incomplete_gamma_neg_half(mu * mu)


def coulomb_even(n1: int) -> float:
    """Massless axis values at even grid index 2*n1, in closed form:
    2^(n1+1) n1! / ((2 n1 + 1) sqrt((2 n1)!)).

    n1 here is the half-index.  Small orders use exact integer factorials
    (so n1=0 returns exactly 2.0); past the float range the same expression
    is evaluated in log space.
    """
    n1 = int(n1)
    if n1 < 0:
        raise ValueError(f"order must be nonnegative, got {n1}")
    if n1 <= 85:
        num = float(2 ** (n1 + 1) * math.factorial(n1))
        return num / ((2 * n1 + 1) * math.sqrt(float(math.factorial(2 * n1))))
    return math.exp(
        (n1 + 1) * math.log(2.0)
        + math.lgamma(n1 + 1)
        - math.log(2.0 * n1 + 1.0)
        - 0.5 * math.lgamma(2 * n1 + 1)
    )


def _coulomb_eval(n1: int, gh_nodes: int, ang_nodes: int) -> complex:
    x, w = gauss_hermite(gh_nodes)
    y, wy = gauss_legendre(ang_nodes)
    ph = phi_row(n1, np.outer(x, y).ravel())[n1].reshape(gh_nodes, ang_nodes)
    # half-line radial integral folded onto the full line by joint
    # (k, y) -> (-k, -y) symmetry of the integrand
    val = (w @ ph @ wy) / _SQRT_PI
    phase = 1j ** (n1 % 4)
    return complex(phase * val)


def coulomb_quadrature(n1: int, cfg: QuadratureConfig) -> GreensValue:
    """Massless axis values by direct 2D quadrature (radius times angle).

    Takes the full grid index: even indices reproduce coulomb_even(index/2),
    odd indices integrate to zero by angular parity.  The mass-zero
    denominator cancels against the radial Jacobian, so the integrand is a
    pure polynomial against the Gaussian weight and the rule is exact once
    the node count clears half the order.
    """
    n1 = int(n1)
    if n1 < 0:
        raise ValueError(f"order must be nonnegative, got {n1}")
    ang = max(8, n1 // 2 + 2)
    coarse = _coulomb_eval(n1, cfg.gh_nodes, ang)
    if not cfg.refine:
        return GreensValue(coarse, math.nan)
    fine = _coulomb_eval(n1, 2 * cfg.gh_nodes, 2 * ang)
    err = abs(fine - coarse)
    if err > 100.0 * cfg.tol:
        raise NonconvergenceError(
            f"massless quadrature at index {n1}: refinement defect {err:.3e} "
            f"exceeds 100*tol = {100.0 * cfg.tol:.3e}"
        )
    return GreensValue(fine, err)


def euler_beta(a: float, b: float) -> float:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), via log-gamma."""
    if not (a > 0 and b > 0):
        raise DomainError(f"beta function needs positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def continuum_yukawa(r: float, mu: float, g: float) -> float:
    """The continuum potential -(g^2 / 4 pi) e^{-mu r} / r; singular at r = 0."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    return -(g * g) / (4.0 * math.pi) * math.exp(-mu * r) / r


def continuum_yukawa_oracle(r: float, mu: float, cfg: QuadratureConfig) -> float:
    """Unit-coupling continuum potential from the 1D oscillatory integral
    -(1/(2 pi^2 r)) integral_0^inf k sin(r k)/(k^2 + mu^2) dk.

    Evaluated with an oscillatory-weight adaptive rule whose tail handling
    relies on the mu-damped decay of the envelope.  Exists purely as an
    independent check on continuum_yukawa.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    val, _ = quad(
        lambda k: k / (k * k + mu * mu),
        0.0,
        np.inf,
        weight="sin",
        wvar=r,
        limlst=200,
    )
    return -val / (2.0 * math.pi ** 2 * r)


def difference_equation_residual(n, nhat, mu: float, cfg: QuadratureConfig) -> float:
    """|sharp-Laplacian G - mu^2 G + delta(n, nhat)| at one index pair.

    Applies the twice-applied weighted stencil to the first argument by
    calling g_sharp at the shifted indices (seven distinct points: center
    plus +-2 per axis, with the lower shift absent where its coefficient
    vanishes).  The Green's function inverts the operator with a negative
    Kronecker source, so adding the delta should cancel to quadrature noise.
    """
    n = _index3(n)
    nhat = _index3(nhat)
    lhs = 0j
    center = 0.0
    for ax in range(3):
        v = n[ax]
        up = list(n)
        up[ax] = v + 2
        lhs += 0.5 * math.sqrt((v + 1.0) * (v + 2.0)) * g_sharp(tuple(up), nhat, mu, cfg).value
        if v >= 2:
            dn = list(n)
            dn[ax] = v - 2
            lhs += 0.5 * math.sqrt(v * (v - 1.0)) * g_sharp(tuple(dn), nhat, mu, cfg).value
        center -= 0.5 * (2.0 * v + 1.0)
    lhs += (center - mu * mu) * g_sharp(n, nhat, mu, cfg).value
    if n == nhat:
        lhs += 1.0
    return abs(lhs)


def w_sharp(n1: int, mu: float, cfg: QuadratureConfig) -> float:
    """Static potential profile along one axis: the (n1,0,0) vs origin
    Green's value, through the best route for the given mass."""
    n1 = int(n1)
    if n1 < 0:
        raise ValueError(f"order must be nonnegative, got {n1}")
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    if mu > 0:
        return g_sharp_axis(n1, mu, cfg).value.real
    if n1 % 2 == 1:
        return 0.0
    return coulomb_even(n1 // 2)


def v_sharp(n1: int, mu: float, g: float, cfg: QuadratureConfig) -> float:
    """Interaction potential -g^2 w_sharp(n1, mu)."""
    return -(g * g) * w_sharp(n1, mu, cfg)
