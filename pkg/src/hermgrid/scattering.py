"""Truncated vertex sums and the second-order two-fermion exchange element.

An interaction vertex on the index lattice carries a triple basis sum in
place of the continuum momentum delta.  That object is distributional (its
pointwise partial sums need not converge), so production code never
evaluates it on its own: the exchange element reorganizes both vertices
through the static Green's function, where every sum is damped by the
boson denominator.

The reduced element in the low-momentum regime is

    (g^2 / 4 pi) * [m^2 / sqrt(E1' E2' E1 E2)]
        * sum_{n, nhat <= n_max} A_n G(n, nhat; mu) B_nhat

with per-axis coefficients A_n = prod_j xi_{n_j}(p1_j) conj(xi_{n_j}(p1'_j))
and B likewise from the second fermion line.  Because both coefficient
families factorize over axes, the double sum collapses to a single 3D
quadrature of per-axis profile polynomials against the shared denominator;
that is an exact algebraic identity, not an approximation, and turns an
O(n_max^6) sum into an O(nodes^3) contraction.  An independent
sum-the-vertices-first evaluation lives in the checks module and serves as
the correctness oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationWarning
from .greens import _ball_defects, _inv_denominators
from .hermite import phi_at_zero, phi_row, xi_axis
from .quadrature import QuadratureConfig, gauss_hermite

_SQRT_PI = math.sqrt(math.pi)


@dataclass
class VertexTruncation:
    """Per-axis cutoff for the vertex sums, plus the last-term magnitude
    diagnostic that vertex_axis_sum writes back after each evaluation."""

    n_max: int = 64
    tail_report: float = 0.0

    def __post_init__(self) -> None:
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max}")
        self.n_max = int(self.n_max)


def vertex_axis_sum(p: float, q: float, k: float, sign_q: int, sign_k: int,
                    trunc: VertexTruncation) -> complex:
    """Truncated one-axis vertex sum sum_{n=0}^{n_max} xi_n(p) c(xi_n(q))
    c(xi_n(k)), where c conjugates its argument when the sign is -1.

    The untruncated sum is a distribution, so no convergence is claimed;
    the magnitude of the final included term is written to
    trunc.tail_report for the caller to judge.
    """
    if sign_q not in (1, -1) or sign_k not in (1, -1):
        raise ValueError(f"signs must be +1 or -1, got sign_q={sign_q}, sign_k={sign_k}")
    a = xi_axis(trunc.n_max, p)
    b = xi_axis(trunc.n_max, q)
    c = xi_axis(trunc.n_max, k)
    if sign_q == -1:
        b = b.conj()
    if sign_k == -1:
        c = c.conj()
    terms = a * b * c
    trunc.tail_report = float(abs(terms[-1]))
    return complex(terms.sum())


def _vec3(p) -> tuple[float, float, float]:
    t = tuple(float(v) for v in p)
    if len(t) != 3:
        raise ValueError(f"momentum needs three components, got {p!r}")
    return t


@dataclass(frozen=True)
class MollerKinematics:
    """External momenta, spins, masses, and coupling for the one-boson
    exchange element.  Energy conservation is not enforced; its defect is
    reported so callers can see how far off shell the configuration sits."""

    p1: tuple[float, float, float]
    p2: tuple[float, float, float]
    p1_out: tuple[float, float, float]
    p2_out: tuple[float, float, float]
    m: float
    mu: float
    g: float
    r1: int = 1
    r2: int = 1
    r1_out: int = 1
    r2_out: int = 1

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p1_out", "p2_out"):
            object.__setattr__(self, name, _vec3(getattr(self, name)))
        if not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.mu < 0:
            raise ValueError(f"mu must be nonnegative, got {self.mu}")
        for name in ("r1", "r2", "r1_out", "r2_out"):
            if getattr(self, name) not in (1, 2):
                raise ValueError(f"{name} must be 1 or 2, got {getattr(self, name)}")

    def _energy(self, p: tuple[float, float, float]) -> float:
        return math.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2 + self.m ** 2)

    @property
    def energies(self) -> tuple[float, float, float, float]:
        """(E1, E2, E1', E2')."""
        return (self._energy(self.p1), self._energy(self.p2),
                self._energy(self.p1_out), self._energy(self.p2_out))

    @property
    def conservation_defect(self) -> float:
        """|E1' + E2' - E1 - E2|, the factored-out energy-delta mismatch."""
        e1, e2, e1o, e2o = self.energies
        return abs(e1o + e2o - e1 - e2)

    @property
    def momentum_defect(self) -> float:
        """Largest component of p1 + p2 - p1' - p2'."""
        return max(
            abs(self.p1[a] + self.p2[a] - self.p1_out[a] - self.p2_out[a])
            for a in range(3)
        )

    @property
    def low_momentum_ok(self) -> bool:
        """True when every external momentum satisfies ||p|| < m/5, the
        validity window of the static-limit reduction."""
        lim = self.m / 5.0
        return all(
            math.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2) < lim
            for p in (self.p1, self.p2, self.p1_out, self.p2_out)
        )

    @property
    def prefactor(self) -> float:
        """(g^2 / 4 pi) m^2 / sqrt(E1' E2' E1 E2)."""
        e1, e2, e1o, e2o = self.energies
        return (self.g ** 2 / (4.0 * math.pi)) * self.m ** 2 / math.sqrt(e1o * e2o * e1 * e2)


def _pair_coefficients(n_max: int, p: float, p_out: float) -> np.ndarray:
    # xi_n(p) conj(xi_n(p_out)): the i^n phases cancel within the pair,
    # leaving the real coefficient phi_n(p) phi_n(p_out) e^{-(p^2+p_out^2)/2}/sqrt(pi)
    vals = phi_row(n_max, np.array([p, p_out]))
    return vals[:, 0] * vals[:, 1] * (math.exp(-0.5 * (p * p + p_out * p_out)) / _SQRT_PI)


def _profiles(kin: MollerKinematics, n_max: int, x: np.ndarray) -> tuple[list, list]:
    """Per-axis node profiles L_a(x_i), R_a(x_i) such that the double
    coefficient sum against the Green's integrand becomes
    prod_a L_a(k_a) R_a(k_a) / (k.k + mu^2) under the Gaussian weight."""
    ipow = 1j ** (np.arange(n_max + 1) % 4)
    rows = phi_row(n_max, x)
    left, right = [], []
    for a in range(3):
        acoef = _pair_coefficients(n_max, kin.p1[a], kin.p1_out[a])
        bcoef = _pair_coefficients(n_max, kin.p2[a], kin.p2_out[a])
        left.append((acoef * ipow) @ rows)
        right.append((bcoef * ipow.conj()) @ rows)
    return left, right


def _profile_origin_moments(coef: np.ndarray, phases: np.ndarray) -> tuple[complex, complex, complex]:
    # value, first, and second derivative at k = 0 of sum_n coef_n phase_n phi_n(k)
    n_max = coef.size - 1
    z0 = np.array([phi_at_zero(j) for j in range(n_max + 1)])
    z_shift = np.zeros(n_max + 1)
    z_shift[1:] = z0[:-1]
    narr = np.arange(n_max + 1)
    c = coef * phases
    return complex(c @ z0), complex(c @ (np.sqrt(2.0 * narr) * z_shift)), complex(c @ (-2.0 * narr * z0))


def _contract(kin: MollerKinematics, n_max: int, n_nodes: int) -> complex:
    x, w = gauss_hermite(n_nodes)
    inv = _inv_denominators(kin.mu, n_nodes)
    left, right = _profiles(kin, n_max, x)
    q = [w * left[a] * right[a] for a in range(3)]
    acc = 0j
    for i in range(n_nodes):
        acc += q[0][i] * (q[1] @ inv[i] @ q[2])
    # same quadratic pole correction the Green's function route applies,
    # factorized through the per-axis profile Taylor data at the origin
    ipow = 1j ** (np.arange(n_max + 1) % 4)
    g0 = []
    g2 = []
    for a in range(3):
        l0, l1, l2 = _profile_origin_moments(
            _pair_coefficients(n_max, kin.p1[a], kin.p1_out[a]), ipow)
        r0, r1, r2 = _profile_origin_moments(
            _pair_coefficients(n_max, kin.p2[a], kin.p2_out[a]), ipow.conj())
        g0.append(l0 * r0)
        g2.append(0.5 * (l2 * r0 + 2.0 * l1 * r1 + l0 * r2))
    d0, d2 = _ball_defects(kin.mu, n_nodes)
    acc += d0 * g0[0] * g0[1] * g0[2]
    acc += d2 * (g2[0] * g0[1] * g0[2] + g0[0] * g2[1] * g0[2] + g0[0] * g0[1] * g2[2])
    return complex(acc * math.pi ** -1.5)


def moller_reduced_element(kin: MollerKinematics, trunc: VertexTruncation,
                           cfg: QuadratureConfig) -> complex:
    """Reduced one-boson-exchange element at the given kinematics.

    Exactly zero on any spin mismatch.  The coefficient double sum is
    evaluated through the factorized profile contraction described in the
    module docstring, sharing the denominator tensor and pole handling with
    the Green's function route.  Truncation health is estimated by
    re-contracting with the top coefficient shell dropped: when that last
    included shell moves the element by more than cfg.tol, a
    TruncationWarning is issued (the first dropped shell is comparable to
    the last included one for the slowly decaying sums this models).
    """
    if kin.r1 != kin.r1_out or kin.r2 != kin.r2_out:
        return 0j
    if not kin.mu > 0:
        raise DomainError(f"the exchange element needs mu > 0, got {kin.mu}")
    n_nodes = 2 * cfg.gh_nodes if cfg.refine else cfg.gh_nodes
    full = _contract(kin, trunc.n_max, n_nodes)
    if trunc.n_max >= 1:
        dropped = abs(full - _contract(kin, trunc.n_max - 1, n_nodes)) * kin.prefactor
        trunc.tail_report = float(dropped)
        if dropped > cfg.tol:
            warnings.warn(
                f"last included coefficient shell moved the element by {dropped:.3e} "
                f"(> tol {cfg.tol:.3e}); raise n_max past {trunc.n_max}",
                TruncationWarning,
                stacklevel=2,
            )
    return kin.prefactor * full


def continuum_moller_reduced(kin: MollerKinematics) -> complex:
    """Continuum counterpart: prefactor / (||q||^2 + mu^2) with transfer
    q = p1 - p1', the value the discrete element should approach for
    well-resolved low-momentum kinematics."""
    q2 = sum((kin.p1[a] - kin.p1_out[a]) ** 2 for a in range(3))
    denom = q2 + kin.mu ** 2
    if denom == 0:
        raise DomainError("zero momentum transfer at mu = 0 has no continuum value")
    return complex(kin.prefactor / denom)
