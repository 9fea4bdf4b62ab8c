import math

import numpy as np
import pytest

from hermgrid.errors import DomainError, NonconvergenceError
from hermgrid.greens import (
    GreensValue,
    MassParam,
    clear_caches,
    continuum_yukawa,
    continuum_yukawa_oracle,
    coulomb_even,
    coulomb_quadrature,
    difference_equation_residual,
    euler_beta,
    g_sharp,
    g_sharp_axis,
    incomplete_gamma_neg_half,
    v_sharp,
    w_sharp,
    yukawa_coincidence,
)
from hermgrid.quadrature import QuadratureConfig

CFG = QuadratureConfig()

# mu e^{mu^2} Gamma(-1/2, mu^2) at mu = 1, pinned against the erfc identity
# and an independent adaptive quadrature
COINCIDENCE_AT_1 = 0.4842556877173759


def test_mass_param_validation():
    MassParam(0.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        MassParam(-0.1, 1.0, 1.0)
    with pytest.raises(ValueError):
        MassParam(1.0, 0.0, 1.0)


def test_greens_value_is_frozen():
    v = GreensValue(1 + 0j, 0.0)
    with pytest.raises(AttributeError):
        v.value = 2.0


def test_index_validation():
    with pytest.raises(ValueError):
        g_sharp((0, 0), (0, 0, 0), 1.0, CFG)
    with pytest.raises(ValueError):
        g_sharp((0, 0, -1), (0, 0, 0), 1.0, CFG)
    with pytest.raises(ValueError):
        g_sharp((0.5, 0, 0), (0, 0, 0), 1.0, CFG)


def test_coincidence_value_three_routes():
    closed = yukawa_coincidence(1.0)
    assert closed == pytest.approx(COINCIDENCE_AT_1, rel=1e-15)
    tensor = g_sharp((0, 0, 0), (0, 0, 0), 1.0, CFG)
    axis = g_sharp_axis(0, 1.0, CFG)
    assert tensor.value.real == pytest.approx(closed, abs=1e-7)
    assert abs(tensor.value.imag) <= 1e-12
    assert axis.value.real == pytest.approx(closed, abs=1e-12)


def test_tensor_parity_zero_and_small_mass_example():
    odd = g_sharp((1, 0, 0), (0, 0, 0), 1.0, CFG)
    # the tensor route integrates the odd product numerically, so the zero
    # is only clean to rounding; the axis route owns the exact statement
    assert abs(odd.value) <= 1e-15
    small = g_sharp((2, 0, 0), (0, 0, 0), 1e-3, CFG)
    # near the massless limit the value sits an O(mu) step from the
    # massless closed form
    assert small.value.real == pytest.approx(0.942809, abs=5e-3)
    axis = g_sharp_axis(2, 1e-3, CFG)
    assert small.value.real == pytest.approx(axis.value.real, abs=1e-5)


def test_tensor_conjugation_symmetry():
    a = g_sharp((2, 1, 0), (0, 1, 2), 0.8, CFG)
    b = g_sharp((0, 1, 2), (2, 1, 0), 0.8, CFG)
    assert a.value == pytest.approx(np.conj(b.value), rel=1e-10, abs=1e-12)


def test_tensor_nonconvergence_gate():
    with pytest.raises(NonconvergenceError):
        g_sharp((4, 0, 0), (2, 0, 0), 0.5, QuadratureConfig(tol=1e-16))


def test_refine_disabled_reports_nan_error():
    v = g_sharp((0, 0, 0), (0, 0, 0), 1.0, QuadratureConfig(refine=False))
    assert math.isnan(v.err_estimate)
    a = g_sharp_axis(0, 1.0, QuadratureConfig(refine=False))
    assert math.isnan(a.err_estimate)


def test_axis_odd_orders_are_exact_zeros():
    v = g_sharp_axis(7, 1.0, CFG)
    assert v.value == 0j
    assert v.err_estimate == 0.0


def test_axis_domain_checks():
    with pytest.raises(DomainError):
        g_sharp_axis(0, 0.0, CFG)
    with pytest.raises(ValueError):
        g_sharp_axis(-2, 1.0, CFG)
    with pytest.raises(DomainError):
        g_sharp((0, 0, 0), (0, 0, 0), 0.0, CFG)


def test_axis_high_order_large_mass_regression():
    # exercises the unsubtracted branch; the subtracted form loses six
    # digits to cancellation here and used to trip the refinement gate
    v = g_sharp_axis(40, 4.0, CFG)
    assert abs(v.value.real) <= 1e-13
    assert v.err_estimate <= 1e-12


def test_axis_agrees_with_tensor_above_branch():
    for mu in (1.5, 4.0):
        t = g_sharp((4, 0, 0), (0, 0, 0), mu, CFG)
        a = g_sharp_axis(4, mu, CFG)
        assert t.value.real == pytest.approx(a.value.real, abs=2e-12)


def test_incomplete_gamma_values():
    assert incomplete_gamma_neg_half(1.0) == pytest.approx(0.17814771178156075, rel=1e-14)
    assert incomplete_gamma_neg_half(1e-6) == pytest.approx(1996.4570922978558, rel=1e-14)
    with pytest.raises(DomainError):
        incomplete_gamma_neg_half(0.0)


def test_incomplete_gamma_asymptotic_band():
    # v * x^{3/2} e^x -> 1 with relative deviation bounded by 2/x
    for x in (25.0, 50.0, 100.0, 500.0):
        ratio = incomplete_gamma_neg_half(x) * x ** 1.5 * math.exp(x)
        assert abs(ratio - 1.0) <= 2.0 / x


def test_coincidence_monotone_decreasing_in_mass():
    mus = np.linspace(0.1, 4.0, 14)
    vals = [yukawa_coincidence(float(m)) for m in mus]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_coulomb_even_closed_values():
    assert coulomb_even(0) == 2.0
    assert coulomb_even(1) == pytest.approx(4.0 / (3.0 * math.sqrt(2.0)), rel=1e-15)
    assert coulomb_even(2) == pytest.approx(16.0 / (5.0 * math.sqrt(24.0)), rel=1e-15)
    with pytest.raises(ValueError):
        coulomb_even(-1)


def test_coulomb_even_log_branch_joins_smoothly():
    vals = [coulomb_even(n) for n in range(80, 92)]
    assert all(v > 0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    # ratio of successive ratios stays near 1 across the 85/86 switch
    ratios = [b / a for a, b in zip(vals, vals[1:])]
    second = [abs(r2 / r1 - 1.0) for r1, r2 in zip(ratios, ratios[1:])]
    assert max(second) < 1e-2


def test_coulomb_quadrature_examples():
    assert abs(coulomb_quadrature(0, CFG).value - 2.0) <= 1e-6
    assert abs(coulomb_quadrature(3, CFG).value) <= 1e-10
    assert coulomb_quadrature(2, CFG).value.real == pytest.approx(
        coulomb_even(1), rel=1e-6)


def test_euler_beta():
    assert euler_beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-15)
    assert euler_beta(2.0, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-14)
    n = 1
    assert 2.0 ** (2 * n + 1) * euler_beta(n + 1.0, n + 1.0) == pytest.approx(
        4.0 / 3.0, rel=1e-14)
    with pytest.raises(DomainError):
        euler_beta(0.0, 1.0)


def test_continuum_potential_values():
    assert continuum_yukawa(1.0, 0.0, math.sqrt(4.0 * math.pi)) == pytest.approx(-1.0, rel=1e-15)
    assert continuum_yukawa(2.0, 1.0, 1.0) == pytest.approx(
        -math.exp(-2.0) / (8.0 * math.pi), rel=1e-14)
    with pytest.raises(DomainError):
        continuum_yukawa(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        continuum_yukawa_oracle(1.0, 0.0, CFG)


def test_continuum_oracle_agrees_with_closed_form():
    for r, mu in ((0.5, 1.0), (2.0, 0.25)):
        want = continuum_yukawa(r, mu, 1.0)
        assert continuum_yukawa_oracle(r, mu, CFG) == pytest.approx(want, rel=1e-9)


def test_difference_equation_residual_examples():
    cfg96 = QuadratureConfig(gh_nodes=96)
    assert difference_equation_residual((0, 0, 0), (0, 0, 0), 1.0, cfg96) <= 1e-6
    assert difference_equation_residual((1, 1, 0), (0, 0, 0), 1.0, cfg96) <= 1e-6
    assert difference_equation_residual((2, 0, 0), (2, 0, 0), 0.5, cfg96) <= 1e-6


def test_residual_at_default_nodes_raises_where_documented():
    # the mu = 0.5 border case needs the wider rule; the default one must
    # refuse loudly rather than return a poor value
    with pytest.raises(NonconvergenceError):
        difference_equation_residual((2, 0, 0), (2, 0, 0), 0.5, CFG)


def test_w_sharp_examples_and_coupling():
    assert w_sharp(0, 0.0, CFG) == 2.0
    assert w_sharp(2, 0.0, CFG) == pytest.approx(coulomb_even(1), rel=1e-15)
    assert w_sharp(1, 0.0, CFG) == 0.0
    assert w_sharp(0, 1.0, CFG) == pytest.approx(COINCIDENCE_AT_1, abs=1e-12)
    assert v_sharp(0, 0.0, 1.0, CFG) == pytest.approx(-2.0, rel=1e-15)
    assert v_sharp(2, 0.0, 2.0, CFG) == pytest.approx(-4.0 * coulomb_even(1), rel=1e-14)


def test_clear_caches_is_idempotent_and_preserves_values():
    before = g_sharp((2, 1, 0), (0, 1, 0), 1.3, CFG).value
    clear_caches()
    clear_caches()
    after = g_sharp((2, 1, 0), (0, 1, 0), 1.3, CFG).value
    assert before == after
