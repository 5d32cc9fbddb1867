import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from artin_bound import explicit_bounds as eb
from artin_bound.field_models import Cyclotomic, Quadratic, all_classes, class_context

LOG3 = math.log(3)


def test_sqrt_bound_endgame():
    b = eb.sqrt_norm_bound(eb.BoundInputs(LOG3, 2, g_c=1, k=0))
    assert b.total == pytest.approx(18.181, abs=1e-3)
    assert math.floor(b.square) == 330


@given(st.floats(0, 50), st.integers(1, 20))
def test_k_term_zero_at_k0(log_disc, g_c):
    b = eb.sqrt_norm_bound(eb.BoundInputs(log_disc, 2, g_c=g_c, k=0))
    assert b.as_dict()["k_term"] == 0


def test_k_term_zero_when_gk_is_one():
    assert eb.sqrt_norm_bound(eb.BoundInputs(LOG3, 2, g_c=1, k=1)).as_dict()["k_term"] == 0


def test_bound_total_is_term_sum():
    b = eb.sqrt_norm_bound(eb.BoundInputs(7.3, 8, g_c=8, k=13))
    assert math.isclose(b.total, sum(v for _, v in b.terms), rel_tol=1e-12)
    assert math.isclose(b.as_dict()["k_term"], math.sqrt(2 * 104 * math.log(104)))


def test_bound_inputs_validate():
    with pytest.raises(ValueError):
        eb.BoundInputs(-1.0, 2)
    with pytest.raises(ValueError):
        eb.BoundInputs(1.0, 2, r1=3)


def _psi_error_oracle(x, log_disc, n_L):
    x = mpmath.mpf(x)
    lx = mpmath.log(x)
    return mpmath.sqrt(x) * ((lx / (2 * mpmath.pi) + 2) * log_disc + (lx ** 2 / (8 * mpmath.pi) + 2) * n_L)


def test_psi_error_examples():
    assert eb.psi_error_bound(1, 2.0, 3) == pytest.approx(10.0)
    x = math.exp(2 * math.pi)
    assert eb.psi_error_bound(x, 0, 1) == pytest.approx(math.exp(math.pi) * (math.pi / 2 + 2), rel=1e-12)
    inv = Quadratic(5).invariants()
    want = float(_psi_error_oracle(10**6, inv.log_abs_disc, 2))
    assert eb.psi_error_bound(1e6, inv.log_abs_disc, 2) == pytest.approx(want, rel=1e-12)
    with pytest.raises(ValueError):
        eb.psi_error_bound(0.5, 1, 1)


def test_zero_sum_and_constant_examples():
    assert eb.zero_sum_bound(LOG3, 2, 0) == pytest.approx(3.9074, abs=1e-4)
    assert eb.zero_sum_bound(0, 1, 1) == pytest.approx(4.0889, abs=1e-4)
    assert eb.zero_sum_bound(2.0, 4, 1) - eb.zero_sum_bound(2.0, 4, 2) == pytest.approx(0.2635, abs=1e-12)
    assert eb.s0_constant_bound(LOG3, 2) == pytest.approx(11.315, abs=1e-3)
    assert eb.s_minus1_constant_bound(LOG3) == LOG3


def test_archimedean_term_bound_examples():
    assert eb.archimedean_term_bound(1, 7.0) == 0
    assert eb.archimedean_term_bound(2, math.e - 1) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        eb.archimedean_term_bound(2, 1.0)


def _series_oracle(first_r, term, x, n=4000):
    mpmath.mp.dps = 30
    return float(mpmath.nsum(lambda r: term(mpmath.mpf(x), r), [first_r, mpmath.inf]))


F1 = lambda x, r: x ** (1 - 2 * r) / (2 * r * (2 * r - 1))
F2 = lambda x, r: x ** (2 - 2 * r) / ((2 * r - 1) * (2 * r - 2))


@pytest.mark.parametrize("x", [1.0, 1.01, 1.2, 1.49, 1.5, 2.0, 3.7, 10.0, 1e3, 1e6])
def test_series_match_mpmath(x):
    assert eb.gamma_half_series(x) == pytest.approx(_series_oracle(1, F1, x), rel=1e-12, abs=1e-15)
    assert eb.gamma_shifted_series(x) == pytest.approx(_series_oracle(2, F2, x), rel=1e-12, abs=1e-15)


def test_series_examples():
    assert abs(eb.gamma_half_series(1.0) - math.log(2)) <= 1e-12
    assert eb.gamma_half_series(1e3) < 1e-2
    assert eb.gamma_shifted_series(10.0) == pytest.approx(0.00167, abs=1e-5)
    with pytest.raises(ValueError):
        eb.gamma_half_series(0.9)


@given(st.floats(1.0, 1e4), st.floats(1.0, 1e4))
def test_series_decreasing(a, b):
    lo, hi = min(a, b), max(a, b)
    assert eb.gamma_half_series(hi) <= eb.gamma_half_series(lo) + 1e-15
    assert eb.gamma_shifted_series(hi) <= eb.gamma_shifted_series(lo) + 1e-15


def test_character_term_examples():
    for x in (1.5, 2.0, 50.0):
        assert eb.character_archimedean_term(x, 1, 0, 1) == pytest.approx(-eb.gamma_half_series(x))
        assert eb.character_archimedean_term(x, 0, 0, 0) == 0
    want = -(2 * math.log(2) - 2) + (math.log(2) + 1) - _series_oracle(1, F1, 2) - _series_oracle(2, F2, 2)
    assert eb.character_archimedean_term(2.0, 1, 1, 0) == pytest.approx(want, rel=1e-12)


def test_class_term_examples():
    x = 10.0
    assert eb.class_archimedean_term(x, 0, 0, 2) == pytest.approx(x * math.log(x) - x)
    assert eb.class_archimedean_term(x, 1, 0, 2) == pytest.approx(
        (x * math.log(x) - x) - ((x + 1) * math.log(x + 1) - x))
    want = (-(1 - 1) * (x * math.log(x) - x) + (0 - 1) * (math.log(x) + 1)
            - eb.gamma_half_series(x) + eb.gamma_shifted_series(x))
    assert eb.class_archimedean_term(x, 1, 0, 2) == pytest.approx(want, abs=1e-9)
    with pytest.raises(ValueError):
        eb.class_archimedean_term(1.0, 0, 0, 2)


REALIZABLE = sorted({(s.s_g, s.delta_C, s.invariants.degree)
                     for fam in [Quadratic(-1), Quadratic(5), Cyclotomic(5), Cyclotomic(8), Cyclotomic(12),
                                 Cyclotomic(15), Cyclotomic(16), Cyclotomic(21)]
                     for s in all_classes(fam)})


@given(st.sampled_from(REALIZABLE), st.floats(1.001, 1e5))
def test_aggregation_identity(t, x):
    s_g, d, n = t
    assert abs(eb.class_archimedean_term(x, s_g, d, n) - eb.aggregated_archimedean_term(x, s_g, d, n)) <= 1e-9 * max(1.0, x)


@given(st.sampled_from([t for t in REALIZABLE if t[2] > 1]), st.floats(math.e, 1e6))
def test_archimedean_lower_bound_from_e(t, x):
    s_g, d, n = t
    assert -eb.class_archimedean_term(x, s_g, d, n) <= eb.archimedean_term_bound(n, x) + 1e-9


def test_archimedean_lower_bound_fails_just_above_one():
    # delta_C = 0, S_g = 0, n_L = 2: x - x log x > 0 exceeds (x+1) log(x+1) - x near x = 1
    x = 1.001
    assert -eb.class_archimedean_term(x, 0, 0, 2) > eb.archimedean_term_bound(2, x)


def test_peak_excess_threshold():
    assert eb.peak_excess(5.3193) + math.log(2) <= 0
    assert 5.3193 * math.exp(4.3193) == pytest.approx(399.67, abs=5e-3)


@given(st.floats(math.e, 1e6), st.floats(0, 1e5))
def test_peak_excess_decreasing(z, dz):
    assert eb.peak_excess(z + dz) <= eb.peak_excess(z) + 1e-15


@pytest.mark.parametrize("y", [1, 10, 100, 399])
def test_log_product_examples(y):
    assert eb.log_product_inequality_holds(400, y)


@given(st.floats(400, 1e12), st.floats(1e-6, 1e12))
def test_log_product_property(x, y):
    assert eb.log_product_inequality_holds(x, y)


def test_log_product_domain():
    with pytest.raises(ValueError):
        eb.log_product_inequality_holds(399, 10)


def test_chain_simplification_peak():
    x = (2 / 0.082) ** 2
    assert x == pytest.approx(594.88, abs=1e-2)
    f = lambda t: (-0.082 * t ** 1.5 + t * math.log(t) - 2.4 * t) / t
    assert f(x) < 2
    assert max(f(400 + i) for i in range(0, 10**5, 7)) <= f(x) + 1e-12


def test_theta_integral_bounds():
    assert eb.theta_integral_unramified_bound(400, 0, 1, 1) == pytest.approx(47200)
    for x, ld, g in [(400, 1.3, 2), (1e4, 7.1, 8), (5e5, 20.0, 12)]:
        diff = eb.theta_integral_unramified_bound(x, ld, g, g) - eb.theta_integral_smooth_bound(x, ld, g)
        assert diff == pytest.approx((g * x - 1) * ld, rel=1e-9)
    with pytest.raises(ValueError):
        eb.theta_integral_smooth_bound(399.9, 1, 2)


@pytest.mark.parametrize("k", range(21))
def test_sufficient_condition_at_bound(k):
    spec = class_context(Quadratic(-3), -1)
    inputs = eb.BoundInputs.from_spec(spec, k)
    x = eb.sqrt_norm_bound(inputs).square
    assert eb.sufficient_condition_holds(x, inputs.log_disc, 2, 2, k)


def test_k_term_values():
    # the right side is 0.2709 at x = 30, not below 0.2; it drops below 0.2 only near x = 236
    assert eb.k_term_rhs(30) == pytest.approx(0.2709, abs=1e-4)
    assert eb.k_term_rhs(237) <= 0.2 < eb.k_term_rhs(235)
    assert all(eb.k_term_rhs(x + 1) < eb.k_term_rhs(x) for x in range(30, 5000))
    assert all(eb.k_term_lhs(y) > 0.2 for y in range(1, 55))
    assert eb.k_term_lhs(55) < 0.2 and eb.k_term_lhs(120) == pytest.approx(0.1454, abs=1e-4)


@given(st.floats(120, 1e9))
def test_k_term_holds_at_x_2ylogy(y):
    assert eb.k_term_margin(2 * y * math.log(y), y) >= 0
