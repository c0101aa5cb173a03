import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from prwalk.exact import closed_form_pmf, q_pmf
from prwalk.expfam import (
    approx_deviation,
    approx_pmf,
    boundary_averages,
    delta_from_total,
    exact_threeparam_pmf,
    from_thermo,
    solve_thermo,
    to_thermo,
)
from prwalk.genfunc import mean_k, mean_x
from prwalk.model import ModelParams, stationary_dist

probs = st.floats(min_value=0.01, max_value=0.99)


def test_simple_walk_has_zero_coordinates():
    th = to_thermo(ModelParams(0.5, 0.5), n=6)
    assert (th.F, th.beta, th.gamma_b) == (0.0, 0.0, 0.0)
    assert th.G == pytest.approx(-6 * math.log(2), rel=1e-15)


def test_drift_walk():
    th = to_thermo(ModelParams(0.7, 0.3))
    assert abs(th.beta) <= 1e-15 and abs(th.gamma_b) <= 1e-15
    assert th.F == pytest.approx(0.5 * math.log(7 / 3), rel=1e-14)


def test_persistent_walk():
    th = to_thermo(ModelParams(0.8, 0.8))
    assert th.F == 0.0 and th.gamma_b == 0.0
    assert th.beta == pytest.approx(-math.log(4), rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.5, max_value=0.99))
def test_special_cases_vanish(e):
    # 1 - e is exact for e >= 1/2, so the pair lies on the drift line exactly
    for pair in ((e, 1 - e), (1 - e, e)):
        drift = to_thermo(ModelParams(*pair))
        assert abs(drift.beta) <= 1e-15 and abs(drift.gamma_b) <= 1e-15
    assert to_thermo(ModelParams(e, e)).F == 0.0
    assert to_thermo(ModelParams(1 - e, 1 - e)).gamma_b == 0.0


def test_from_thermo_fixed_point():
    p = from_thermo(0.0, 0.0)
    assert p.eps_R == pytest.approx(0.5, abs=1e-15) and p.eps_L == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("F", [-2.0, -0.3, 0.4, 1.5])
def test_zero_beta_gives_drift_family(F):
    p = from_thermo(0.0, F)
    assert p.eps_R + p.eps_L == pytest.approx(1.0, abs=1e-14)
    assert p.eps_R / p.eps_L == pytest.approx(math.exp(2 * F), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(probs, probs)
def test_params_round_trip(a, b):
    th = to_thermo(ModelParams(a, b))
    back = from_thermo(th.beta, th.F)
    assert back.eps_R == pytest.approx(a, abs=1e-12)
    assert back.eps_L == pytest.approx(b, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-4, 4), st.floats(-4, 4))
def test_thermo_round_trip(beta, F):
    params = from_thermo(beta, F)
    # a double near 1 keeps only ~1e-16 of 1 - eps; beyond 1e-3 from the edge
    # that alone exceeds the tolerance
    assume(min(params.eps_R, params.eps_L, 1 - params.eps_R, 1 - params.eps_L) > 1e-3)
    th = to_thermo(params)
    assert th.beta == pytest.approx(beta, abs=1e-12)
    assert th.F == pytest.approx(F, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-6, 6), st.floats(0, 6))
def test_inverse_is_odd_in_force(beta, F):
    assert from_thermo(beta, -F) == from_thermo(beta, F).mirrored()


@settings(max_examples=100, deadline=None)
@given(st.floats(-8, 8), st.floats(-8, 8))
def test_exactly_one_admissible_root(beta, F):
    inv = solve_thermo(beta, F)
    assert inv.discriminant > 0
    admissible = [e for e in inv.roots if 0 < e < 1 and 0 < math.exp(2 * abs(F)) * e < 1]
    assert len(admissible) == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_threeparam_is_q_pmf(n, grid_params):
    for sigma0 in (1, -1):
        for x in range(-n, n + 1, 2):
            for k in range(n + 1):
                exact = q_pmf(n, sigma0, x, k, grid_params)
                assert exact_threeparam_pmf(n, sigma0, x, k, grid_params) == pytest.approx(
                    exact, rel=1e-12, abs=1e-15
                )


def test_threeparam_even_k_has_no_boundary_term():
    # gamma_b enters only for odd k: flipping its sign leaves even k unchanged
    p, m = ModelParams(0.3, 0.6), ModelParams(0.6, 0.3)
    for x in (-2, 0, 2):
        assert exact_threeparam_pmf(6, 1, x, 2, p) == pytest.approx(exact_threeparam_pmf(6, -1, -x, 2, m), rel=1e-13)


def test_approx_at_half_is_binomial_product():
    half = ModelParams(0.5, 0.5)
    n = 10
    for x, k in [(0, 2), (2, 4), (-4, 2), (0, 6)]:
        expected = math.comb((n + x) // 2, k // 2) * math.comb((n - x) // 2, k // 2) * 2.0**-n
        assert approx_pmf(n, x, k, half) == pytest.approx(expected, rel=1e-12)


def test_approx_zero_off_support():
    p = ModelParams(0.6, 0.35)
    assert approx_pmf(5, 2, 1, p) == 0.0
    assert approx_pmf(5, 7, 1, p) == 0.0
    assert approx_pmf(4, 4, 2, p) == 0.0


def test_approx_odd_k_uses_continuation():
    p = ModelParams(0.6, 0.35)
    assert 0 < approx_pmf(9, 1, 3, p) < 1


def test_approx_deviation_report():
    rep = approx_deviation(40, ModelParams(0.7, 0.4))
    assert set(rep) == {"mode_x", "mode_k", "mode_rel_error", "tv_normalized", "normalization_defect"}
    assert rep["tv_normalized"] < 0.1
    # the raw approximation is not normalized; it carries about twice the mass
    assert rep["normalization_defect"] > 0.5


@pytest.mark.parametrize("params", [ModelParams(0.7, 0.4), ModelParams(0.2, 0.9), ModelParams(0.5, 0.5)])
def test_renormalized_approximation_improves_with_n(params):
    assert approx_deviation(200, params)["tv_normalized"] < approx_deviation(20, params)["tv_normalized"]


@pytest.mark.parametrize("n", range(1, 13))
def test_boundary_averages_match_direct_sums(n, grid_params):
    avg = boundary_averages(n, grid_params)
    pmf = closed_form_pmf(n, grid_params)
    for sigma0, tag in ((1, "plus"), (-1, "minus")):
        cond = pmf.by_sigma0[sigma0]
        assert avg[f"mean_x_{tag}"] == pytest.approx(cond.mean_x(), abs=1e-11)
        assert avg[f"mean_k_{tag}"] == pytest.approx(cond.mean_k(), abs=1e-11)
    s = stationary_dist(grid_params)
    mixed_x = s.p_plus * avg["mean_x_plus"] + s.p_minus * avg["mean_x_minus"]
    mixed_k = s.p_plus * avg["mean_k_plus"] + s.p_minus * avg["mean_k_minus"]
    assert mixed_x == pytest.approx(mean_x(n, grid_params), abs=1e-11)
    assert mixed_k == pytest.approx(mean_k(n, grid_params), abs=1e-11)


@pytest.mark.parametrize("e", [0.2, 0.5, 0.85])
def test_boundary_averages_symmetric_walk(e):
    avg = boundary_averages(9, ModelParams(e, e))
    assert avg["mean_x_plus"] == pytest.approx(-avg["mean_x_minus"], abs=1e-13)


def test_delta_from_total_matches_conditionals():
    p = ModelParams(0.3, 0.75)
    avg = boundary_averages(7, p)
    total = closed_form_pmf(7, p).odd_k_mass()
    dp, dm = delta_from_total(total, p)
    assert dp == pytest.approx(avg["delta_plus"], abs=1e-13)
    assert dm == pytest.approx(avg["delta_minus"], abs=1e-13)
    assert np.isfinite([dp, dm]).all()


@pytest.mark.parametrize("params", [ModelParams(0.7, 0.4), ModelParams(0.5, 0.5), ModelParams(0.9, 0.9)])
def test_raw_approximation_mass_tends_to_two_over_d(params):
    # the unnormalized form overcounts by a fixed factor, so its pointwise
    # relative error does not vanish with n; only the shape converges
    d = (1 - params.eps_R) + (1 - params.eps_L)
    rep = approx_deviation(400, params)
    assert rep["normalization_defect"] + 1 == pytest.approx(2 / d, rel=1e-6)


def test_mode_error_at_half_stays_at_one():
    half = ModelParams(0.5, 0.5)
    assert approx_deviation(20, half)["mode_rel_error"] == pytest.approx(1.0, abs=1e-3)
    assert approx_deviation(200, half)["mode_rel_error"] == pytest.approx(1.0, abs=1e-12)
