import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prwalk.genfunc import mean_k, mean_x
from prwalk.inference import (
    InadmissibleStatisticsError,
    SampleStats,
    estimate_confidence,
    estimate_params,
)
from prwalk.model import ModelParams, WalkOutcome
from prwalk.oracle import SimConfig, simulate

GRID = np.linspace(0.02, 0.98, 25)


def stats(a, b, n=100):
    return SampleStats(n, 1, a, b)


def test_simple_walk_fixed_point():
    p = estimate_params(stats(0.0, 0.5))
    assert (p.eps_R, p.eps_L) == (0.5, 0.5)


def test_worked_inversion():
    p = estimate_params(stats(0.5, 0.375))
    assert p.eps_R == pytest.approx(0.75, abs=1e-15)
    assert p.eps_L == pytest.approx(0.25, abs=1e-15)


def test_exact_round_trip_on_grid():
    n = 37
    worst = 0.0
    for a in GRID:
        for b in GRID:
            truth = ModelParams(a, b)
            est = estimate_params(stats(mean_x(n, truth) / n, mean_k(n, truth) / n, n))
            worst = max(worst, abs(est.eps_R - a), abs(est.eps_L - b))
    assert worst < 1e-14


@settings(max_examples=200, deadline=None)
@given(st.floats(-0.99, 0.99), st.floats(0.001, 1.0))
def test_equivariance(a, frac):
    b = frac * (1 - abs(a))
    if not 0 < b < 1 - abs(a):
        return
    p, m = estimate_params(stats(a, b)), estimate_params(stats(-a, b))
    assert (m.eps_R, m.eps_L) == (p.eps_L, p.eps_R)


@pytest.mark.parametrize("a,b,fragment", [(0.2, 0.0, "b > 0"), (0.5, 0.6, "b < 1 - |a|"), (-0.9, 0.1, "b < 1 - |a|")])
def test_inadmissible_names_inequality(a, b, fragment):
    with pytest.raises(InadmissibleStatisticsError, match=fragment.replace("|", r"\|")):
        estimate_params(stats(a, b))


def test_sample_stats_from_outcomes():
    outs = [WalkOutcome(1, 4, 0, 4), WalkOutcome(-1, 0, 2, 4)]
    s = SampleStats.from_outcomes(outs)
    assert (s.n, s.num_walks, s.mean_x_per_n, s.mean_k_per_n) == (4, 2, 0.5, 0.25)


def test_simulated_recovery():
    truth = ModelParams(0.7, 0.4)
    res = simulate(SimConfig(100, 100_000, 11, truth))
    est = estimate_params(SampleStats.from_arrays(100, res.x, res.k))
    assert max(abs(est.eps_R - 0.7), abs(est.eps_L - 0.4)) < 0.01


def test_consistency_with_sample_size():
    truth = ModelParams(0.7, 0.4)

    def error(num_walks, seed):
        res = simulate(SimConfig(100, num_walks, seed, truth))
        est = estimate_params(SampleStats.from_arrays(100, res.x, res.k))
        return max(abs(est.eps_R - 0.7), abs(est.eps_L - 0.4))

    small = np.mean([error(1_000, s) for s in range(20)])
    large = np.mean([error(100_000, s) for s in range(3)])
    assert small / large > 3


def test_identical_outcomes_give_zero_width():
    outs = [WalkOutcome(1, 0, 2, 4)] * 30
    boot = estimate_confidence(outs, resamples=50, seed=1)
    assert boot.eps_R_interval == (0.5, 0.5) and boot.eps_L_interval == (0.5, 0.5)


def test_single_resample_is_point_estimate():
    res = simulate(SimConfig(20, 500, 4, ModelParams(0.6, 0.3)))
    boot = estimate_confidence(res, resamples=1, seed=9)
    assert boot.eps_R_interval == (boot.estimate.eps_R, boot.estimate.eps_R)
    assert boot.eps_L_interval == (boot.estimate.eps_L, boot.estimate.eps_L)


def test_bootstrap_deterministic_and_accepts_outcome_lists():
    res = simulate(SimConfig(20, 300, 4, ModelParams(0.6, 0.3)))
    a = estimate_confidence(res, resamples=100, seed=3)
    b = estimate_confidence(list(res.outcomes()), resamples=100, seed=3)
    assert a == b
    assert a.eps_R_interval[0] <= a.estimate.eps_R <= a.eps_R_interval[1]


def test_bootstrap_counts_inadmissible_resamples():
    # mostly straight walks: some resamples have no reversals at all
    outs = [WalkOutcome(1, 4, 0, 4)] * 40 + [WalkOutcome(1, 2, 1, 4)]
    boot = estimate_confidence(outs, resamples=200, seed=0)
    assert 0 < boot.skipped < 200


def test_bootstrap_needs_two_outcomes():
    with pytest.raises(ValueError):
        estimate_confidence([WalkOutcome(1, 0, 2, 4)])


@pytest.mark.slow
def test_bootstrap_coverage():
    truth = ModelParams(0.6, 0.6)
    root = np.random.SeedSequence(2718)
    covered = np.zeros(2)
    for i, child in enumerate(root.generate_state(200)):
        res = simulate(SimConfig(50, 400, int(child), truth))
        boot = estimate_confidence(res, resamples=400, seed=i)
        covered += [lo <= 0.6 <= hi for lo, hi in (boot.eps_R_interval, boot.eps_L_interval)]
    # each parameter's interval is checked on its own
    assert (covered / 200 >= 0.88).all()
