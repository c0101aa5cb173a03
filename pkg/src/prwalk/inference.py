"""Moment estimates of (eps_R, eps_L) from observed end positions and reversal counts.

With a = <x>/n and b = <k>/n the exact mean equations invert to

    eps_R = 1 - b / (1 + a),    eps_L = 1 - b / (1 - a),

which lands in (0, 1)**2 exactly when 0 < b < 1 - |a|.  The means are exact
for a stationary initial direction; walks started from a fixed direction
carry an O(1/n) bias that is not corrected here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from prwalk.model import ModelParams


class InadmissibleStatisticsError(ValueError):
    pass


@dataclass(frozen=True)
class SampleStats:
    n: int
    num_walks: int
    mean_x_per_n: float
    mean_k_per_n: float

    @classmethod
    def from_arrays(cls, n: int, x, k) -> SampleStats:
        x = np.asarray(x)
        k = np.asarray(k)
        return cls(n, len(x), float(x.mean()) / n, float(k.mean()) / n)

    @classmethod
    def from_outcomes(cls, outcomes) -> SampleStats:
        outcomes = list(outcomes)
        if not outcomes:
            raise ValueError("no outcomes")
        n = outcomes[0].n
        return cls.from_arrays(n, [o.x for o in outcomes], [o.k for o in outcomes])


def check_admissible(a: float, b: float) -> None:
    if not b > 0:
        raise InadmissibleStatisticsError(f"mean reversals per step b={b} violates b > 0")
    if not b < 1 - abs(a):
        raise InadmissibleStatisticsError(
            f"statistics (a={a}, b={b}) violate b < 1 - |a| ({b} >= {1 - abs(a)})"
        )


def estimate_params(stats: SampleStats) -> ModelParams:
    a, b = stats.mean_x_per_n, stats.mean_k_per_n
    check_admissible(a, b)
    return ModelParams(1 - b / (1 + a), 1 - b / (1 - a))


@dataclass(frozen=True)
class BootstrapResult:
    estimate: ModelParams
    eps_R_interval: tuple[float, float]
    eps_L_interval: tuple[float, float]
    resamples: int
    skipped: int


def _outcome_arrays(outcomes):
    if hasattr(outcomes, "x") and hasattr(outcomes, "k"):
        return outcomes.n, np.asarray(outcomes.x, dtype=float), np.asarray(outcomes.k, dtype=float)
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("no outcomes")
    n = outcomes[0].n
    return n, np.array([o.x for o in outcomes], dtype=float), np.array([o.k for o in outcomes], dtype=float)


def estimate_confidence(outcomes, resamples: int = 1000, seed: int = 0, level: float = 0.95) -> BootstrapResult:
    """Percentile bootstrap intervals for both parameters.

    ``outcomes`` is a sequence of :class:`~prwalk.model.WalkOutcome` or a
    simulation result with ``n``, ``x`` and ``k`` attributes.

    The first of the ``resamples`` replicates is the observed sample itself,
    so a single resample gives the point estimate as a zero-width interval.
    Every other replicate draws from its own stream spawned off ``seed``, so
    the result does not depend on evaluation order.  Replicates whose
    statistics fall outside the admissible region are skipped and counted.
    """
    n, x, k = _outcome_arrays(outcomes)
    m = len(x)
    if m < 2:
        raise ValueError("need at least two outcomes")
    if resamples < 1:
        raise ValueError("resamples must be positive")
    point = estimate_params(SampleStats.from_arrays(n, x, k))

    estimates = [(point.eps_R, point.eps_L)]
    skipped = 0
    for stream in np.random.SeedSequence(seed).spawn(resamples - 1):
        idx = np.random.default_rng(stream).integers(0, m, size=m)
        a, b = x[idx].mean() / n, k[idx].mean() / n
        try:
            check_admissible(a, b)
        except InadmissibleStatisticsError:
            skipped += 1
            continue
        estimates.append((1 - b / (1 + a), 1 - b / (1 - a)))
    est = np.array(estimates)
    tail = 50 * (1 - level)
    lo, hi = np.percentile(est, [tail, 100 - tail], axis=0)
    return BootstrapResult(
        point, (float(lo[0]), float(hi[0])), (float(lo[1]), float(hi[1])), resamples, skipped
    )
