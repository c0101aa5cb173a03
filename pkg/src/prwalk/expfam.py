"""Exponential-family coordinates of the walk.

Every walk with ``k`` reversals split evenly between the two kinds has
probability ``exp(G + beta k + F x)``, with

    F      = 1/2 ln(eps_R / eps_L)                         (force)
    beta   = -1/2 ln(eps_R eps_L / ((1-eps_R)(1-eps_L)))   (inverse temperature)
    G      = n/2 ln(eps_R eps_L)
    gamma_b = 1/2 ln((1-eps_R) eps_R / ((1-eps_L) eps_L))  (boundary term)

An odd ``k`` has one unpaired reversal whose kind is fixed by the initial
direction; it contributes ``exp(+/- gamma_b)``.  ``gamma_b`` is not to be
confused with the per-walk weight :func:`prwalk.exact.gamma_weight`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from prwalk.combinatorics import count_D, split_reversals
from prwalk.exact import closed_form_pmf, delta_prob_conditional
from prwalk.genfunc import mean_x
from prwalk.model import ModelParams, stationary_dist


class NoSolutionError(ValueError):
    pass


class AmbiguousSolutionError(ValueError):
    pass


@dataclass(frozen=True)
class ThermoParams:
    F: float
    beta: float
    gamma_b: float
    G: float
    n: int


def to_thermo(params: ModelParams, n: int = 1) -> ThermoParams:
    eps_r, eps_l = params.floats()
    log_r, log_l = math.log(eps_r), math.log(eps_l)
    # beta and gamma_b are written through s = eps_R + eps_L - 1 (summed
    # exactly) so both come out zero to rounding on the drift line s = 0
    s = math.fsum((eps_r, eps_l, -1.0))
    beta = -0.5 * (math.log1p(s / (1 - eps_l)) + math.log1p(s / (1 - eps_r)))
    gamma_b = 0.5 * math.log1p(-(eps_r - eps_l) * s / (eps_l * (1 - eps_l)))
    return ThermoParams(
        F=0.5 * (log_r - log_l),
        beta=beta,
        gamma_b=gamma_b,
        G=0.5 * n * (log_r + log_l),
        n=n,
    )


@dataclass(frozen=True)
class ThermoInversion:
    params: ModelParams
    discriminant: float
    roots: tuple[float, ...]


def solve_thermo(beta: float, F: float) -> ThermoInversion:
    """Invert (beta, F) -> (eps_R, eps_L), reporting the quadratic's data.

    With t = exp(2F) and c = exp(-2 beta), eps_R = t eps_L and eps_L solves
    t (1 - c) e**2 + c (1 + t) e - c = 0.  Negative F is handled by solving
    for -F and mirroring, which keeps the map exactly odd in F.
    """
    if F < 0:
        inv = solve_thermo(beta, -F)
        return ThermoInversion(inv.params.mirrored(), inv.discriminant, inv.roots)
    t = math.exp(2 * F)
    c = math.exp(-2 * beta)
    a, b, cc = t * (1 - c), c * (1 + t), -c
    disc = b * b - 4 * a * cc
    if a == 0:
        roots: tuple[float, ...] = (-cc / b,)
    elif disc < 0:
        roots = ()
    else:
        # numerically stable pair of roots
        q = -0.5 * (b + math.sqrt(disc))
        roots = (q / a, cc / q)
    admissible = [e for e in roots if 0 < e < 1 and 0 < t * e < 1]
    if not admissible:
        raise NoSolutionError(f"no admissible parameters for beta={beta}, F={F} (discriminant {disc})")
    if len(admissible) > 1 and not math.isclose(admissible[0], admissible[1], rel_tol=1e-12):
        raise AmbiguousSolutionError(f"two admissible roots {admissible} for beta={beta}, F={F}")
    eps_l = admissible[0]
    return ThermoInversion(ModelParams(t * eps_l, eps_l), disc, roots)


def from_thermo(beta: float, F: float) -> ModelParams:
    return solve_thermo(beta, F).params


def exact_threeparam_pmf(n: int, sigma0: int, x: int, k: int, params: ModelParams) -> float:
    """Conditional law given sigma0, written in exponential-family form."""
    if abs(x) > n or (n - x) % 2 or not 0 <= k <= n:
        return 0.0
    th = to_thermo(params, n)
    delta = k % 2
    count = count_D(n, sigma0, x, *split_reversals(sigma0, k))
    if count == 0:
        return 0.0
    return math.exp(math.log(count) + th.G + th.beta * k + th.F * x + sigma0 * th.gamma_b * delta)


def _log_binom(a, b):
    return gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)


def approx_pmf(n: int, x: int, k: int, params: ModelParams) -> float:
    """Two-parameter approximation binom((n+x)/2, k/2) binom((n-x)/2, k/2) exp(G + beta k + F x).

    Odd ``k`` uses the log-gamma continuation of the binomial.  Returns 0
    where the exact law vanishes.
    """
    if abs(x) > n or (n - x) % 2 or not 0 <= k <= n:
        return 0.0
    if not (count_D(n, 1, x, *split_reversals(1, k)) or count_D(n, -1, x, *split_reversals(-1, k))):
        return 0.0
    th = to_thermo(params, n)
    right, left, half = (n + x) / 2, (n - x) / 2, k / 2
    log_value = _log_binom(right, half) + _log_binom(left, half) + th.G + th.beta * k + th.F * x
    return math.exp(log_value)


def approx_table(n: int, params: ModelParams, support: np.ndarray) -> np.ndarray:
    """Vectorized :func:`approx_pmf` on the (x, k) grid, masked by ``support``."""
    th = to_thermo(params, n)
    x = np.arange(-n, n + 1, 2)[:, None].astype(float)
    k = np.arange(n + 1)[None, :].astype(float)
    right, left, half = (n + x) / 2, (n - x) / 2, k / 2
    with np.errstate(invalid="ignore"):
        log_value = _log_binom(right, half) + _log_binom(left, half) + th.G + th.beta * k + th.F * x
    return np.where(support, np.exp(np.where(support, log_value, 0.0)), 0.0)


def approx_deviation(n: int, params: ModelParams) -> dict[str, float]:
    """Compare the two-parameter approximation with the exact table.

    Reports the relative error at the exact mode, the total variation
    distance after renormalizing the approximation, and the approximation's
    normalization defect.
    """
    exact = closed_form_pmf(n, params)
    approx = approx_table(n, params, exact.support)
    i, k = np.unravel_index(np.argmax(exact.prob), exact.prob.shape)
    mass = float(approx.sum())
    return {
        "mode_x": int(2 * i - n),
        "mode_k": int(k),
        "mode_rel_error": abs(approx[i, k] / exact.prob[i, k] - 1),
        "tv_normalized": 0.5 * float(np.abs(approx / mass - exact.prob).sum()),
        "normalization_defect": mass - 1.0,
    }


def boundary_averages(n: int, params: ModelParams) -> dict[str, float]:
    """Conditional means given sigma0 from the odd-reversal probabilities.

    The odd-k probabilities are taken from the exact conditional tables;
    the means of x and k then follow from the normalization identities of
    the three-parameter form.
    """
    eps_r, eps_l = params.floats()
    pmf = closed_form_pmf(n, params)
    d_plus = delta_prob_conditional(pmf, 1)
    d_minus = delta_prob_conditional(pmf, -1)
    denom = 2 - eps_r - eps_l
    base_x = mean_x(n, params)
    base_k = 2 * n * (1 - eps_r) * (1 - eps_l) / denom
    cx = 2 * (1 - eps_r - eps_l) / denom
    ck = (eps_r - eps_l) / denom
    return {
        "mean_x_plus": base_x - cx * d_plus,
        "mean_x_minus": base_x + cx * d_minus,
        "mean_k_plus": base_k - ck * d_plus,
        "mean_k_minus": base_k + ck * d_minus,
        "delta_plus": d_plus,
        "delta_minus": d_minus,
    }


def delta_from_total(delta: float, params: ModelParams) -> tuple[float, float]:
    """Conditional odd-reversal probabilities implied by the unconditional one."""
    stat = stationary_dist(params)
    return delta / (2 * float(stat.p_plus)), delta / (2 * float(stat.p_minus))
