"""Exact joint law of end position and reversal count.

Two independent constructions are provided:

* the closed form, which multiplies walk counts from
  :mod:`prwalk.combinatorics` by the common probability ``gamma_weight`` of
  every walk with a given signature and mixes the two conditional laws with
  the stationary weights;
* a forward dynamic program over (direction, position, reversals).

Closed-form tables come in three precisions: ``"exact"`` (rational
arithmetic), ``"linear"`` (exact integer counts, double-precision weights)
and ``"log"`` (log-gamma counts, suitable for thousands of steps).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from prwalk.combinatorics import count_D, log_count_D, split_reversals
from prwalk.config import LOG_CROSSOVER_N
from prwalk.model import ModelParams, stationary_dist
from prwalk.table import JointPmf

MODES = ("exact", "linear", "log")


class DomainError(ValueError):
    """Raised for an (n, x) pair that no walk can realize."""


def _check_site(n: int, x: int) -> None:
    if n < 0 or abs(x) > n or (n - x) % 2:
        raise DomainError(f"position {x} is not reachable in {n} steps")


def _log_factors(params: ModelParams) -> tuple[float, float, float, float]:
    # log of: right step, left step, right->left reversal, left->right reversal
    eps_r, eps_l = params.floats()
    log_r, log_l = math.log(eps_r), math.log(eps_l)
    return log_r, log_l, math.log1p(-eps_r) - log_l, math.log1p(-eps_l) - log_r


def gamma_weight(n: int, x: int, k_plus: int, k_minus: int, params: ModelParams) -> float:
    """Log probability of any single n-step walk ending at ``x`` with the given reversals."""
    _check_site(n, x)
    log_r, log_l, log_rl, log_lr = _log_factors(params)
    return (n + x) // 2 * log_r + (n - x) // 2 * log_l + k_plus * log_rl + k_minus * log_lr


def gamma_weight_exact(n: int, x: int, k_plus: int, k_minus: int, params: ModelParams) -> Fraction:
    _check_site(n, x)
    eps_r, eps_l = params.exact()
    return (
        eps_r ** ((n + x) // 2)
        * eps_l ** ((n - x) // 2)
        * ((1 - eps_r) / eps_l) ** k_plus
        * ((1 - eps_l) / eps_r) ** k_minus
    )


def q_pmf(n: int, sigma0: int, x: int, k: int, params: ModelParams) -> float:
    """P(x_n = x, k_n = k | sigma_0 = sigma0)."""
    _check_site(n, x)
    if not 0 <= k <= n:
        return 0.0
    k_plus, k_minus = split_reversals(sigma0, k)
    count = count_D(n, sigma0, x, k_plus, k_minus)
    if count == 0:
        return 0.0
    return math.exp(math.log(count) + gamma_weight(n, x, k_plus, k_minus, params))


def q_pmf_exact(n: int, sigma0: int, x: int, k: int, params: ModelParams) -> Fraction:
    _check_site(n, x)
    if not 0 <= k <= n:
        return Fraction(0)
    k_plus, k_minus = split_reversals(sigma0, k)
    count = count_D(n, sigma0, x, k_plus, k_minus)
    if count == 0:
        return Fraction(0)
    return count * gamma_weight_exact(n, x, k_plus, k_minus, params)


def joint_pmf(n: int, x: int, k: int, params: ModelParams) -> float:
    """P(x_n = x, k_n = k) under stationary initial direction; 0 off support."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if abs(x) > n or (n - x) % 2:
        return 0.0
    stat = stationary_dist(params)
    return float(stat.p_plus) * q_pmf(n, 1, x, k, params) + float(stat.p_minus) * q_pmf(
        n, -1, x, k, params
    )


# --- whole tables ---------------------------------------------------------


def _log_gamma_grid(n, x, k, sigma0, params) -> np.ndarray:
    log_r, log_l, log_rl, log_lr = _log_factors(params)
    odd = k % 2
    k_plus = np.where(odd == 1, (k + sigma0) // 2, k // 2)
    k_minus = k - k_plus
    return (n + x) // 2 * log_r + (n - x) // 2 * log_l + k_plus * log_rl + k_minus * log_lr


def _log_q_grid(n: int, sigma0: int, params: ModelParams, mode: str) -> np.ndarray:
    x = np.arange(-n, n + 1, 2)[:, None]
    k = np.arange(n + 1)[None, :]
    if mode == "log":
        log_count = log_count_D(n, sigma0, x, k)
    else:
        log_count = np.full((n + 1, n + 1), -np.inf)
        for i, xv in enumerate(range(-n, n + 1, 2)):
            for kv in range(n + 1):
                count = count_D(n, sigma0, xv, *split_reversals(sigma0, kv))
                if count:
                    log_count[i, kv] = math.log(count)
    with np.errstate(invalid="ignore"):
        out = log_count + _log_gamma_grid(n, x, k, sigma0, params)
    return np.where(np.isfinite(log_count), out, -np.inf)


def conditional_pmf(n: int, sigma0: int, params: ModelParams, mode: str = "linear") -> JointPmf:
    """Table of the law given the pre-walk direction ``sigma0``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "exact":
        exact = {}
        for x in range(-n, n + 1, 2):
            for k in range(n + 1):
                value = q_pmf_exact(n, sigma0, x, k, params)
                if value:
                    exact[(x, k)] = value
        return JointPmf.from_exact(n, params, exact)
    return JointPmf.from_log_prob(n, params, _log_q_grid(n, sigma0, params, mode))


def closed_form_pmf(n: int, params: ModelParams, mode: str | None = None) -> JointPmf:
    """Full joint table from the counting formula.

    ``mode`` defaults to ``"linear"`` up to ``LOG_CROSSOVER_N`` steps and to
    ``"log"`` beyond.  The returned table carries both conditional tables in
    ``by_sigma0``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if mode is None:
        mode = "linear" if n <= LOG_CROSSOVER_N else "log"
    stat = stationary_dist(params)
    q = {s: conditional_pmf(n, s, params, mode) for s in (1, -1)}
    if mode == "exact":
        p_plus, p_minus = _exact_stationary(params)
        keys = set(q[1].exact) | set(q[-1].exact)
        exact = {
            key: p_plus * q[1].exact.get(key, 0) + p_minus * q[-1].exact.get(key, 0) for key in keys
        }
        return JointPmf.from_exact(n, params, exact, by_sigma0=q)
    log_p = np.logaddexp(
        math.log(stat.p_plus) + q[1].log_prob, math.log(stat.p_minus) + q[-1].log_prob
    )
    return JointPmf.from_log_prob(n, params, log_p, by_sigma0=q)


def _exact_stationary(params: ModelParams) -> tuple[Fraction, Fraction]:
    eps_r, eps_l = params.exact()
    denom = 2 - eps_r - eps_l
    return (1 - eps_l) / denom, (1 - eps_r) / denom


# --- dynamic programming ------------------------------------------------------


def dp_pmf_resolved(n: int, params: ModelParams, log: bool = False) -> tuple[JointPmf, JointPmf]:
    """Sub-tables P(sigma_n = +1, x, k) and P(sigma_n = -1, x, k) by forward recursion.

    A step to the right is either a persistence after a right step (factor
    eps_R) or a reversal after a left step (factor 1 - eps_L, one more
    reversal); symmetrically for steps to the left.  The recursion starts from
    the stationary direction at x = 0 with no reversals.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    stat = stationary_dist(params)
    eps_r, eps_l = params.floats()
    width = 2 * n + 1  # positions -n..n, index x + n

    if log:
        plus = np.full((width, n + 1), -np.inf)
        minus = np.full((width, n + 1), -np.inf)
        plus[n, 0], minus[n, 0] = math.log(stat.p_plus), math.log(stat.p_minus)
        a, b = math.log(eps_r), math.log1p(-eps_l)
        c, d = math.log1p(-eps_r), math.log(eps_l)
        for _ in range(n):
            new_plus = np.full_like(plus, -np.inf)
            new_minus = np.full_like(minus, -np.inf)
            new_plus[1:, :] = a + plus[:-1, :]
            new_plus[1:, 1:] = np.logaddexp(new_plus[1:, 1:], b + minus[:-1, :-1])
            new_minus[:-1, :] = d + minus[1:, :]
            new_minus[:-1, 1:] = np.logaddexp(new_minus[:-1, 1:], c + plus[1:, :-1])
            plus, minus = new_plus, new_minus
        rows = slice(0, width, 2)
        return (
            JointPmf.from_log_prob(n, params, plus[rows]),
            JointPmf.from_log_prob(n, params, minus[rows]),
        )

    plus = np.zeros((width, n + 1))
    minus = np.zeros((width, n + 1))
    plus[n, 0], minus[n, 0] = float(stat.p_plus), float(stat.p_minus)
    for _ in range(n):
        new_plus = np.zeros_like(plus)
        new_minus = np.zeros_like(minus)
        new_plus[1:, :] += eps_r * plus[:-1, :]
        new_plus[1:, 1:] += (1 - eps_l) * minus[:-1, :-1]
        new_minus[:-1, :] += eps_l * minus[1:, :]
        new_minus[:-1, 1:] += (1 - eps_r) * plus[1:, :-1]
        plus, minus = new_plus, new_minus
    rows = slice(0, width, 2)
    return JointPmf.from_prob(n, params, plus[rows]), JointPmf.from_prob(n, params, minus[rows])


def dp_pmf(n: int, params: ModelParams, log: bool = False) -> JointPmf:
    plus, minus = dp_pmf_resolved(n, params, log=log)
    if log:
        return JointPmf.from_log_prob(n, params, np.logaddexp(plus.log_prob, minus.log_prob))
    return JointPmf.from_prob(n, params, plus.prob + minus.prob)


# --- derived quantities ----------------------------------------------------------


def delta_prob(pmf: JointPmf) -> float:
    """Probability that the number of reversals is odd."""
    return pmf.odd_k_mass()


def delta_prob_conditional(pmf: JointPmf, sigma0: int) -> float:
    if pmf.by_sigma0 is None:
        raise ValueError("table does not carry the conditional laws given sigma0")
    return pmf.by_sigma0[sigma0].odd_k_mass()


def iter_log_rows(n: int, params: ModelParams):
    """Yield ``(x, k, log_prob)`` row by row without building the full table.

    ``k`` only covers the reversal counts that can occur at ``x``, so the
    memory footprint is O(n) even for n of order 10**4.
    """
    stat = stationary_dist(params)
    log_p_plus, log_p_minus = math.log(stat.p_plus), math.log(stat.p_minus)
    for x in range(-n, n + 1, 2):
        # each reversal pairs a step in each direction
        k_max = min(n, 2 * min((n + x) // 2, (n - x) // 2) + 1)
        k = np.arange(k_max + 1)
        terms = []
        for sigma0, log_w in ((1, log_p_plus), (-1, log_p_minus)):
            log_count = log_count_D(n, sigma0, x, k)
            with np.errstate(invalid="ignore"):
                lq = log_count + _log_gamma_grid(n, x, k, sigma0, params)
            terms.append(np.where(np.isfinite(log_count), lq + log_w, -np.inf))
        yield x, k, np.logaddexp(*terms)


def stream_moments(n: int, params: ModelParams) -> tuple[float, float, float]:
    """(total mass, mean position, mean reversals) summed over the log-mode table."""
    totals, xs, ks = [], [], []
    for x, k, log_p in iter_log_rows(n, params):
        p = np.exp(log_p)
        # numpy's pairwise sum within a row, exact fsum across rows
        row = float(p.sum())
        totals.append(row)
        xs.append(x * row)
        ks.append(float((k * p).sum()))
    return math.fsum(totals), math.fsum(xs), math.fsum(ks)
