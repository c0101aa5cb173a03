"""Exact counting of walks by end point and reversal signature.

Walks are counted through their decomposition into segments, i.e. maximal
runs of equal steps.  ``count_D`` gives the number of ``n``-step walks whose
pre-walk direction is ``sigma0``, that end at ``x`` and that contain
``k_plus`` right-to-left and ``k_minus`` left-to-right reversals.  The first
step counts as a reversal when it opposes ``sigma0``.

Everything here is exact integer arithmetic except ``log_count_D``, which
evaluates the same formula through log-gamma for large ``n``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln


def double_factorial(n: int) -> int:
    """n!! with the conventions 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    return math.prod(range(n, 0, -2))


def double_fact_C(n: int, m: int) -> int | Fraction:
    """Double-factorial coefficient n!! / (m!! (n-m)!!).

    Zero when ``m < 0``, ``m > n`` or ``n < 0``.  For even arguments this is
    the binomial coefficient ``comb(n // 2, m // 2)``; mixed parities give a
    rational that is returned as a ``Fraction`` when it is not integral.
    """
    if n < 0 or m < 0 or m > n:
        return 0
    if n % 2 == 0 and m % 2 == 0:
        return math.comb(n // 2, m // 2)
    value = Fraction(double_factorial(n), double_factorial(m) * double_factorial(n - m))
    return int(value) if value.denominator == 1 else value


def theta(n: int, sigma: int, x: int, s: int) -> int:
    """1 if an n-step walk with first step ``sigma`` ends at ``x`` with ``s`` segments.

    Segments alternate in direction starting with ``sigma``, so there are
    ceil(s/2) of them in direction ``sigma`` and floor(s/2) in the opposite
    one.  The walk exists iff the steps taken in each direction can be split
    into that many positive parts.
    """
    if s < 1 or s > n or abs(x) > n or (n - x) % 2:
        return 0
    along = (n + sigma * x) // 2
    against = (n - sigma * x) // 2
    r, l = (s + 1) // 2, s // 2
    if along < r or against < l:
        return 0
    if (against == 0) != (l == 0):
        return 0
    return 1


def xi(sigma0: int, k_plus: int, k_minus: int) -> int:
    """Parity gate: the split (k_plus, k_minus) is compatible with ``sigma0``."""
    return int(k_plus == k_minus or k_plus - k_minus == sigma0)


def segment_count_prob(n: int, s: int) -> Fraction:
    """Probability that a simple symmetric n-step walk has exactly ``s`` segments."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if s < 1 or s > n:
        return Fraction(0)
    return Fraction(math.comb(n - 1, s - 1), 2 ** (n - 1))


def count_D(n: int, sigma0: int, x: int, k_plus: int, k_minus: int) -> int:
    """Number of n-step walks with signature (sigma0, x, k_plus, k_minus).

    The walk is extended by one step backwards to start at ``-sigma0``; the
    extended walk has ``k_plus + k_minus + 1`` segments, and the count is the
    product of the two composition counts over its segments.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if k_plus < 0 or k_minus < 0:
        return 0
    gate = theta(n + 1, sigma0, x + sigma0, k_plus + k_minus + 1) * xi(sigma0, k_plus, k_minus)
    if not gate:
        return 0
    if k_plus + k_minus == 0:
        # a single segment: the straight walk, which the C factors miss
        # (its empty composition shows up as C(-2, -2))
        return 1
    return int(
        double_fact_C(n - 1 + x + sigma0, 2 * k_minus + sigma0 - 1)
        * double_fact_C(n - 1 - x - sigma0, 2 * k_plus - sigma0 - 1)
    )


def split_reversals(sigma0: int, k: int) -> tuple[int, int]:
    """(k_plus, k_minus) for a total of ``k`` reversals given ``sigma0``."""
    if k % 2 == 0:
        return k // 2, k // 2
    return (k + sigma0) // 2, (k - sigma0) // 2


@lru_cache(maxsize=8)
def _log_factorials(m: int) -> np.ndarray:
    table = gammaln(np.arange(m + 1) + 1.0)
    table.setflags(write=False)
    return table


def _log_C(a: np.ndarray, b: np.ndarray, lf: np.ndarray) -> np.ndarray:
    # log C(a, b) for even a, b as a log binomial of the halves; -inf outside 0 <= b <= a
    valid = (b >= 0) & (b <= a) & (a >= 0)
    a2 = np.where(valid, a, 0) // 2
    b2 = np.where(valid, b, 0) // 2
    out = lf[a2] - lf[b2] - lf[a2 - b2]
    return np.where(valid, out, -np.inf)


def log_count_D(n: int, sigma0: int, x, k) -> np.ndarray:
    """Vectorized ``log(count_D)`` over arrays of ``x`` and total reversals ``k``.

    ``k`` is split into (k_plus, k_minus) by :func:`split_reversals`, so the
    parity gate always passes.  Returns ``-inf`` where no walk exists.
    """
    x = np.asarray(x, dtype=np.int64)
    k = np.asarray(k, dtype=np.int64)
    x, k = np.broadcast_arrays(x, k)
    odd = k % 2
    k_plus = np.where(odd == 1, (k + sigma0) // 2, k // 2)
    k_minus = k - k_plus

    # existence of the extended (n+1)-step walk with k+1 segments
    big_n = n + 1
    along = (big_n + sigma0 * (x + sigma0)) // 2
    against = (big_n - sigma0 * (x + sigma0)) // 2
    s = k + 1
    r, l = (s + 1) // 2, s // 2
    exists = (
        (k >= 0)
        & (s <= big_n)
        & (np.abs(x) <= n)
        & ((n - x) % 2 == 0)
        & (along >= r)
        & (against >= l)
        & ((against == 0) == (l == 0))
    )
    lf = _log_factorials(n + 1)
    logc = _log_C(n - 1 + x + sigma0, 2 * k_minus + sigma0 - 1, lf) + _log_C(
        n - 1 - x - sigma0, 2 * k_plus - sigma0 - 1, lf
    )
    logc = np.where(k == 0, 0.0, logc)
    return np.where(exists, logc, -np.inf)
