"""Generating function sum_{x,k} w**x z**k p_n(x, k) via a 2x2 transfer matrix.

One step acts on the pair (f_plus, f_minus), split by the direction of the
last step, through

    M(w, z) = [[eps_R w,           (1 - eps_L) w z],
               [(1 - eps_R) z / w,  eps_L / w     ]].

M - tr(M)/2 squares to (nu/2)**2 times the identity, which gives M**n in
closed form through its two eigenvalues.  Only real z and w > 0 are
supported, so nu is real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from prwalk.config import TOL
from prwalk.model import ModelParams, stationary_dist


@dataclass(frozen=True)
class GenFuncMatrix:
    w: float
    z: float
    matrix: np.ndarray
    nu: float
    lambda_plus: float
    lambda_minus: float

    @property
    def degenerate(self) -> bool:
        scale = abs(self.lambda_plus) + abs(self.lambda_minus)
        return self.nu < TOL.nu_degenerate * scale


def genfunc_matrix(w: float, z: float, params: ModelParams) -> GenFuncMatrix:
    if not w > 0:
        raise ValueError(f"w must be positive, got {w}")
    eps_r, eps_l = params.floats()
    m = np.array([[eps_r * w, (1 - eps_l) * w * z], [(1 - eps_r) * z / w, eps_l / w]])
    half_trace = 0.5 * (eps_r * w + eps_l / w)
    nu = math.sqrt((eps_r * w - eps_l / w) ** 2 + 4 * (1 - eps_r) * (1 - eps_l) * z * z)
    return GenFuncMatrix(w, z, m, nu, half_trace + 0.5 * nu, half_trace - 0.5 * nu)


def _power_coefficients(g: GenFuncMatrix, n: int) -> tuple[float, float]:
    # M**n = a I + b (M - tr(M)/2 I) with a = (l+^n + l-^n)/2, b = (l+^n - l-^n)/nu
    lp, lm = g.lambda_plus, g.lambda_minus
    a = 0.5 * (lp**n + lm**n)
    if g.degenerate:
        lam = 0.5 * (lp + lm)
        b = n * lam ** (n - 1) if n > 0 else 0.0
    else:
        b = (lp**n - lm**n) / g.nu
    return a, b


def matrix_power(n: int, w: float, z: float, params: ModelParams) -> np.ndarray:
    """M(w, z)**n from the eigenvalue formula."""
    g = genfunc_matrix(w, z, params)
    a, b = _power_coefficients(g, n)
    traceless = g.matrix - 0.5 * np.trace(g.matrix) * np.eye(2)
    return a * np.eye(2) + b * traceless


def state_vector(n: int, w: float, z: float, params: ModelParams) -> np.ndarray:
    """(f_plus, f_minus) after n steps, starting from the stationary direction law."""
    stat = stationary_dist(params)
    return matrix_power(n, w, z, params) @ np.array([float(stat.p_plus), float(stat.p_minus)])


def matrix_power_f(n: int, w: float, z: float, params: ModelParams) -> float:
    """Generating function f_n(w, z) in closed form."""
    if n < 0:
        raise ValueError("n must be non-negative")
    g = genfunc_matrix(w, z, params)
    eps_r, eps_l = params.floats()
    stat = stationary_dist(params)
    p_plus, p_minus = float(stat.p_plus), float(stat.p_minus)
    a, b = _power_coefficients(g, n)
    bracket = (
        (eps_r * w - eps_l / w) * (p_plus - p_minus)
        + 2 * (1 - eps_r) * p_plus * z / w
        + 2 * (1 - eps_l) * p_minus * w * z
    )
    return a + 0.5 * b * bracket


def iterate_f(n: int, w: float, z: float, params: ModelParams, start: np.ndarray | None = None) -> float:
    """f_n(w, z) by applying M to the state vector ``n`` times."""
    m = genfunc_matrix(w, z, params).matrix
    if start is None:
        stat = stationary_dist(params)
        start = np.array([float(stat.p_plus), float(stat.p_minus)])
    v = np.asarray(start, dtype=float)
    for _ in range(n):
        v = m @ v
    return float(v.sum())


def mean_k(n: int, params: ModelParams) -> float:
    """Exact mean number of reversals after n steps."""
    eps_r, eps_l = params.floats()
    u, v = 1 - eps_r, 1 - eps_l
    return 2 * n * (u * v) / (u + v)


def mean_x(n: int, params: ModelParams) -> float:
    """Exact mean end position after n steps."""
    eps_r, eps_l = params.floats()
    return n * (eps_r - eps_l) / ((1 - eps_r) + (1 - eps_l))
