"""Model parameters, the increment Markov chain and its stationary law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np


class ParameterError(ValueError):
    """Raised for persistence probabilities outside the open unit interval."""


@dataclass(frozen=True)
class ModelParams:
    """Persistence probabilities of the walk.

    ``eps_R`` is the probability of stepping right again after a right step,
    ``eps_L`` the probability of stepping left again after a left step.  Both
    must lie strictly inside (0, 1).  Values are normally floats; a
    ``Fraction`` is kept as-is so that exact-arithmetic paths can use it.
    """

    eps_R: Real
    eps_L: Real

    def __post_init__(self) -> None:
        for name in ("eps_R", "eps_L"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Real):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not isinstance(value, Fraction):
                value = float(value)
                object.__setattr__(self, name, value)
            if not 0 < value < 1:
                raise ParameterError(f"{name} must lie in the open interval (0, 1), got {value!r}")

    def mirrored(self) -> ModelParams:
        """Parameters of the walk reflected through the origin."""
        return ModelParams(self.eps_L, self.eps_R)

    def exact(self) -> tuple[Fraction, Fraction]:
        """Both parameters as exact rationals (floats convert without rounding)."""
        return Fraction(self.eps_R), Fraction(self.eps_L)

    def floats(self) -> tuple[float, float]:
        return float(self.eps_R), float(self.eps_L)


@dataclass(frozen=True)
class StationaryDist:
    p_plus: Real
    p_minus: Real

    def __getitem__(self, sigma: int) -> Real:
        if sigma == 1:
            return self.p_plus
        if sigma == -1:
            return self.p_minus
        raise KeyError(sigma)


@dataclass(frozen=True)
class WalkOutcome:
    """Summary of one realized walk: initial direction, end point, reversals."""

    sigma0: int
    x: int
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.sigma0 not in (1, -1):
            raise ValueError(f"sigma0 must be +1 or -1, got {self.sigma0}")
        if abs(self.x) > self.n or (self.x - self.n) % 2:
            raise ValueError(f"position {self.x} unreachable in {self.n} steps")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"reversal count {self.k} outside [0, {self.n}]")


def transition_matrix(params: ModelParams) -> np.ndarray:
    """Row-stochastic matrix of the increment chain, states ordered (+1, -1)."""
    eps_r, eps_l = params.floats()
    return np.array([[eps_r, 1.0 - eps_r], [1.0 - eps_l, eps_l]])


def stationary_dist(params: ModelParams) -> StationaryDist:
    eps_r, eps_l = params.eps_R, params.eps_L
    # summing the complements keeps eps_R <-> eps_L symmetry exact in floats
    u, v = 1 - eps_r, 1 - eps_l
    denom = u + v
    return StationaryDist(v / denom, u / denom)
