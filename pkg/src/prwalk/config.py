"""Numerical tolerances and size limits shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # ~100x double-precision accumulation error of a dense table at n=300
    normalization_linear: float = 1e-12
    normalization_log: float = 1e-9
    elementwise: float = 1e-12
    moment_relative: float = 1e-10
    # relative size of nu below which the repeated-eigenvalue limit is used
    nu_degenerate: float = 1e-12


TOL = Tolerances()

# Above this n, exact integer counts are replaced by log-gamma evaluation.
LOG_CROSSOVER_N = 300

# 2**n guard for exhaustive enumeration.
MAX_ENUMERATION_N = 24
