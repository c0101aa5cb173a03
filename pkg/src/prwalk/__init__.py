"""Exact and simulated statistics of a two-parameter persistent random walk.

The walk steps right with probability ``eps_R`` when its previous step was to
the right, and left with probability ``eps_L`` when its previous step was to
the left.  The package computes the joint law of the end position ``x`` and
the number of direction reversals ``k`` after ``n`` steps, its exponential
family coordinates, and moment estimates of the two parameters.
"""

from prwalk.model import ModelParams, StationaryDist, WalkOutcome, stationary_dist, transition_matrix

__all__ = [
    "ModelParams",
    "StationaryDist",
    "WalkOutcome",
    "stationary_dist",
    "transition_matrix",
]

__version__ = "0.1.0"
