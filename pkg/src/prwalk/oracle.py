"""Ground truth by brute force: exhaustive path enumeration and Monte Carlo.

Nothing here uses the counting formulas.  Enumeration walks through every
sign sequence and multiplies transition probabilities; simulation draws
steps from the Markov chain of increments.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from prwalk.config import MAX_ENUMERATION_N
from prwalk.model import ModelParams, WalkOutcome, stationary_dist
from prwalk.table import JointPmf, _read_text, format_float

SIGMA0_MODES = ("stationary", "forced_plus", "forced_minus")

_CHUNK = 1 << 16


class EnumerationSizeError(ValueError):
    pass


def _sign_paths(n: int, first: int | None = None):
    """Yield int8 arrays of shape (m, n) covering all sign sequences of length n.

    With ``first`` given, only sequences starting with that sign are produced.
    """
    free = n if first is None else n - 1
    total = 1 << free
    shifts = np.arange(free, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(np.int8)
        signs = 2 * bits - 1
        if first is not None:
            signs = np.hstack([np.full((len(idx), 1), first, dtype=np.int8), signs])
        yield signs


def transition_signatures(n: int, sigma0: int) -> Counter:
    """Multiplicity of each (x, n_pp, n_pm, n_mp, n_mm) over all 2**n walks.

    ``n_pm`` counts steps + -> - (right-to-left reversals), ``n_mp`` the
    reverse; the first step is compared against ``sigma0``.
    """
    if n > MAX_ENUMERATION_N:
        raise EnumerationSizeError(f"enumeration limited to n <= {MAX_ENUMERATION_N}, got {n}")
    out: Counter = Counter()
    for signs in _sign_paths(n):
        full = np.hstack([np.full((len(signs), 1), sigma0, dtype=np.int8), signs])
        prev, cur = full[:, :-1], full[:, 1:]
        n_pp = ((prev == 1) & (cur == 1)).sum(axis=1)
        n_pm = ((prev == 1) & (cur == -1)).sum(axis=1)
        n_mp = ((prev == -1) & (cur == 1)).sum(axis=1)
        n_mm = ((prev == -1) & (cur == -1)).sum(axis=1)
        x = cur.sum(axis=1, dtype=np.int64)
        keys, counts = np.unique(np.stack([x, n_pp, n_pm, n_mp, n_mm], axis=1), axis=0, return_counts=True)
        for key, count in zip(keys, counts):
            out[tuple(int(v) for v in key)] += int(count)
    return out


def enumerate_counts(n: int, sigma0: int) -> Counter:
    """Number of walks per (x, k_plus, k_minus) for a fixed pre-walk direction."""
    out: Counter = Counter()
    for (x, _, n_pm, n_mp, _), mult in transition_signatures(n, sigma0).items():
        out[(x, n_pm, n_mp)] += mult
    return out


def enumerate_segments(n: int, sigma1: int) -> Counter:
    """Number of walks per (x, s) with first step ``sigma1`` and ``s`` segments."""
    out: Counter = Counter()
    for signs in _sign_paths(n, first=sigma1):
        x = signs.sum(axis=1, dtype=np.int64)
        s = 1 + (signs[:, 1:] != signs[:, :-1]).sum(axis=1)
        keys, counts = np.unique(np.stack([x, s], axis=1), axis=0, return_counts=True)
        for key, count in zip(keys, counts):
            out[(int(key[0]), int(key[1]))] += int(count)
    return out


def _sigma0_weights(params: ModelParams, sigma0_mode: str, exact: bool) -> dict[int, object]:
    if sigma0_mode == "forced_plus":
        return {1: 1, -1: 0}
    if sigma0_mode == "forced_minus":
        return {1: 0, -1: 1}
    if sigma0_mode != "stationary":
        raise ValueError(f"unknown sigma0 mode {sigma0_mode!r}")
    if exact:
        eps_r, eps_l = params.exact()
        denom = 2 - eps_r - eps_l
        return {1: (1 - eps_l) / denom, -1: (1 - eps_r) / denom}
    stat = stationary_dist(params)
    return {1: float(stat.p_plus), -1: float(stat.p_minus)}


def enumerate_exact(
    n: int, params: ModelParams, sigma0_mode: str = "stationary", exact: bool | None = None
) -> JointPmf:
    """Joint table by summing the probability of every one of the 2**n paths.

    ``exact`` selects rational arithmetic; by default it is used when both
    parameters are given as ``Fraction``.  The table's ``by_sigma0`` holds
    the two conditional tables.
    """
    if exact is None:
        exact = isinstance(params.eps_R, Fraction) and isinstance(params.eps_L, Fraction)
    weights = _sigma0_weights(params, sigma0_mode, exact)
    if exact:
        eps_r, eps_l = params.exact()
    else:
        eps_r, eps_l = params.floats()
    factors = (eps_r, 1 - eps_r, 1 - eps_l, eps_l)  # ++, +-, -+, --

    conditional = {}
    for sigma0 in (1, -1):
        if exact:
            table: dict = {}
            for (x, *moves), mult in transition_signatures(n, sigma0).items():
                k = moves[1] + moves[2]
                path_prob = math.prod(f**m for f, m in zip(factors, moves))
                table[(x, k)] = table.get((x, k), 0) + mult * path_prob
            conditional[sigma0] = JointPmf.from_exact(n, params, table)
        else:
            prob = np.zeros((n + 1, n + 1))
            for (x, *moves), mult in transition_signatures(n, sigma0).items():
                k = moves[1] + moves[2]
                prob[(x + n) // 2, k] += mult * math.prod(f**m for f, m in zip(factors, moves))
            conditional[sigma0] = JointPmf.from_prob(n, params, prob)

    if exact:
        keys = set(conditional[1].exact) | set(conditional[-1].exact)
        table = {
            key: weights[1] * conditional[1].exact.get(key, 0)
            + weights[-1] * conditional[-1].exact.get(key, 0)
            for key in keys
        }
        table = {key: value for key, value in table.items() if value}
        return JointPmf.from_exact(n, params, table, by_sigma0=conditional)
    prob = weights[1] * conditional[1].prob + weights[-1] * conditional[-1].prob
    return JointPmf.from_prob(n, params, prob, by_sigma0=conditional)


# --- Monte Carlo ---------------------------------------------------------------


@dataclass(frozen=True)
class SimConfig:
    n: int
    num_walks: int
    seed: int
    params: ModelParams
    sigma0_mode: str = "stationary"
    batch_size: int = 1 << 15

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.num_walks < 1:
            raise ValueError("num_walks must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.sigma0_mode not in SIGMA0_MODES:
            raise ValueError(f"unknown sigma0 mode {self.sigma0_mode!r}")


@dataclass(frozen=True, eq=False)
class SimResult:
    """Simulated walks as parallel arrays; ``paths`` holds sigma_0..sigma_n if kept."""

    n: int
    sigma0: np.ndarray
    x: np.ndarray
    k: np.ndarray
    paths: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.x)

    def outcomes(self):
        for s0, x, k in zip(self.sigma0.tolist(), self.x.tolist(), self.k.tolist()):
            yield WalkOutcome(s0, x, k, self.n)

    def empirical(self) -> EmpiricalDist:
        keys, counts = np.unique(np.stack([self.x, self.k], axis=1), axis=0, return_counts=True)
        table = {(int(x), int(k)): int(c) for (x, k), c in zip(keys, counts)}
        return EmpiricalDist(self.n, table, len(self))


@dataclass(frozen=True)
class EmpiricalDist:
    n: int
    counts: dict[tuple[int, int], int]
    total: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not add up to total")

    def to_pmf(self) -> JointPmf:
        prob = np.zeros((self.n + 1, self.n + 1))
        for (x, k), c in self.counts.items():
            prob[(x + self.n) // 2, k] = c / self.total
        return JointPmf.from_prob(self.n, None, prob)


def _simulate_batch(rng: np.random.Generator, n, size, params, sigma0_mode, keep_paths):
    eps_r, eps_l = params.floats()
    if sigma0_mode == "stationary":
        p_plus = float(stationary_dist(params).p_plus)
        sigma = np.where(rng.random(size) < p_plus, 1, -1).astype(np.int8)
    else:
        sigma = np.full(size, 1 if sigma0_mode == "forced_plus" else -1, dtype=np.int8)
    sigma0 = sigma.copy()
    x = np.zeros(size, dtype=np.int64)
    k = np.zeros(size, dtype=np.int64)
    paths = np.empty((size, n + 1), dtype=np.int8) if keep_paths else None
    if keep_paths:
        paths[:, 0] = sigma
    u = rng.random((n, size))
    for j in range(n):
        stay = u[j] < np.where(sigma == 1, eps_r, eps_l)
        k += ~stay
        sigma = np.where(stay, sigma, -sigma).astype(np.int8)
        x += sigma
        if keep_paths:
            paths[:, j + 1] = sigma
    return sigma0, x, k, paths


def simulate(config: SimConfig, keep_paths: bool = False) -> SimResult:
    """Draw ``config.num_walks`` independent walks.

    Walks are produced in batches; batch ``i`` uses its own stream spawned
    from ``config.seed``, so results do not depend on how batches are
    scheduled and the whole output is a deterministic function of the config.
    """
    root = np.random.SeedSequence(config.seed)
    n_batches = -(-config.num_walks // config.batch_size)
    streams = root.spawn(n_batches)
    parts = []
    for i, stream in enumerate(streams):
        size = min(config.batch_size, config.num_walks - i * config.batch_size)
        rng = np.random.Generator(np.random.PCG64(stream))
        parts.append(_simulate_batch(rng, config.n, size, config.params, config.sigma0_mode, keep_paths))
    sigma0, x, k, paths = (
        np.concatenate([p[i] for p in parts]) if parts[0][i] is not None else None for i in range(4)
    )
    return SimResult(config.n, sigma0, x, k, paths)


def reversals_from_path(path) -> int:
    """k from a stored sign sequence sigma_0..sigma_n."""
    path = np.asarray(path, dtype=np.int64)
    return int((1 - path[:-1] * path[1:]).sum() // 2)


# --- CSV ---------------------------------------------------------------------

OUTCOME_COLUMNS = ("sigma0", "x", "k")


def outcomes_to_csv(result: SimResult, path=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(OUTCOME_COLUMNS)
    writer.writerows(zip(result.sigma0.tolist(), result.x.tolist(), result.k.tolist()))
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def outcomes_from_csv(source, n: int) -> SimResult:
    """Read an outcome CSV (``sigma0,x,k``).  The step count is not stored in the file."""
    text = _read_text(source)
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != OUTCOME_COLUMNS:
        raise ValueError(f"expected columns {','.join(OUTCOME_COLUMNS)}, got {reader.fieldnames}")
    rows = [(int(r["sigma0"]), int(r["x"]), int(r["k"])) for r in reader]
    arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
    s0, x, k = arr.T
    bad = (np.abs(s0) != 1) | (np.abs(x) > n) | ((n - x) % 2 != 0) | (k < 0) | (k > n)
    if bad.any():
        i = int(np.argmax(bad))
        raise ValueError(f"row {i + 1} is not a valid {n}-step outcome: {rows[i]}")
    return SimResult(n, arr[:, 0].astype(np.int8), arr[:, 1], arr[:, 2])


def empirical_to_csv(emp: EmpiricalDist, path=None) -> str:
    """Same schema as a probability table plus a ``count`` column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "x", "k", "prob", "log_prob", "count"])
    for (x, k) in sorted(emp.counts):
        c = emp.counts[(x, k)]
        p = c / emp.total
        writer.writerow([emp.n, x, k, format_float(p), format_float(math.log(p)), c])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text
