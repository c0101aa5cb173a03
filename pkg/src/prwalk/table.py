"""Dense (x, k) probability tables and their CSV/JSON serialization.

Row ``i`` of a table for ``n`` steps holds position ``x = 2 i - n``; column
``k`` holds ``k`` reversals.  Off-support cells carry probability 0 and log
probability ``-inf``.  Written files only contain support cells.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from prwalk.model import ModelParams

CSV_COLUMNS = ("n", "x", "k", "prob", "log_prob")


def format_float(value: float) -> str:
    # 17 significant digits round-trip every double
    return f"{value:.17g}"


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Joint law of end position and reversal count after ``n`` steps.

    ``by_sigma0`` optionally holds the two conditional tables given the
    pre-walk direction (keys +1 and -1), and ``exact`` optional rational
    values keyed by ``(x, k)``.
    """

    n: int
    params: ModelParams | None
    prob: np.ndarray
    log_prob: np.ndarray
    exact: dict[tuple[int, int], Fraction] | None = None
    by_sigma0: dict[int, JointPmf] | None = field(default=None, repr=False)

    @classmethod
    def from_prob(cls, n, params, prob, **kw) -> JointPmf:
        prob = np.asarray(prob, dtype=float)
        with np.errstate(divide="ignore"):
            log_prob = np.log(prob)
        return cls(n, params, _freeze(prob), _freeze(log_prob), **kw)

    @classmethod
    def from_log_prob(cls, n, params, log_prob, **kw) -> JointPmf:
        log_prob = np.asarray(log_prob, dtype=float)
        return cls(n, params, _freeze(np.exp(log_prob)), _freeze(log_prob), **kw)

    @classmethod
    def from_exact(cls, n, params, exact: dict[tuple[int, int], Fraction], **kw) -> JointPmf:
        prob = np.zeros((n + 1, n + 1))
        for (x, k), value in exact.items():
            prob[(x + n) // 2, k] = float(value)
        return cls.from_prob(n, params, prob, exact=dict(exact), **kw)

    @property
    def x_values(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    @property
    def k_values(self) -> np.ndarray:
        return np.arange(self.n + 1)

    @property
    def support(self) -> np.ndarray:
        return np.isfinite(self.log_prob)

    def __call__(self, x: int, k: int) -> float:
        if abs(x) > self.n or (x - self.n) % 2 or not 0 <= k <= self.n:
            return 0.0
        return float(self.prob[(x + self.n) // 2, k])

    def entries(self):
        """Yield ``(x, k, prob, log_prob)`` over support cells, x then k ascending."""
        for i, k in zip(*np.nonzero(self.support)):
            yield 2 * int(i) - self.n, int(k), float(self.prob[i, k]), float(self.log_prob[i, k])

    def total(self) -> float:
        return math.fsum(self.prob.ravel())

    def marginal_x(self) -> dict[int, float]:
        rows = self.prob.sum(axis=1)
        return {int(x): float(p) for x, p in zip(self.x_values, rows)}

    def marginal_k(self) -> dict[int, float]:
        cols = self.prob.sum(axis=0)
        return {int(k): float(p) for k, p in zip(self.k_values, cols)}

    def mean_x(self) -> float:
        return math.fsum((self.prob * self.x_values[:, None]).ravel())

    def mean_k(self) -> float:
        return math.fsum((self.prob * self.k_values[None, :]).ravel())

    def odd_k_mass(self) -> float:
        return math.fsum(self.prob[:, 1::2].ravel())

    def max_abs_diff(self, other: JointPmf) -> float:
        if other.n != self.n:
            raise ValueError("tables have different step counts")
        return float(np.max(np.abs(self.prob - other.prob)))


def marginal_x(pmf: JointPmf) -> dict[int, float]:
    return pmf.marginal_x()


def marginal_k(pmf: JointPmf) -> dict[int, float]:
    return pmf.marginal_k()


def total_variation(p: JointPmf, q: JointPmf) -> float:
    return 0.5 * float(np.abs(p.prob - q.prob).sum())


# --- serialization -------------------------------------------------------


def pmf_to_csv(pmf: JointPmf, path=None, extra: dict[str, dict] | None = None) -> str:
    """Write support rows as CSV; returns the text.

    ``extra`` maps additional column names to ``{(x, k): value}`` lookups.
    A ``prob_exact`` column is added automatically for rational tables.
    """
    columns = list(CSV_COLUMNS)
    extra = dict(extra or {})
    if pmf.exact is not None:
        extra = {"prob_exact": pmf.exact, **extra}
    columns += list(extra)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for x, k, p, lp in pmf.entries():
        row = [pmf.n, x, k, format_float(p), format_float(lp)]
        for lookup in extra.values():
            row.append(str(lookup.get((x, k), 0)))
        writer.writerow(row)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def _read_text(source) -> str:
    if isinstance(source, Path) or ("\n" not in str(source) and Path(source).is_file()):
        return Path(source).read_text()
    return source


def pmf_from_csv(source) -> JointPmf:
    """Read a table written by :func:`pmf_to_csv`; ``source`` is a path or CSV text."""
    text = _read_text(source)
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty table")
    n = int(rows[0]["n"])
    log_prob = np.full((n + 1, n + 1), -np.inf)
    exact = {} if "prob_exact" in rows[0] else None
    for row in rows:
        x, k = int(row["x"]), int(row["k"])
        log_prob[(x + n) // 2, k] = float(row["log_prob"])
        if exact is not None:
            exact[(x, k)] = Fraction(row["prob_exact"])
    return JointPmf.from_log_prob(n, None, log_prob, exact=exact)


def pmf_to_json(pmf: JointPmf, path=None) -> str:
    doc = {
        "n": pmf.n,
        "eps_R": None if pmf.params is None else float(pmf.params.eps_R),
        "eps_L": None if pmf.params is None else float(pmf.params.eps_L),
        "entries": [
            {"x": x, "k": k, "prob": p, "log_prob": lp} for x, k, p, lp in pmf.entries()
        ],
    }
    if pmf.exact is not None:
        for entry in doc["entries"]:
            entry["prob_exact"] = str(pmf.exact[(entry["x"], entry["k"])])
    text = json.dumps(doc, indent=1)
    if path is not None:
        Path(path).write_text(text)
    return text


def pmf_from_json(source) -> JointPmf:
    doc = json.loads(_read_text(source))
    n = doc["n"]
    params = None if doc.get("eps_R") is None else ModelParams(doc["eps_R"], doc["eps_L"])
    log_prob = np.full((n + 1, n + 1), -np.inf)
    for entry in doc["entries"]:
        log_prob[(entry["x"] + n) // 2, entry["k"]] = entry["log_prob"]
    return JointPmf.from_log_prob(n, params, log_prob)
