"""Command-line front end.

Subcommands: ``pmf``, ``moments``, ``simulate``, ``estimate``, ``figure1``.
Results go to ``--output`` if given, otherwise to ``$PRWALK_OUTPUT_DIR`` as
``<subcommand>.<format>`` if that variable is set, otherwise to stdout.

Exit codes: 0 success, 2 usage or invalid parameters, 3 I/O failure,
4 inadmissible data for estimation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from prwalk import __version__
from prwalk.exact import MODES, closed_form_pmf, delta_prob
from prwalk.expfam import NoSolutionError, from_thermo
from prwalk.genfunc import mean_k, mean_x
from prwalk.inference import InadmissibleStatisticsError, SampleStats, estimate_confidence, estimate_params
from prwalk.model import ModelParams, ParameterError
from prwalk.oracle import SIGMA0_MODES, SimConfig, outcomes_from_csv, outcomes_to_csv, simulate
from prwalk.table import format_float, pmf_to_csv, pmf_to_json

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INADMISSIBLE = 0, 2, 3, 4
OUTPUT_DIR_ENV = "PRWALK_OUTPUT_DIR"

# exact rational tables grow quickly; beyond this use the float modes
MAX_EXACT_N = 120
# the moments command tabulates the odd-reversal probability up to this n
MAX_DELTA_N = 2000


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    eps_r: str | None = None
    eps_l: str | None = None
    n: int | None = None
    output_path: str | None = None
    output_format: str = "csv"
    seed: int = 0
    num_walks: int = 10_000
    precision_mode: str | None = None

    def params(self) -> ModelParams:
        if self.eps_r is None or self.eps_l is None:
            raise UsageError("--eps-r and --eps-l are required")
        if self.precision_mode == "exact":
            try:
                return ModelParams(Fraction(self.eps_r), Fraction(self.eps_l))
            except ValueError as exc:
                raise UsageError(f"exact mode needs rational parameters: {exc}") from exc
        try:
            return ModelParams(float(self.eps_r), float(self.eps_l))
        except (TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from exc


def _emit(text: str, config: CliConfig) -> None:
    path = config.output_path
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / f"{config.subcommand}.{config.output_format}"
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text)


def cmd_pmf(config: CliConfig) -> int:
    params = config.params()
    n = config.n
    if config.precision_mode == "exact" and n > MAX_EXACT_N:
        raise UsageError(f"--precision-mode exact is limited to n <= {MAX_EXACT_N}")
    pmf = closed_form_pmf(n, params, config.precision_mode)
    if config.output_format == "json":
        text = pmf_to_json(pmf)
    else:
        text = pmf_to_csv(pmf)
    _emit(text, config)
    defect = (sum(pmf.exact.values()) - 1) if pmf.exact is not None else pmf.total() - 1.0
    print(f"normalization defect: {float(defect):.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_moments(config: CliConfig) -> int:
    params = config.params()
    n = config.n
    result = {
        "n": n,
        "eps_R": float(params.eps_R),
        "eps_L": float(params.eps_L),
        "mean_x": mean_x(n, params),
        "mean_k": mean_k(n, params),
    }
    if n <= MAX_DELTA_N:
        result["delta"] = delta_prob(closed_form_pmf(n, params))
    if config.output_format == "json":
        text = json.dumps(result, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result)
        writer.writerow([v if isinstance(v, int) else format_float(v) for v in result.values()])
        text = buf.getvalue()
    _emit(text, config)
    return EXIT_OK


def cmd_simulate(config: CliConfig, sigma0_mode: str) -> int:
    if config.output_format != "csv":
        raise UsageError("simulate only writes CSV")
    sim = SimConfig(config.n, config.num_walks, config.seed, config.params(), sigma0_mode)
    _emit(outcomes_to_csv(simulate(sim)), config)
    return EXIT_OK


def cmd_estimate(config: CliConfig, input_path: str, resamples: int) -> int:
    outcomes = outcomes_from_csv(Path(input_path), config.n)
    stats = SampleStats.from_arrays(config.n, outcomes.x, outcomes.k)
    est = estimate_params(stats)
    result = {
        "n": stats.n,
        "num_walks": stats.num_walks,
        "mean_x_per_n": stats.mean_x_per_n,
        "mean_k_per_n": stats.mean_k_per_n,
        "eps_R": est.eps_R,
        "eps_L": est.eps_L,
    }
    if resamples > 0:
        boot = estimate_confidence(outcomes, resamples=resamples, seed=config.seed)
        result["eps_R_interval"] = list(boot.eps_R_interval)
        result["eps_L_interval"] = list(boot.eps_L_interval)
        result["skipped_resamples"] = boot.skipped
    _emit(json.dumps(result, indent=1) + "\n", config)
    return EXIT_OK


def figure1_rows(betas, f_min: float, f_max: float, f_step: float):
    """Rows (beta, F, eps_R, eps_L, mean_x_per_n, flag) of the force-extension curves."""
    count = int(round((f_max - f_min) / f_step)) + 1
    grid = f_min + f_step * np.arange(count)
    for beta in betas:
        for F in grid:
            F = float(round(F, 12))
            try:
                params = from_thermo(beta, F)
            except NoSolutionError:
                yield beta, F, None, None, None, "no_solution"
                continue
            yield beta, F, params.eps_R, params.eps_L, mean_x(1, params), "ok"


def cmd_figure1(config: CliConfig, betas, f_min, f_max, f_step) -> int:
    if f_step <= 0 or f_max < f_min:
        raise UsageError("need f_step > 0 and f_max >= f_min")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["beta", "F", "eps_R", "eps_L", "mean_x_per_n", "flag"])
    for beta, F, *values, flag in figure1_rows(betas, f_min, f_max, f_step):
        cells = ["" if v is None else format_float(v) for v in values]
        writer.writerow([format_float(beta), format_float(F), *cells, flag])
    _emit(buf.getvalue(), config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prwalk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def model_args(p, need_n=True):
        p.add_argument("--eps-r", required=True, help="persistence probability after a right step")
        p.add_argument("--eps-l", required=True, help="persistence probability after a left step")
        if need_n:
            p.add_argument("--n", type=int, required=True, help="number of steps")

    def output_args(p, formats=("csv", "json")):
        p.add_argument("--output", "-o", dest="output_path")
        p.add_argument("--format", dest="output_format", choices=formats, default="csv")

    p = sub.add_parser("pmf", help="joint table of (x, k)")
    model_args(p)
    output_args(p)
    p.add_argument("--precision-mode", choices=MODES, default=None,
                   help="default: linear up to n=300, log beyond")

    p = sub.add_parser("moments", help="mean position and reversal count")
    model_args(p)
    output_args(p)

    p = sub.add_parser("simulate", help="Monte Carlo outcomes as CSV (sigma0,x,k)")
    model_args(p)
    output_args(p, formats=("csv",))
    p.add_argument("--num-walks", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma0-mode", choices=SIGMA0_MODES, default="stationary")

    p = sub.add_parser("estimate", help="moment estimates from an outcome CSV")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--n", type=int, required=True, help="steps per walk in the input")
    p.add_argument("--resamples", type=int, default=0, help="bootstrap resamples (0: none)")
    p.add_argument("--seed", type=int, default=0)
    output_args(p, formats=("json",))
    p.set_defaults(output_format="json")

    p = sub.add_parser("figure1", help="mean_x/n against force F for fixed beta")
    p.add_argument("--beta", type=float, action="append", help="repeatable; default -1 and 1")
    p.add_argument("--f-min", type=float, default=-3.0)
    p.add_argument("--f-max", type=float, default=3.0)
    p.add_argument("--f-step", type=float, default=0.05)
    output_args(p, formats=("csv",))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = CliConfig.__dataclass_fields__
    config = CliConfig(**{k: v for k, v in vars(args).items() if k in fields and v is not None})
    try:
        if config.n is not None and config.n < 1:
            raise UsageError("--n must be at least 1")
        if args.subcommand == "pmf":
            return cmd_pmf(config)
        if args.subcommand == "moments":
            return cmd_moments(config)
        if args.subcommand == "simulate":
            if config.num_walks < 1:
                raise UsageError("--num-walks must be at least 1")
            return cmd_simulate(config, args.sigma0_mode)
        if args.subcommand == "estimate":
            return cmd_estimate(config, args.input, args.resamples)
        if args.subcommand == "figure1":
            return cmd_figure1(config, args.beta or [-1.0, 1.0], args.f_min, args.f_max, args.f_step)
    except (UsageError, ParameterError) as exc:
        parser.print_usage(sys.stderr)
        print(f"prwalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InadmissibleStatisticsError as exc:
        print(f"prwalk: inadmissible statistics: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except OSError as exc:
        print(f"prwalk: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # malformed input data (e.g. a bad outcome CSV)
        print(f"prwalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown subcommand {args.subcommand}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
