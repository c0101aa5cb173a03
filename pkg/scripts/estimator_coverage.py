"""Coverage of bootstrap percentile intervals for the moment estimator."""

import argparse
from dataclasses import dataclass

import numpy as np

from prwalk.inference import InadmissibleStatisticsError, estimate_confidence
from prwalk.model import ModelParams
from prwalk.oracle import SimConfig, simulate


@dataclass(frozen=True)
class Config:
    eps_r: float = 0.6
    eps_l: float = 0.6
    n: int = 50
    num_walks: int = 400
    datasets: int = 200
    resamples: int = 400
    seed: int = 2718


def run(cfg: Config) -> dict[str, float]:
    truth = (cfg.eps_r, cfg.eps_l)
    params = ModelParams(*truth)
    covered = np.zeros(2)
    widths = []
    failed = 0
    for i, child in enumerate(np.random.SeedSequence(cfg.seed).generate_state(cfg.datasets)):
        res = simulate(SimConfig(cfg.n, cfg.num_walks, int(child), params))
        try:
            boot = estimate_confidence(res, resamples=cfg.resamples, seed=i)
        except InadmissibleStatisticsError:
            failed += 1
            continue
        intervals = (boot.eps_R_interval, boot.eps_L_interval)
        covered += [lo <= t <= hi for (lo, hi), t in zip(intervals, truth)]
        widths.append([hi - lo for lo, hi in intervals])
    used = cfg.datasets - failed
    w = np.mean(widths, axis=0)
    return {
        "coverage_R": covered[0] / used,
        "coverage_L": covered[1] / used,
        "mean_width_R": w[0],
        "mean_width_L": w[1],
        "inadmissible_datasets": failed,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    args = parser.parse_args()
    for key, value in run(Config(**vars(args))).items():
        print(f"{key:>22s}  {value:.4g}")


if __name__ == "__main__":
    main()
