"""Monte Carlo against the exact law: TV distance and means versus sample size."""

import argparse
import math
from dataclasses import dataclass

from prwalk.exact import closed_form_pmf
from prwalk.genfunc import mean_k, mean_x
from prwalk.model import ModelParams
from prwalk.oracle import SimConfig, simulate
from prwalk.table import total_variation


@dataclass(frozen=True)
class Config:
    eps_r: float = 0.7
    eps_l: float = 0.4
    n: int = 20
    sizes: tuple[int, ...] = (10_000, 100_000, 1_000_000)
    seed: int = 12345


def run(cfg: Config) -> None:
    params = ModelParams(cfg.eps_r, cfg.eps_l)
    exact = closed_form_pmf(cfg.n, params)
    # expected TV of a multinomial sample ~ sum sqrt(p (1 - p) / (2 pi m))
    spread = sum(math.sqrt(p * (1 - p)) for _, _, p, _ in exact.entries())
    print(f"n={cfg.n} params=({cfg.eps_r}, {cfg.eps_l})  exact means x={mean_x(cfg.n, params):.6f} k={mean_k(cfg.n, params):.6f}")
    print("walks      tv        tv_expected  mean_x      z_x     mean_k      z_k")
    for m in cfg.sizes:
        res = simulate(SimConfig(cfg.n, m, cfg.seed, params))
        tv = total_variation(res.empirical().to_pmf(), exact)
        zx = (res.x.mean() - mean_x(cfg.n, params)) / (res.x.std(ddof=1) / math.sqrt(m))
        zk = (res.k.mean() - mean_k(cfg.n, params)) / (res.k.std(ddof=1) / math.sqrt(m))
        expected = spread / math.sqrt(2 * math.pi * m)
        print(f"{m:<10d} {tv:.3e} {expected:.3e}    {res.x.mean():<11.5f} {zx:+.2f}   {res.k.mean():<11.5f} {zk:+.2f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--eps-r", type=float, default=Config.eps_r)
    parser.add_argument("--eps-l", type=float, default=Config.eps_l)
    parser.add_argument("--n", type=int, default=Config.n)
    parser.add_argument("--sizes", type=int, nargs="+", default=Config.sizes)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    run(Config(args.eps_r, args.eps_l, args.n, tuple(args.sizes), args.seed))


if __name__ == "__main__":
    main()
