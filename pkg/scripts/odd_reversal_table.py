"""Tabulate the probability of an odd reversal count, which has no closed form.

Also prints the conditional versions given the initial direction and the
residual of the identity p_+ <Delta>^+ = p_- <Delta>^-.
"""

import argparse
from dataclasses import dataclass

from prwalk.exact import closed_form_pmf, delta_prob, delta_prob_conditional
from prwalk.model import ModelParams, stationary_dist


@dataclass(frozen=True)
class Config:
    eps_r: float = 0.7
    eps_l: float = 0.4
    steps: tuple[int, ...] = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000)


def run(cfg: Config) -> None:
    params = ModelParams(cfg.eps_r, cfg.eps_l)
    s = stationary_dist(params)
    print("n,delta,delta_plus,delta_minus,identity_residual")
    for n in cfg.steps:
        pmf = closed_form_pmf(n, params)
        d, dp, dm = delta_prob(pmf), delta_prob_conditional(pmf, 1), delta_prob_conditional(pmf, -1)
        print(f"{n},{d:.12g},{dp:.12g},{dm:.12g},{s.p_plus * dp - s.p_minus * dm:.2e}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps-r", type=float, default=Config.eps_r)
    parser.add_argument("--eps-l", type=float, default=Config.eps_l)
    parser.add_argument("--steps", type=int, nargs="+", default=Config.steps)
    args = parser.parse_args()
    run(Config(args.eps_r, args.eps_l, tuple(args.steps)))


if __name__ == "__main__":
    main()
