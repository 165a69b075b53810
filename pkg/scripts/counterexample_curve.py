"""Observed max |phi(x)| near (e_1, e_2^*) for the shift, against 2 eps.

The exact supremum over the sampled set is 1.5 eps - eps^2 / 2, reached at
x = (1 - eps/2) e_1 + (eps/2) e_2 with phi_1 = eps and phi_2 = 1.
"""

import argparse
from dataclasses import dataclass, field

from bpbkit.oracle import counterexample_demo


@dataclass
class CurveConfig:
    eps: list = field(default_factory=lambda: [0.01, 0.05, 0.1, 0.2, 0.25, 0.3, 0.4, 0.49])
    samples: int = 100_000
    seed: int = 42


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    args = p.parse_args()
    cfg = CurveConfig(samples=args.samples, seed=args.seed)
    print(f"{'eps':>6} {'observed':>10} {'supremum':>10} {'2 eps':>6}")
    for eps in cfg.eps:
        res = counterexample_demo(eps, samples=cfg.samples, seed=cfg.seed)
        print(f"{eps:6g} {res.max_abs_pair:10.6f} {1.5 * eps - eps**2 / 2:10.6f} {2 * eps:6g}")


if __name__ == "__main__":
    main()
