"""Cross-check the column-sum numerical radius against the sampling oracle."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from bpbkit.operators import numerical_radius_l1
from bpbkit.oracle import nr_grid_oracle_l1


@dataclass
class OracleConfig:
    sizes: tuple = (2, 3, 4)
    operators: int = 100
    resolution: int = 100_000
    seed: int = 0


def run(cfg: OracleConfig):
    rng = np.random.default_rng(cfg.seed)
    for n in cfg.sizes:
        t0 = time.perf_counter()
        shortfall, overshoot = [], []
        for i in range(cfg.operators):
            T = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            rep = nr_grid_oracle_l1(T, resolution=cfg.resolution, seed=i)
            nu = numerical_radius_l1(T)
            shortfall.append((nu - rep.estimate) / nu)
            overshoot.append(rep.estimate - nu)
        print(
            f"n = {n}: {cfg.operators} operators, max relative shortfall {max(shortfall):.3g}, "
            f"max overshoot {max(overshoot):.3g}, {time.perf_counter() - t0:.1f}s"
        )


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--operators", type=int, default=100)
    p.add_argument("--resolution", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    run(OracleConfig(operators=args.operators, resolution=args.resolution, seed=args.seed))


if __name__ == "__main__":
    main()
