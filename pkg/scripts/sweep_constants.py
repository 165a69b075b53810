"""How much slack do the hypothesis constants leave?

Runs the eps sweep for each instance kind and prints, per eps, the largest
realized distance as a fraction of eps. Ratios far below 1 mean the
guaranteed radius is loose for generated instances. Writes the raw rows to
CSV when --out is given.
"""

import argparse
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from bpbkit.cli import sweep_csv, sweep_rows


@dataclass
class SweepConfig:
    kinds: tuple = ("pair-l1", "operator-l1", "operator-c0")
    n: int = 10
    eps: list = field(default_factory=lambda: [0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9])
    trials: int = 50
    seed: int = 0
    field_mode: str = "complex"


def summarize(cfg: SweepConfig):
    for kind in cfg.kinds:
        worst = defaultdict(float)
        failed = 0
        for row in sweep_rows(kind, cfg.n, cfg.eps, cfg.trials, cfg.seed, cfg.field_mode):
            worst[row["eps"]] = max(worst[row["eps"]], float(row["max_ratio"]))
            failed += row["passed"] == 0
        print(f"{kind}: {cfg.trials} trials per eps, n = {cfg.n}, failed verdicts {failed}")
        for eps, r in worst.items():
            print(f"  eps {float(eps):<5g} max dist/eps {r:.4f}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="complex", choices=["real", "complex"])
    p.add_argument("--out", type=Path, default=None, help="directory for one CSV per kind")
    args = p.parse_args()
    cfg = SweepConfig(n=args.n, trials=args.trials, seed=args.seed, field_mode=args.field)
    summarize(cfg)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for kind in cfg.kinds:
            text = sweep_csv(kind, cfg.n, cfg.eps, cfg.trials, cfg.seed, cfg.field_mode)
            (args.out / f"sweep_{kind}.csv").write_text(text)


if __name__ == "__main__":
    main()
