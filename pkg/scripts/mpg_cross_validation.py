"""Cross-check the mean-payoff engines against exhaustive strategy enumeration.

    python3 scripts/mpg_cross_validation.py --count 500 --max-vertices 7
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from phsgames.graph import random_game
from phsgames.mpg import ENGINES, brute_force_mpg, brute_force_values, check_certificate, compute_values, solve_threshold


@dataclass
class Config:
    count: int = 300
    max_vertices: int = 6
    max_weight: int = 3
    seed: int = 0
    values: bool = False  # also compare exact values (slower)


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    timing = {e: 0.0 for e in ENGINES}
    brute = 0.0
    bad = 0
    for i in range(cfg.count):
        g = random_game(rng.randint(2, cfg.max_vertices), 1, rng.randint(1, cfg.max_weight), rng.randrange(10**9))
        t0 = time.perf_counter()
        want = brute_force_mpg(g)
        brute += time.perf_counter() - t0
        for e in ENGINES:
            t0 = time.perf_counter()
            res = solve_threshold(g, e)
            timing[e] += time.perf_counter() - t0
            if res.winners != want or not check_certificate(g, res):
                bad += 1
                print(f"disagreement on instance {i} ({e})")
        if cfg.values and compute_values(g) != brute_force_values(g):
            bad += 1
            print(f"value mismatch on instance {i}")
    print(f"{cfg.count} graphs, {bad} disagreements")
    print(f"brute force {brute:.2f}s; " + "; ".join(f"{e} {t:.2f}s" for e, t in timing.items()))
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--max-vertices", type=int, default=Config.max_vertices)
    p.add_argument("--max-weight", type=int, default=Config.max_weight)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--values", action="store_true")
    raise SystemExit(main(Config(**vars(p.parse_args()))))
