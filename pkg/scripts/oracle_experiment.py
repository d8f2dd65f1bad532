"""Oblivious Player-2 strategies and the box-safety oracle on random games.

For each random two-dimensional game the bounding solver runs over a
restricted half-space set; its Player-2 strategy is made oblivious, projected
to the base graph and then played against Player 1 in box-safety games.

    python3 scripts/oracle_experiment.py --instances 200 --bounds 8 16 32 64
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, field

from phsgames.bounding import bounded_safety_oracle, solve_bounding
from phsgames.graph import random_game


@dataclass
class Config:
    instances: int = 100
    max_vertices: int = 6
    dim: int = 2
    norm_bound: int = 1
    bounds: list[int] = field(default_factory=lambda: [8, 16, 32, 64])
    seed: int = 0


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    stats = {"p2_wins": 0, "p1_claims": 0, "p1_confirmed": 0, "contradictions": 0, "escapes": 0}
    t0 = time.perf_counter()
    for _ in range(cfg.instances):
        g = random_game(rng.randint(2, cfg.max_vertices), cfg.dim, 1, rng.randrange(10**9))
        res = solve_bounding(g, cfg.norm_bound)
        top = max(cfg.bounds)
        safe = bounded_safety_oracle(g, top)
        for v, w in enumerate(res.winners):
            if w == 2:
                stats["p2_wins"] += 1
                stats["contradictions"] += safe[v] == 1
            else:
                stats["p1_claims"] += 1
                stats["p1_confirmed"] += safe[v] == 1
        for b in cfg.bounds:
            fixed = bounded_safety_oracle(g, b, res.p2_strategy)
            stats["escapes"] += sum(1 for v, w in enumerate(res.winners) if w == 2 and fixed[v] == 1)
    for k, v in stats.items():
        print(f"{k:>15}: {v}")
    print(f"{cfg.instances} instances in {time.perf_counter() - t0:.1f}s")
    return 1 if stats["contradictions"] or stats["escapes"] else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=Config.instances)
    p.add_argument("--max-vertices", type=int, default=Config.max_vertices)
    p.add_argument("--dim", type=int, default=Config.dim)
    p.add_argument("--norm-bound", type=int, default=Config.norm_bound)
    p.add_argument("--bounds", type=int, nargs="+", default=Config().bounds)
    p.add_argument("--seed", type=int, default=Config.seed)
    raise SystemExit(main(Config(**vars(p.parse_args()))))
