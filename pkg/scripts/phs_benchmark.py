"""Size and solve time of the half-space product arena.

Prints one CSV row per (vertices, dimension, norm bound) cell.

    python3 scripts/phs_benchmark.py --vertices 4 6 8 --dims 2 --bounds 1 2 3
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from dataclasses import dataclass, field

from phsgames.graph import ResourceCapError, random_game
from phsgames.phs import build_phs_arena, solve_phs_game


@dataclass
class Config:
    vertices: list[int] = field(default_factory=lambda: [4, 6, 8])
    dims: list[int] = field(default_factory=lambda: [2])
    bounds: list[int] = field(default_factory=lambda: [1, 2, 3])
    repeats: int = 5
    seed: int = 0


def main(cfg: Config) -> None:
    out = csv.writer(sys.stdout)
    out.writerow(["vertices", "dim", "bound", "half_spaces", "product_vertices", "product_edges", "median_s", "p2_share"])
    for n in cfg.vertices:
        for d in cfg.dims:
            for B in cfg.bounds:
                times, shares, size = [], [], None
                try:
                    for r in range(cfg.repeats):
                        g = random_game(n, d, 1, cfg.seed + r)
                        t0 = time.perf_counter()
                        a = build_phs_arena(g, B)
                        res = solve_phs_game(a)
                        times.append(time.perf_counter() - t0)
                        shares.append(res.winners.count(2) / g.n)
                        size = (a.m, a.n, len(a.src))
                except ResourceCapError as exc:
                    out.writerow([n, d, B, "cap", "", "", "", str(exc)])
                    continue
                out.writerow([n, d, B, *size, f"{statistics.median(times):.3f}", f"{statistics.mean(shares):.2f}"])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--vertices", type=int, nargs="+", default=Config().vertices)
    p.add_argument("--dims", type=int, nargs="+", default=Config().dims)
    p.add_argument("--bounds", type=int, nargs="+", default=Config().bounds)
    p.add_argument("--repeats", type=int, default=Config.repeats)
    p.add_argument("--seed", type=int, default=Config.seed)
    main(Config(**vars(p.parse_args())))
