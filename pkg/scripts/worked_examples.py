"""Reproduce the worked examples shipped in games/.

    python3 scripts/worked_examples.py [--complete]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from phsgames import (
    Credit,
    build_phs_arena,
    capped_energy_parity_oracle,
    compute_values,
    encode_lex_to_mpg,
    load_game,
    reduce_extended_to_bounding,
    reduce_parity_to_extended,
    solve_arbitrary_credit,
    solve_bounding,
    solve_lex_energy,
)
from phsgames.halfspaces import HalfSpaceRep
from phsgames.phs import product_id

GAMES = Path(__file__).resolve().parent.parent / "games"


@dataclass
class Config:
    complete: bool = False  # also solve fig1 over the complete half-space set
    cap: int = 8


def _who(ws) -> str:
    return ", ".join(f"{v}:{w}" for v, w in ws.items())


def main(cfg: Config) -> None:
    g1 = load_game(GAMES / "fig1.game")
    g5 = load_game(GAMES / "fig5.game")

    enc = encode_lex_to_mpg(g1)
    print("fig1 as a lexicographic energy game")
    print(f"  encoded weights {list(enc.weights)}, multiplier {enc.multipliers[0]}")
    print(f"  values per round {sorted({str(x) for x in compute_values(enc.as_graph())})}")
    print(f"  winners {_who(dict(zip((v.id for v in g1.vertices), solve_lex_energy(g1).winners)))}")

    hl = HalfSpaceRep.of((1, 1), (-1, 1))
    hr = HalfSpaceRep.of((1, 1), (1, -1))
    a = build_phs_arena(g1, 1)
    pairs = [(product_id("A", hl), product_id("vR", hr)), (product_id("vL", hl), product_id("L1", hl))]
    print("fig1 product arena (norm bound 1)")
    for u, v in pairs:
        s, t = a.index[u], a.index[v]
        k = next(k for k in a.out[s] if a.dst[k] == t)
        print(f"  {u} -> {v}: {a.translated_weight(k)}")

    for B in (1, None) if cfg.complete else (1,):
        t0 = time.perf_counter()
        res = solve_bounding(g1, B)
        label = "complete" if res.complete else f"norm bound {B}"
        moves = {g1.vertices[v].id: g1.vertices[g1.edges[k].dst].id for v, k in res.p2_strategy.items()}
        print(f"fig1 bounding game ({label}, {time.perf_counter() - t0:.2f}s)")
        print(f"  winners {_who(dict(zip((v.id for v in g1.vertices), res.winners)))}")
        print(f"  oblivious Player-2 strategy {moves}")

    res = solve_arbitrary_credit(g1, 1)
    print(f"fig1 energy game, arbitrary credit: {_who(dict(zip((v.id for v in g1.vertices), res.winners)))}")

    ext, c1 = reduce_parity_to_extended(g5)
    bnd, c2 = reduce_extended_to_bounding(ext)
    print(f"fig5 extended graph: {ext.n} vertices, {len(ext.edges)} edges, dimension {ext.dim}")
    print(f"fig5 bounding graph: {bnd.n} vertices, {len(bnd.edges)} edges; bounds hold: {c1.holds() and c2.holds()}")
    t0 = time.perf_counter()
    res = solve_arbitrary_credit(g5, 1)
    print(f"fig5 energy parity, arbitrary credit ({time.perf_counter() - t0:.2f}s): "
          f"{_who(dict(zip((v.id for v in g5.vertices), res.winners)))}")
    ws = capped_energy_parity_oracle(g5, Credit((2,)), cfg.cap)
    print(f"fig5 capped oracle, credit 2, cap {cfg.cap}: {_who(dict(zip((v.id for v in g5.vertices), ws)))}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--complete", action="store_true")
    p.add_argument("--cap", type=int, default=Config.cap)
    main(Config(**vars(p.parse_args())))
