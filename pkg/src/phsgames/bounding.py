"""Bounding games: Player 1 wins iff all prefix totals stay bounded.

Solving goes through the perfect half space game on the same graph; the
Player-2 strategy is made half-space oblivious and projected back.  A
box-safety oracle gives one-sided evidence at small bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import Lasso, MultiWeightedGameGraph, ResourceCapError, path_weight
from .halfspaces import HalfSpaceRep
from .phs import PHSResult, make_oblivious, solve_phs_game

PLAYER1, PLAYER2 = 1, 2
DEFAULT_STATE_CAP = 2 * 10**7


@dataclass
class BoundingResult:
    winners: list[int]
    # base Player-2 vertex -> edge index
    p2_strategy: dict[int, int]
    phs: PHSResult
    caveats: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.phs.complete


def solve_bounding(
    g: MultiWeightedGameGraph,
    B: int | None = None,
    keep: Callable[[HalfSpaceRep], bool] | None = None,
    engine: str = "strategy-improvement",
) -> BoundingResult:
    res = solve_phs_game(g, B, keep, engine)
    a = res.arena
    region = {p for p, w in enumerate(res.product_winners) if w == PLAYER2}
    tau = make_oblivious(a, res.p2_strategy, region)
    return BoundingResult(res.winners, tau.project(a), res, list(res.caveats))


def _shifted(arr: np.ndarray, w) -> np.ndarray:
    """``out[..., i] = arr[..., i + w]`` on the box, False where that leaves it."""
    out = np.zeros_like(arr)
    src, dst = [], []
    for x, L in zip(w, arr.shape):
        if abs(x) >= L:
            return out
        src.append(slice(max(0, x), L + min(0, x)))
        dst.append(slice(max(0, -x), L - max(0, x)))
    out[tuple(dst)] = arr[tuple(src)]
    return out


def bounded_safety_oracle(
    g: MultiWeightedGameGraph,
    bound: int,
    fixed_p2: dict[int, int] | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[int]:
    """Winner of the game where Player 2 wins once a prefix total leaves
    ``[-bound, bound]^d``, from total zero at each vertex.

    A Player-1 win here implies a Player-1 win of the bounding game.
    ``fixed_p2`` (vertex -> edge) removes every other Player-2 move.
    """
    if g.extended:
        raise ValueError("the safety oracle needs a graph without omega weights")
    if bound < 1:
        raise ValueError("bound must be positive")
    L = 2 * bound + 1
    if g.n * L**g.dim > state_cap:
        raise ResourceCapError(f"{g.n * L ** g.dim} safety states exceed the cap {state_cap}")
    moves = []
    for v in range(g.n):
        ks = g.out_edges[v]
        if fixed_p2 is not None and g.owners[v] == PLAYER2 and v in fixed_p2:
            ks = [fixed_p2[v]]
        moves.append([(g.edges[k].dst, g.edges[k].weight) for k in ks])
    safe = np.ones((g.n,) + (L,) * g.dim, dtype=bool)
    while True:
        new = np.empty_like(safe)
        for v in range(g.n):
            parts = [_shifted(safe[t], w) for t, w in moves[v]]
            if g.owners[v] == PLAYER1:
                new[v] = np.logical_or.reduce(parts)
            else:
                new[v] = np.logical_and.reduce(parts)
        new &= safe
        if np.array_equal(new, safe):
            break
        safe = new
    centre = (bound,) * g.dim
    return [PLAYER1 if safe[(v,) + centre] else PLAYER2 for v in range(g.n)]


def lasso_bounding_winner(g: MultiWeightedGameGraph, lasso: Lasso) -> int:
    """Player 1 wins iff the cycle total is the zero vector."""
    _, cyc = lasso.edges(g)
    return PLAYER1 if not any(path_weight(g, cyc)) else PLAYER2
