"""Lexicographic energy games, solved through a one-dimensional encoding.

Component ``i`` of every weight is scaled so that it dominates everything
the later components can contribute along a simple cycle.  The encoded
total of a simple cycle then has the lexicographic sign of its vector
total, and the game becomes a mean-payoff threshold game.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import mpg
from .graph import OMEGA, Lasso, MultiWeightedGameGraph, lex_sign, path_weight

PLAYER1, PLAYER2 = 1, 2


@dataclass(frozen=True)
class EncodedGraph:
    source: MultiWeightedGameGraph
    weights: tuple[int, ...]
    # norms[i] is the norm of the partial encoding from component i+1 down to d
    norms: tuple[int, ...]
    multipliers: tuple[int, ...]

    def as_graph(self) -> MultiWeightedGameGraph:
        g = self.source
        edges = tuple(type(e)(e.src, e.dst, (w,)) for e, w in zip(g.edges, self.weights))
        return MultiWeightedGameGraph(1, g.vertices, edges, False, g.name)

    def arena(self) -> mpg.Arena:
        return mpg.Arena.from_graph(self.source, self.weights)


def encode_weights(vectors: Sequence[Sequence[int]], n: int, dim: int) -> tuple[list[int], list[int], list[int]]:
    """Fold ``dim``-vectors into integers; returns (weights, norms, multipliers)."""
    r = [w[dim - 1] for w in vectors]
    norms = [max((abs(x) for x in r), default=0)]
    mults = []
    for i in range(dim - 2, -1, -1):
        m = n * norms[0] + 1
        r = [w[i] * m + x for w, x in zip(vectors, r)]
        mults.insert(0, m)
        norms.insert(0, max((abs(x) for x in r), default=0))
    return r, norms, mults


def encode_lex_to_mpg(g: MultiWeightedGameGraph) -> EncodedGraph:
    if g.extended or any(x is OMEGA for e in g.edges for x in e.weight):
        raise ValueError("omega weights must be removed before the lexicographic encoding")
    r, norms, mults = encode_weights([e.weight for e in g.edges], g.n, g.dim)
    return EncodedGraph(g, tuple(r), tuple(norms), tuple(mults))


@dataclass
class LexEnergyResult:
    winners: list[int]
    strategy: dict[int, dict[int, int]]
    encoded: EncodedGraph

    def region(self, player: int) -> set[int]:
        return {v for v, w in enumerate(self.winners) if w == player}


def solve_lex_energy(g: MultiWeightedGameGraph | EncodedGraph, engine: str = "strategy-improvement") -> LexEnergyResult:
    """Player 1 wins exactly where Max wins the encoded threshold game.

    Strategies are returned as vertex -> edge index in ``g``.
    """
    enc = g if isinstance(g, EncodedGraph) else encode_lex_to_mpg(g)
    res = mpg.solve_threshold(enc.arena(), engine)
    return LexEnergyResult(res.winners, res.strategy, enc)


def lasso_lex_energy_winner(g: MultiWeightedGameGraph, lasso: Lasso) -> int:
    """Player 2 wins an ultimately periodic play iff its cycle total is
    lexicographically negative."""
    _, cyc = lasso.edges(g)
    return PLAYER2 if lex_sign(path_weight(g, cyc)) < 0 else PLAYER1
