"""Fixtures-as-functions and small independent oracles shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from pathlib import Path

from phsgames.graph import Edge, MultiWeightedGameGraph, Vertex, load_game, simple_cycles
from phsgames.halfspaces import HalfSpaceRep

GAMES = Path(__file__).resolve().parent.parent / "games"

HL = HalfSpaceRep.of((1, 1), (-1, 1))
HR = HalfSpaceRep.of((1, 1), (1, -1))

FIG3_WEIGHTS = (0, -7, 0, -1, 6, 0, -6, 0)

# one line per acceptance criterion, printed in the pytest summary
ACCEPTANCE_LINES: list[str] = []


def fig1() -> MultiWeightedGameGraph:
    return load_game(GAMES / "fig1.game")


def fig5() -> MultiWeightedGameGraph:
    return load_game(GAMES / "fig5.game")


def fig3() -> MultiWeightedGameGraph:
    g = fig1()
    edges = tuple(Edge(e.src, e.dst, (w,)) for e, w in zip(g.edges, FIG3_WEIGHTS))
    return MultiWeightedGameGraph(1, g.vertices, edges, name="fig3")


def relay_cycle(weights_out, weights_back, priority=None) -> MultiWeightedGameGraph:
    """Player-1 vertex ``a`` and Player-2 relay ``b`` forming one 2-cycle."""
    w1 = tuple(weights_out) if isinstance(weights_out, tuple) else (weights_out,)
    w2 = tuple(weights_back) if isinstance(weights_back, tuple) else (weights_back,)
    return MultiWeightedGameGraph.build(
        len(w1),
        [("a", 1, priority), ("b", 2, priority)],
        [("a", "b", w1), ("b", "a", w2)],
    )


def cycle_total(g, cyc):
    tot = [0] * g.dim
    for k in cyc:
        for i, x in enumerate(g.edges[k].weight):
            tot[i] += x
    return tuple(tot)


def lex_sign(vec) -> int:
    for x in vec:
        if x:
            return 1 if x > 0 else -1
    return 0


def enumeration_min_cycle_mean(g, edges=None):
    """Minimum cycle mean by listing every simple cycle."""
    best = None
    for cyc in simple_cycles(g, edges):
        m = Fraction(sum(g.edges[k].weight[0] for k in cyc), len(cyc))
        if best is None or m < best:
            best = m
    return best


def brute_force_half_spaces(d: int, B: int) -> set:
    """Perfect half spaces from raw tuples: orthogonal d-tuples of nonzero
    vectors of norm <= B, each vector divided by its gcd, deduplicated."""
    from math import gcd

    raw = [v for v in itertools.product(range(-B, B + 1), repeat=d) if any(v)]

    def prim(v):
        g = 0
        for x in v:
            g = gcd(g, abs(x))
        return tuple(x // g for x in v)

    out = set()

    def rec(prefix):
        if len(prefix) == d:
            out.add(tuple(prim(v) for v in prefix))
            return
        for v in raw:
            if all(sum(a * b for a, b in zip(v, h)) == 0 for h in prefix):
                rec(prefix + [v])

    rec([])
    return out


def brute_force_parity(owner, prio, succ):
    """Min-parity winners by enumerating Player-1 positional strategies:
    Player 1 wins v iff some strategy makes every cycle reachable from v
    have an odd least priority."""
    n = len(owner)
    p1 = [v for v in range(n) if owner[v] == 1]
    win = [2] * n
    for choice in itertools.product(*(succ[v] for v in p1)):
        adj = [list(succ[v]) for v in range(n)]
        for v, t in zip(p1, choice):
            adj[v] = [t]
        vs = tuple(Vertex(str(i), owner[i]) for i in range(n))
        es = tuple(Edge(v, t, (0,)) for v in range(n) for t in adj[v])
        h = MultiWeightedGameGraph(1, vs, es)
        bad = set()
        for cyc in simple_cycles(h):
            if min(prio[h.edges[k].src] for k in cyc) % 2 == 0:
                bad.update(h.edges[k].src for k in cyc)
        # vertices that can reach a bad cycle
        reach_bad = set(bad)
        changed = True
        while changed:
            changed = False
            for v in range(n):
                if v not in reach_bad and any(t in reach_bad for t in adj[v]):
                    reach_bad.add(v)
                    changed = True
        for v in range(n):
            if v not in reach_bad:
                win[v] = 1
    return win
