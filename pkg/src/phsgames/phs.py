"""Perfect half space games on the explicit product arena.

Product vertex ``(v, H)`` has index ``v * len(hs) + h``.  Player 1 moves keep
the half space, Player 2 moves may switch to any half space in the set.
Solving goes through the 2d-dimensional lexicographic energy game whose
edge weights interleave the switch flags with the lexicographic dot
products.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import mpg
from .graph import (
    Edge,
    GameError,
    Lasso,
    MultiWeightedGameGraph,
    ResourceCapError,
    Vertex,
    path_weight,
    vertex_path_edges,
)
from .halfspaces import (
    DEFAULT_ENUMERATION_CAP,
    HalfSpaceRep,
    dot_sequence,
    enumerate_perfect_half_spaces,
    flag_vector,
    interleave,
    lex_compare,
    longest_common_prefix,
    parse_halfspace,
)
from .lexenergy import encode_weights

PLAYER1, PLAYER2 = 1, 2


class NoGoodHalfSpaceError(GameError):
    """make_oblivious found no half space whose move can be replicated."""


def product_id(v: str, H: HalfSpaceRep) -> str:
    return f"({v};{H})"


def split_product_id(pid: str, dim: int | None = None) -> tuple[str, HalfSpaceRep]:
    s = pid.strip()
    if not (s.startswith("(") and s.endswith(")")) or ";" not in s:
        raise ValueError(f"bad product vertex {pid!r}")
    v, h = s[1:-1].split(";", 1)
    return v, parse_halfspace(h, dim)


@dataclass
class ProductArena:
    base: MultiWeightedGameGraph
    hs: list[HalfSpaceRep]
    bound: int
    complete: bool
    filtered: bool = False
    # product edges, grouped by source vertex
    src: list[int] = field(default_factory=list, repr=False)
    dst: list[int] = field(default_factory=list, repr=False)
    base_edge: list[int] = field(default_factory=list, repr=False)

    @property
    def m(self) -> int:
        return len(self.hs)

    @property
    def n(self) -> int:
        return self.base.n * self.m

    def vertex(self, v: int, h: int) -> int:
        return v * self.m + h

    def split(self, p: int) -> tuple[int, int]:
        return divmod(p, self.m)

    def owner(self, p: int) -> int:
        return self.base.vertices[p // self.m].owner

    def vid(self, p: int) -> str:
        v, h = self.split(p)
        return product_id(self.base.vertices[v].id, self.hs[h])

    @cached_property
    def index(self) -> dict[str, int]:
        return {self.vid(p): p for p in range(self.n)}

    @cached_property
    def out(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k, s in enumerate(self.src):
            out[s].append(k)
        return out

    @cached_property
    def hs_index(self) -> dict[HalfSpaceRep, int]:
        return {H: i for i, H in enumerate(self.hs)}

    def translated_weight(self, k: int) -> tuple[int, ...]:
        hu = self.src[k] % self.m
        hv = self.dst[k] % self.m
        w = self.base.edges[self.base_edge[k]].weight
        return interleave(flag_vector(self.hs[hu], self.hs[hv]), dot_sequence(w, self.hs[hu]))

    @cached_property
    def encoded(self) -> tuple[list[int], list[int], list[int]]:
        """Encoded one-dimensional weights of the translated game."""
        # only (base edge, source half space, flag pattern) matters, so each
        # distinct translated vector is encoded once
        d, m = self.base.dim, self.m
        dots = [[dot_sequence(e.weight, H) for H in self.hs] for e in self.base.edges]
        hv = np.array([h.vectors for h in self.hs], dtype=np.int64)  # (m, d, d)
        differs = (hv[:, None] != hv[None, :]).any(axis=3)  # (m, m, d)
        fid = differs @ (1 << np.arange(d))  # flag pattern as bitmask
        src = np.asarray(self.src, dtype=np.int64)
        dst = np.asarray(self.dst, dtype=np.int64)
        be = np.asarray(self.base_edge, dtype=np.int64)
        hu = src % m
        key = (be * m + hu) * (1 << d) + fid[hu, dst % m]
        uniq, inverse = np.unique(key, return_inverse=True)
        vecs = []
        for x in uniq.tolist():
            rest, f = divmod(x, 1 << d)
            k, h = divmod(rest, m)
            vecs.append(interleave(tuple((f >> i) & 1 for i in range(d)), dots[k][h]))
        enc, norms, mults = encode_weights(vecs, self.n, 2 * d)
        return [enc[i] for i in inverse.tolist()], norms, mults

    @cached_property
    def arena(self) -> mpg.Arena:
        owners = [self.base.vertices[v].owner for v in range(self.base.n) for _ in range(self.m)]
        return mpg.Arena(owners, self.src, self.dst, self.encoded[0])

    def edge_text(self, k: int) -> str:
        return f"{self.vid(self.src[k])} -> {self.vid(self.dst[k])}"


def build_phs_arena(
    g: MultiWeightedGameGraph,
    B: int | None = None,
    keep: Callable[[HalfSpaceRep], bool] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_edges: int = 5 * 10**6,
) -> ProductArena:
    """Materialise the product arena over half spaces of norm at most ``B``.

    ``B`` defaults to ``|V| * ||E||``, which makes the arena complete.  A
    smaller ``B`` or a ``keep`` filter yields a restricted arena.
    """
    if g.extended:
        raise ValueError("product arenas need a graph without omega weights")
    full = g.n * g.norm
    if B is None:
        B = full
    hs = enumerate_perfect_half_spaces(g.dim, B, cap=cap, keep=keep)
    m = len(hs)
    n_edges = sum(m if g.owners[e.src] == PLAYER1 else m * m for e in g.edges)
    if n_edges > max_edges:
        raise ResourceCapError(f"product arena would have {n_edges} edges (cap {max_edges}); lower the norm bound")
    a = ProductArena(g, hs, B, complete=(B >= full and keep is None), filtered=keep is not None)
    for v in range(g.n):
        p1 = g.owners[v] == PLAYER1
        for h in range(m):
            s = v * m + h
            for k in g.out_edges[v]:
                t = g.edges[k].dst * m
                targets = [t + h] if p1 else range(t, t + m)
                for tt in targets:
                    a.src.append(s)
                    a.dst.append(tt)
                    a.base_edge.append(k)
    return a


def translate_phs_to_lexen(a: ProductArena) -> MultiWeightedGameGraph:
    """The 2d-dimensional lexicographic energy game over the product."""
    vs = tuple(Vertex(a.vid(p), a.owner(p)) for p in range(a.n))
    es = tuple(Edge(a.src[k], a.dst[k], a.translated_weight(k)) for k in range(len(a.src)))
    return MultiWeightedGameGraph(2 * a.base.dim, vs, es, False, f"{a.base.name}-phs")


@dataclass
class ProductStrategy:
    """Player-2 choice (product edge index) at every Player-2 product vertex."""

    choice: dict[int, int]
    oblivious: bool = False

    def is_oblivious(self, a: ProductArena) -> bool:
        moves: dict[int, int] = {}
        for p, k in self.choice.items():
            v = p // a.m
            if moves.setdefault(v, a.dst[k]) != a.dst[k]:
                return False
        return True

    def serialize(self, a: ProductArena) -> str:
        return "".join(f"strategy {a.edge_text(k)}\n" for _, k in sorted(self.choice.items()))

    @classmethod
    def parse(cls, a: ProductArena, text: str) -> "ProductStrategy":
        choice = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not line.startswith("strategy ") or "->" not in line:
                raise ValueError(f"bad strategy line {raw!r}")
            lhs, rhs = line[len("strategy ") :].split("->")
            s, t = a.index[lhs.strip()], a.index[rhs.strip()]
            k = next((k for k in a.out[s] if a.dst[k] == t), None)
            if k is None:
                raise ValueError(f"no product edge {lhs.strip()} -> {rhs.strip()}")
            choice[s] = k
        st = cls(choice)
        st.oblivious = st.is_oblivious(a)
        return st

    def project(self, a: ProductArena) -> dict[int, int]:
        """Base-graph map vertex -> edge; requires obliviousness."""
        if not self.is_oblivious(a):
            raise ValueError("only oblivious strategies project to the base graph")
        return {p // a.m: a.base_edge[k] for p, k in self.choice.items()}


@dataclass
class PHSResult:
    arena: ProductArena
    winners: list[int]
    product_winners: list[int]
    p2_strategy: ProductStrategy
    p1_strategy: dict[int, int]
    caveats: list[str]

    @property
    def complete(self) -> bool:
        return self.arena.complete


RESTRICTED_CAVEAT = "Player-1 wins unconfirmed (restricted half-space set)"


def _winners_by_base(a: ProductArena, product_winners: Sequence[int]) -> list[int]:
    out = []
    for v in range(a.base.n):
        ws = set(product_winners[v * a.m : (v + 1) * a.m])
        if len(ws) != 1:
            raise AssertionError(f"winner at {a.base.vertices[v].id} depends on the half space")
        out.append(ws.pop())
    return out


def solve_phs_game(
    g: MultiWeightedGameGraph | ProductArena,
    B: int | None = None,
    keep: Callable[[HalfSpaceRep], bool] | None = None,
    engine: str = "strategy-improvement",
) -> PHSResult:
    a = g if isinstance(g, ProductArena) else build_phs_arena(g, B, keep)
    res = mpg.solve_threshold(a.arena, engine)
    winners = _winners_by_base(a, res.winners)
    p2 = ProductStrategy(dict(res.strategy[PLAYER2]))
    p2.oblivious = p2.is_oblivious(a)
    caveats = [] if a.complete else [RESTRICTED_CAVEAT]
    return PHSResult(a, winners, res.winners, p2, dict(res.strategy[PLAYER1]), caveats)


def check_p2_strategy(a: ProductArena, tau: ProductStrategy | dict[int, int]) -> list[bool]:
    """Exactly where the positional Player-2 strategy ``tau`` wins."""
    choice = tau.choice if isinstance(tau, ProductStrategy) else tau
    keep = []
    for p in range(a.n):
        if a.owner(p) == PLAYER2:
            if p not in choice:
                raise ValueError(f"strategy undefined at {a.vid(p)}")
            k = choice[p]
            if a.src[k] != p:
                raise ValueError(f"strategy at {a.vid(p)} picks a foreign edge")
            keep.append(k)
        else:
            keep.extend(a.out[p])
    sub, _ = a.arena.restricted(keep)
    res = mpg.solve_threshold(sub)
    return [w == PLAYER2 for w in res.winners]


def _moves_by_frequency(a: ProductArena, choice: dict[int, int], v: int) -> list[int]:
    """Distinct product targets chosen at ``(v, .)``, most frequent first."""
    moves = [a.dst[choice[a.vertex(v, h)]] for h in range(a.m)]
    counts = Counter(moves)
    first: dict[int, int] = {}
    for i, t in enumerate(moves):
        first.setdefault(t, i)
    return sorted(counts, key=lambda t: (-counts[t], first[t]))


def _replicate(a: ProductArena, choice: dict[int, int], v: int, t: int) -> dict[int, int]:
    new = dict(choice)
    for h in range(a.m):
        p = a.vertex(v, h)
        new[p] = next(k for k in a.out[p] if a.dst[k] == t)
    return new


def make_oblivious(
    a: ProductArena,
    tau: ProductStrategy,
    region: set[int] | None = None,
    shortcut: bool = True,
) -> ProductStrategy:
    """Turn a winning Player-2 strategy into one that ignores the half space.

    Base vertices are handled in order.  At each, the distinct moves ``tau``
    makes across half spaces are tried (most frequent first) by replicating
    one to every half space; a move is accepted when the exact verifier
    still sees Player 2 winning the whole region.  With ``shortcut`` the
    most frequent move everywhere at once is tried first.
    """
    choice = dict(tau.choice)
    if region is None:
        wins = check_p2_strategy(a, choice)
        region = {p for p in range(a.n) if wins[p]}
    p2 = a.base.vertices_of(PLAYER2)

    def wins_region(c):
        w = check_p2_strategy(a, c)
        return all(w[p] for p in region)

    if shortcut:
        greedy = choice
        for v in p2:
            greedy = _replicate(a, greedy, v, _moves_by_frequency(a, choice, v)[0])
        if greedy == choice or wins_region(greedy):
            return ProductStrategy(greedy, oblivious=True)

    for v in p2:
        cands = _moves_by_frequency(a, choice, v)
        if len(cands) == 1:
            continue
        if not any(a.vertex(v, h) in region for h in range(a.m)):
            # plays from the region never reach a losing vertex
            choice = _replicate(a, choice, v, cands[0])
            continue
        for t in cands:
            new = _replicate(a, choice, v, t)
            if wins_region(new):
                choice = new
                break
        else:
            raise NoGoodHalfSpaceError(f"no replicable move at {a.base.vertices[v].id}")
    return ProductStrategy(choice, oblivious=True)


def lasso_phs_winner(a: ProductArena, lasso: Lasso) -> int:
    """Player 2 wins iff the cycle total is lexicographically negative
    against the longest common prefix of the half spaces on the cycle."""
    cyc = [split_product_id(x, a.base.dim) for x in lasso.cycle]
    base_cycle = [v for v, _ in cyc]
    for (v, H), pid in zip(cyc, lasso.cycle):
        if pid not in a.index:
            raise ValueError(f"{pid} is not a vertex of the arena")
    for x, y in zip(lasso.cycle, lasso.cycle[1:]):
        s, t = a.index[x], a.index[y]
        if not any(a.dst[k] == t for k in a.out[s]):
            raise ValueError(f"no product edge {x} -> {y}")
    G = longest_common_prefix(H for _, H in cyc[:-1])
    c = path_weight(a.base, vertex_path_edges(a.base, base_cycle))
    seq = dot_sequence(c, G)
    return PLAYER2 if lex_compare(seq, (0,) * len(seq)) < 0 else PLAYER1


def play_product(a: ProductArena, start: int, p1: dict[int, int], p2: dict[int, int]) -> Lasso:
    """Lasso of product vertex ids produced by two positional strategies."""
    seen: dict[int, int] = {}
    seq = []
    p = start
    while p not in seen:
        seen[p] = len(seq)
        seq.append(p)
        p = a.dst[(p1 if a.owner(p) == PLAYER1 else p2)[p]]
    k = seen[p]
    ids = [a.vid(x) for x in seq]
    return Lasso(tuple(ids[: k + 1]), tuple(ids[k:] + [a.vid(p)]))


__all__ = [
    "NoGoodHalfSpaceError",
    "PHSResult",
    "ProductArena",
    "ProductStrategy",
    "RESTRICTED_CAVEAT",
    "build_phs_arena",
    "check_p2_strategy",
    "lasso_phs_winner",
    "make_oblivious",
    "play_product",
    "product_id",
    "solve_phs_game",
    "split_product_id",
    "translate_phs_to_lexen",
]
