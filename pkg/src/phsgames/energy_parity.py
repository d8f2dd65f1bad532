"""Multi-dimensional energy parity games.

Arbitrary initial credit is decided by two graph rewritings followed by the
bounding-game solver:

1. priorities become extra energy dimensions, one per even priority, with
   omega increments on edges entering smaller odd priorities;
2. omega increments and the "keep the credit finite" freedom of Player 1
   become explicit loops, giving an ordinary bounding game.

Given initial credit is only answered by a finite capped-energy parity game.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bounding import BoundingResult, solve_bounding
from .graph import (
    OMEGA,
    Edge,
    Lasso,
    MultiWeightedGameGraph,
    ResourceCapError,
    Vertex,
)
from .halfspaces import HalfSpaceRep, negative_orthant_filter

PLAYER1, PLAYER2 = 1, 2
DEFAULT_ORACLE_STATES = 2 * 10**6


@dataclass(frozen=True)
class Credit:
    values: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(x, int) or x < 0 for x in self.values):
            raise ValueError(f"credit must be non-negative integers, got {self.values}")

    @classmethod
    def parse(cls, text: str) -> "Credit":
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad credit {text!r}: {exc}") from None

    @classmethod
    def uniform(cls, c: int, d: int) -> "Credit":
        return cls((c,) * d)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


@dataclass
class ReductionCertificate:
    construction: str
    source: MultiWeightedGameGraph
    target: MultiWeightedGameGraph
    # source vertex index -> target vertex index
    correspondence: dict[int, int]
    bounds: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def metrics(self) -> dict[str, int]:
        return {
            "vertices": self.target.n,
            "edges": len(self.target.edges),
            "norm": self.target.norm,
            "dim": self.target.dim,
        }

    def violations(self) -> list[str]:
        out = []
        for name, (value, limit) in self.bounds.items():
            ok = value == limit if name.startswith("norm") else value <= limit
            if not ok:
                out.append(f"{name}: {value} vs {limit}")
        return out

    def holds(self) -> bool:
        return not self.violations()

    def report(self) -> dict:
        return {
            "construction": self.construction,
            **self.metrics,
            "bounds": {k: {"value": v, "limit": l} for k, (v, l) in self.bounds.items()},
            "holds": self.holds(),
        }


def _fresh(taken: set[str], base: str) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def priority(g: MultiWeightedGameGraph, v: int) -> int:
    p = g.vertices[v].priority
    return 1 if p is None else p


def reduce_parity_to_extended(g: MultiWeightedGameGraph) -> tuple[MultiWeightedGameGraph, ReductionCertificate]:
    """Replace priorities by one energy dimension per even priority.

    Entering an even priority ``q`` costs one unit in its dimension;
    entering an odd priority ``r`` grants omega in every dimension of an
    even priority above ``r``.  Player-2 edges that need omega are routed
    through a shared (Player-1, Player-2) vertex pair per target.
    """
    if g.extended:
        raise ValueError("input already carries omega weights")
    if any(v.priority is None for v in g.vertices):
        raise ValueError("every vertex needs a priority")
    evens = sorted({v.priority for v in g.vertices if v.priority % 2 == 0})
    ident = {v: v for v in range(g.n)}
    if not evens:
        return g, ReductionCertificate("parity-to-extended", g, g, ident, _fact_bounds(g, g))
    p = len(evens)
    dim_of = {q: g.dim + j for j, q in enumerate(evens)}
    d2 = g.dim + p

    def increment(t: int) -> tuple:
        pt = g.vertices[t].priority
        vec = [0] * d2
        if pt % 2 == 0:
            vec[dim_of[pt]] = -1
        else:
            for q in evens:
                if q > pt:
                    vec[dim_of[q]] = OMEGA
        return tuple(vec)

    vertices = [Vertex(v.id, v.owner) for v in g.vertices]
    taken = {v.id for v in g.vertices}
    edges: list[Edge] = []
    relay: dict[int, int] = {}  # target -> fresh Player-1 vertex
    tail: list[Edge] = []
    for e in g.edges:
        inc = increment(e.dst)
        base = tuple(e.weight) + (0,) * p
        if OMEGA not in inc:
            edges.append(Edge(e.src, e.dst, tuple(a + b for a, b in zip(base, inc))))
        elif g.owners[e.src] == PLAYER1:
            edges.append(Edge(e.src, e.dst, tuple(OMEGA if b is OMEGA else a for a, b in zip(base, inc))))
        else:
            if e.dst not in relay:
                tid = g.vertices[e.dst].id
                c = len(vertices)
                vertices.append(Vertex(_fresh(taken, f"{tid}.c"), PLAYER1))
                vertices.append(Vertex(_fresh(taken, f"{tid}.a"), PLAYER2))
                relay[e.dst] = c
                tail.append(Edge(c, c + 1, inc))
                tail.append(Edge(c + 1, e.dst, (0,) * d2))
            edges.append(Edge(e.src, relay[e.dst], base))
    out = MultiWeightedGameGraph(d2, tuple(vertices), tuple(edges + tail), True, f"{g.name}-ext")
    return out, ReductionCertificate("parity-to-extended", g, out, ident, _fact_bounds(g, out))


def _fact_bounds(g, out) -> dict[str, tuple[int, int]]:
    return {
        "vertices<=3|V|": (out.n, 3 * g.n),
        "edges<=|E|+2|V|": (len(out.edges), len(g.edges) + 2 * g.n),
        "norm": (out.norm, g.norm),
    }


def reduce_extended_to_bounding(g: MultiWeightedGameGraph) -> tuple[MultiWeightedGameGraph, ReductionCertificate]:
    """Make Player 1's energy freedoms explicit.

    Every Player-1 vertex gets, per dimension ``i``, a detour through a fresh
    Player-2 vertex costing ``-e_i``.  Every edge with omega entries is split
    as ``u -> X -> Y -> v`` with the omegas zeroed; the fresh Player-1 vertex
    ``Y`` gets a ``+e_i`` detour for each formerly-omega coordinate ``i``.
    """
    d = g.dim
    unit = lambda i, s: tuple(s if j == i else 0 for j in range(d))
    zero = (0,) * d
    vertices = [Vertex(v.id, v.owner) for v in g.vertices]
    taken = {v.id for v in g.vertices}
    edges: list[Edge] = []

    def add(name: str, owner: int) -> int:
        vertices.append(Vertex(_fresh(taken, name), owner))
        return len(vertices) - 1

    def loop(u: int, i: int, sign: int) -> None:
        tag = "m" if sign < 0 else "p"
        x = add(f"{vertices[u].id}.{tag}{i + 1}", PLAYER2)
        edges.append(Edge(u, x, unit(i, sign)))
        edges.append(Edge(x, u, zero))

    for u in range(g.n):
        if g.owners[u] == PLAYER1:
            for i in range(d):
                loop(u, i, -1)
    for e in g.edges:
        omegas = [i for i, x in enumerate(e.weight) if x is OMEGA]
        if not omegas:
            edges.append(e)
            continue
        stem = f"{g.vertices[e.src].id}>{g.vertices[e.dst].id}"
        x = add(f"{stem}.x", PLAYER2)
        y = add(f"{stem}.y", PLAYER1)
        edges.append(Edge(e.src, x, tuple(0 if w is OMEGA else w for w in e.weight)))
        edges.append(Edge(x, y, zero))
        edges.append(Edge(y, e.dst, zero))
        for i in omegas:
            loop(y, i, +1)
    out = MultiWeightedGameGraph(d, tuple(vertices), tuple(edges), False, f"{g.name}-bnd")
    n, m = g.n, len(g.edges)
    bounds = {
        "vertices<=(d+1)|V|+(d+2)|E|": (out.n, (d + 1) * n + (d + 2) * m),
        "edges<=2(d+1)|E|+2d|V|": (len(out.edges), 2 * (d + 1) * m + 2 * d * n),
        "norm": (out.norm, g.norm),
    }
    return out, ReductionCertificate("extended-to-bounding", g, out, {v: v for v in range(n)}, bounds)


ORTHANT_CAVEAT = "half spaces restricted to those containing every negative unit vector"


@dataclass
class ArbitraryCreditResult:
    winners: list[int]
    # original Player-2 vertex -> original edge index
    p2_strategy: dict[int, int]
    certificates: list[ReductionCertificate]
    bounding: BoundingResult
    bounding_graph: MultiWeightedGameGraph
    caveats: list[str]
    # vertices whose Player-1 win was confirmed by the capped oracle
    confirmed: dict[int, tuple[Credit, int]] = field(default_factory=dict)


def solve_arbitrary_credit(
    g: MultiWeightedGameGraph,
    B: int | None = 1,
    orthant: bool = False,
    engine: str = "strategy-improvement",
    confirm: bool = True,
) -> ArbitraryCreditResult:
    """Winners of the energy (parity) game when Player 1 may pick the credit.

    ``B`` bounds the half-space norms used by the bounding solver; anything
    below the complete bound gives sound Player-2 wins only.  ``orthant``
    further keeps only half spaces containing every ``-e_i``; that is also
    sound for Player 2 but loses every win that needs Player 2 to punish a
    ``+e_i`` detour.  Player-1 wins
    are then confirmed, where possible, by the capped oracle on ``g``.
    """
    certs = []
    ext = g
    if g.has_priorities:
        ext, c1 = reduce_parity_to_extended(g)
        certs.append(c1)
    bnd, c2 = reduce_extended_to_bounding(ext)
    certs.append(c2)
    keep: Callable[[HalfSpaceRep], bool] | None = negative_orthant_filter if orthant else None
    res = solve_bounding(bnd, B, keep, engine)
    winners = res.winners[: g.n]
    # Player-2 moves in the bounding graph go to an original vertex or to a relay
    relay_target = {}
    for e in ext.edges:
        if e.src >= g.n and ext.owners[e.src] == PLAYER1:
            for e2 in ext.edges:
                if e2.src == e.dst:
                    relay_target[e.src] = e2.dst
    p2 = {}
    for v in g.vertices_of(PLAYER2):
        t = bnd.edges[res.p2_strategy[v]].dst
        p2[v] = g.edge_between[(v, relay_target.get(t, t))]
    caveats = list(res.caveats)
    if orthant:
        caveats.append(ORTHANT_CAVEAT)
    out = ArbitraryCreditResult(winners, p2, certs, res, bnd, caveats)
    if confirm and caveats:
        for v, w in enumerate(winners):
            if w == PLAYER1:
                hit = confirm_player1(g, v)
                if hit is not None:
                    out.confirmed[v] = hit
    return out


def confirm_player1(
    g: MultiWeightedGameGraph,
    v: int,
    credits: Sequence[int] = (0, 1, 2, 4, 8),
    caps: Sequence[int] = (4, 8, 16),
    state_cap: int = 10**5,
) -> tuple[Credit, int] | None:
    """Smallest probed (credit, cap) where the capped oracle lets Player 1 win."""
    for cap in caps:
        if g.n * (cap + 1) ** g.dim > state_cap:
            break
        for c in credits:
            cr = Credit.uniform(min(c, cap), g.dim)
            if capped_energy_parity_oracle(g, cr, cap, state_cap=state_cap)[v] == PLAYER1:
                return cr, cap
    return None


# -- capped oracle -----------------------------------------------------------


def zielonka(owner: Sequence[int], prio: Sequence[int], succ: Sequence[Sequence[int]]) -> list[int]:
    """Winners of a finite min-parity game: Player 1 wins iff the least
    priority seen infinitely often is odd."""
    n = len(owner)
    pred: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in succ[v]:
            pred[u].append(v)

    def attractor(region: set[int], target: set[int], player: int) -> set[int]:
        attr = set(target)
        count = {v: sum(1 for u in succ[v] if u in region) for v in region}
        queue = list(target)
        while queue:
            u = queue.pop()
            for v in pred[u]:
                if v not in region or v in attr:
                    continue
                if owner[v] == player:
                    attr.add(v)
                    queue.append(v)
                else:
                    count[v] -= 1
                    if count[v] == 0:
                        attr.add(v)
                        queue.append(v)
        return attr

    def solve(region: set[int]) -> tuple[set[int], set[int]]:
        if not region:
            return set(), set()
        p = min(prio[v] for v in region)
        alpha = PLAYER1 if p % 2 else PLAYER2
        top = {v for v in region if prio[v] == p}
        A = attractor(region, top, alpha)
        w1, w2 = solve(region - A)
        opp_win = w2 if alpha == PLAYER1 else w1
        if not opp_win:
            return (region, set()) if alpha == PLAYER1 else (set(), region)
        Bset = attractor(region, opp_win, 3 - alpha)
        w1, w2 = solve(region - Bset)
        if alpha == PLAYER1:
            return w1, w2 | Bset
        return w1 | Bset, w2

    w1, _ = solve(set(range(n)))
    return [PLAYER1 if v in w1 else PLAYER2 for v in range(n)]


def capped_energy_parity_oracle(
    g: MultiWeightedGameGraph,
    c: Credit,
    cap: int,
    state_cap: int = DEFAULT_ORACLE_STATES,
) -> list[int]:
    """Per vertex: Player 1 if she wins the capped game from credit ``c``,
    else Player 2 (meaning only: at this cap).

    Energy levels live in ``[0, cap]^d``; gains above ``cap`` are lost, and a
    negative level is an immediate loss for Player 1.
    """
    if g.extended:
        raise ValueError("the capped oracle needs a graph without omega weights")
    if len(c) != g.dim:
        raise ValueError(f"credit has {len(c)} components, game has {g.dim}")
    if cap < 1:
        raise ValueError("cap must be positive")
    L = cap + 1
    total = g.n * L**g.dim + 1
    if total > state_cap:
        raise ResourceCapError(f"{total} capped states exceed the cap {state_cap}")
    d = g.dim

    def encode(v: int, e: Sequence[int]) -> int:
        x = v
        for y in e:
            x = x * L + y
        return x

    sink = total - 1
    owner = [0] * total
    prio = [0] * total
    succ: list[list[int]] = [[] for _ in range(total)]
    for v in range(g.n):
        pv = priority(g, v)
        for flat in range(L**d):
            e, r = [], flat
            for _ in range(d):
                r, y = divmod(r, L)
                e.append(y)
            e.reverse()
            s = encode(v, e)
            owner[s] = g.owners[v]
            prio[s] = pv
            for k in g.out_edges[v]:
                ed = g.edges[k]
                ne = [min(a + b, cap) for a, b in zip(e, ed.weight)]
                succ[s].append(sink if min(ne) < 0 else encode(ed.dst, ne))
    owner[sink], prio[sink] = PLAYER2, 0
    succ[sink] = [sink]
    win = zielonka(owner, prio, succ)
    start = [min(x, cap) for x in c.values]
    return [win[encode(v, start)] for v in range(g.n)]


def lasso_energy_parity_winner(g: MultiWeightedGameGraph, lasso: Lasso, c: Credit) -> int:
    """Exact winner of an ultimately periodic play from credit ``c``."""
    if g.extended:
        raise ValueError("lassos are evaluated on graphs without omega weights")
    if len(c) != g.dim:
        raise ValueError(f"credit has {len(c)} components, game has {g.dim}")
    pre, cyc = lasso.edges(g)
    level = list(c.values)
    for k in pre + cyc:
        level = [a + b for a, b in zip(level, g.edges[k].weight)]
        if min(level) < 0:
            return PLAYER2
    total = [0] * g.dim
    for k in cyc:
        total = [a + b for a, b in zip(total, g.edges[k].weight)]
    if min(total) < 0:
        return PLAYER2
    least = min(priority(g, g.index[v]) for v in lasso.cycle)
    return PLAYER1 if least % 2 else PLAYER2


__all__ = [
    "ArbitraryCreditResult",
    "Credit",
    "ORTHANT_CAVEAT",
    "ReductionCertificate",
    "capped_energy_parity_oracle",
    "confirm_player1",
    "lasso_energy_parity_winner",
    "priority",
    "reduce_extended_to_bounding",
    "reduce_parity_to_extended",
    "solve_arbitrary_credit",
    "zielonka",
]
