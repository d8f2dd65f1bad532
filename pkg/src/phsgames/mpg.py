"""One-dimensional mean-payoff games.

Player 1 is Max and Player 2 is Min.  Max wins a vertex when its value is
``>= 0``.  Two engines decide this threshold:

* ``strategy-improvement`` (default): Max improves a positional strategy
  against Min's shortest-path best response in the longest-shortest-path
  formulation with a retreat vertex.  Weights are first rescaled to
  ``n*w + 1`` so that "value >= 0" becomes "value > 0".  Per-iteration cost
  does not depend on weight magnitudes, which matters for the huge encoded
  weights coming from lexicographic games.
* ``value-iteration``: energy progress measures, lifted in vertex order.
  Pseudo-polynomial in the weights, kept as a cross-check.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import MultiWeightedGameGraph, ResourceCapError

MAX, MIN = 1, 2
ENGINES = ("strategy-improvement", "value-iteration")
_RETREAT = -1


@dataclass
class Arena:
    """Array form of a one-dimensional game; edge ``k`` is
    ``src[k] -> dst[k]`` with integer weight ``weight[k]``."""

    owner: list[int]
    src: list[int]
    dst: list[int]
    weight: list[int]
    out: list[list[int]] = field(init=False)

    def __post_init__(self):
        self.out = [[] for _ in self.owner]
        for k, s in enumerate(self.src):
            self.out[s].append(k)

    @property
    def n(self) -> int:
        return len(self.owner)

    @classmethod
    def from_graph(cls, g: MultiWeightedGameGraph, weights: Sequence[int] | None = None) -> "Arena":
        if weights is None:
            if g.dim != 1:
                raise ValueError(f"mean-payoff games are one-dimensional, got d={g.dim}")
            weights = [e.weight[0] for e in g.edges]
        return cls(list(g.owners), [e.src for e in g.edges], [e.dst for e in g.edges], list(weights))

    def reweighted(self, weights: Sequence[int]) -> "Arena":
        return Arena(self.owner, self.src, self.dst, list(weights))

    def restricted(self, keep: Iterable[int]) -> tuple["Arena", list[int]]:
        """Arena with only the edges in ``keep``; also returns the old indices."""
        ks = sorted(set(keep))
        return Arena(self.owner, [self.src[k] for k in ks], [self.dst[k] for k in ks], [self.weight[k] for k in ks]), ks


@dataclass
class MeanPayoffResult:
    winners: list[int]
    strategy: dict[int, dict[int, int]]
    values: list[Fraction] | None = None
    iterations: int = 0

    def region(self, player: int) -> set[int]:
        return {v for v, w in enumerate(self.winners) if w == player}


def _as_arena(g) -> Arena:
    return g if isinstance(g, Arena) else Arena.from_graph(g)


# -- strategy improvement ---------------------------------------------------


def _initial_distances(a: Arena, w: list[int]) -> list:
    """Shortest distances to the retreat when every Max vertex retreats."""
    d: list = [0 if o == MAX else None for o in a.owner]
    for _ in range(a.n + 1):
        changed = False
        for v in range(a.n):
            if a.owner[v] == MAX:
                continue
            best = d[v]
            for k in a.out[v]:
                du = d[a.dst[k]]
                if du is not None and (best is None or w[k] + du < best):
                    best = w[k] + du
            if best != d[v]:
                d[v] = best
                changed = True
        if not changed:
            return d
    raise ValueError("negative cycle among Player-2 vertices alone; graph must alternate")


def _evaluate(a: Arena, w: list[int], sigma: list[int], pot: list, min_preds: list[list[tuple[int, int]]]) -> list:
    """Min's shortest distance to the retreat under ``sigma`` (None = +inf).

    Dijkstra on reduced costs ``w + pot[u] - pot[v]``, which are non-negative
    because ``pot`` holds the previous (smaller) distances.
    """
    n = a.n
    max_preds: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    heap: list[tuple[int, int]] = []
    red: list = [None] * n
    for v in range(n):
        if a.owner[v] != MAX or pot[v] is None:
            continue
        k = sigma[v]
        if k == _RETREAT:
            r = -pot[v]
            red[v] = r
            heap.append((r, v))
        else:
            max_preds[a.dst[k]].append((v, k))
    heapq.heapify(heap)
    done = [False] * n
    while heap:
        r, u = heapq.heappop(heap)
        if done[u] or r != red[u]:
            continue
        done[u] = True
        pu = pot[u]
        if pu is None:
            raise AssertionError("distance decreased during strategy improvement")
        for v, k in itertools.chain(min_preds[u], max_preds[u]):
            pv = pot[v]
            if pv is None or done[v]:
                continue
            nr = r + w[k] + pu - pv
            if red[v] is None or nr < red[v]:
                red[v] = nr
                heapq.heappush(heap, (nr, v))
    return [red[v] + pot[v] if done[v] else None for v in range(n)]


def _gt(x, y) -> bool:
    """x > y with None standing for +infinity."""
    if x is None:
        return y is not None
    return y is not None and x > y


def _strategy_improvement(a: Arena, max_iterations: int = 1_000_000) -> MeanPayoffResult:
    n = a.n
    w = [n * x + 1 for x in a.weight]
    min_preds: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k in range(len(a.src)):
        if a.owner[a.src[k]] != MAX:
            min_preds[a.dst[k]].append((a.src[k], k))
    sigma = [_RETREAT] * n
    d = _initial_distances(a, w)
    it = 0
    while True:
        switched = False
        for v in range(n):
            if a.owner[v] != MAX or d[v] is None:
                continue
            best, choice = d[v], None
            for k in a.out[v]:
                du = d[a.dst[k]]
                val = None if du is None else w[k] + du
                if _gt(val, best):
                    best, choice = val, k
            if choice is None and 0 > best:
                choice = _RETREAT
            if choice is not None:
                sigma[v] = choice
                switched = True
        if not switched:
            break
        it += 1
        if it > max_iterations:
            raise RuntimeError("strategy improvement did not converge")
        d = _evaluate(a, w, sigma, d, min_preds)

    winners = [MAX if d[v] is None else MIN for v in range(n)]
    s1: dict[int, int] = {}
    s2: dict[int, int] = {}
    for v in range(n):
        if a.owner[v] == MAX:
            s1[v] = sigma[v] if sigma[v] != _RETREAT else a.out[v][0]
        elif d[v] is None:
            s2[v] = a.out[v][0]
        else:
            s2[v] = next(k for k in a.out[v] if d[a.dst[k]] is not None and w[k] + d[a.dst[k]] == d[v])
    return MeanPayoffResult(winners, {MAX: s1, MIN: s2}, iterations=it)


# -- value iteration --------------------------------------------------------


def _progress_measure(a: Arena, w: Sequence[int], energy_player: int) -> list:
    """Least energy progress measure for ``energy_player`` (None = top)."""
    top = a.n * max((abs(x) for x in w), default=0)
    f: list = [0] * a.n

    def lift(v):
        vals = []
        for k in a.out[v]:
            fu = f[a.dst[k]]
            if fu is None:
                vals.append(None)
            else:
                x = max(0, fu - w[k])
                vals.append(None if x > top else x)
        key = lambda x: (x is None, x if x is not None else 0)
        return min(vals, key=key) if a.owner[v] == energy_player else max(vals, key=key)

    changed = True
    while changed:
        changed = False
        for v in range(a.n):
            if f[v] is None:
                continue
            nv = lift(v)
            if nv != f[v]:
                f[v] = nv
                changed = True
    return f


def _pm_strategy(a: Arena, w: Sequence[int], f: list, player: int) -> dict[int, int]:
    """Edges that keep ``player`` consistent with progress measure ``f``."""
    strat = {}
    for v in range(a.n):
        if a.owner[v] != player:
            continue
        choice = a.out[v][0]
        if f[v] is not None:
            for k in a.out[v]:
                fu = f[a.dst[k]]
                if fu is not None and max(0, fu - w[k]) <= f[v]:
                    choice = k
                    break
        strat[v] = choice
    return strat


def _value_iteration(a: Arena) -> MeanPayoffResult:
    f = _progress_measure(a, a.weight, MAX)
    # Min wins (value < 0) iff mean of -(n*w)-1 is >= 0 for Min as energy player
    dual = [-(a.n * x) - 1 for x in a.weight]
    g = _progress_measure(a, dual, MIN)
    winners = [MAX if f[v] is not None else MIN for v in range(a.n)]
    if any((g[v] is not None) != (winners[v] == MIN) for v in range(a.n)):
        raise AssertionError("primal and dual progress measures disagree")
    return MeanPayoffResult(winners, {MAX: _pm_strategy(a, a.weight, f, MAX), MIN: _pm_strategy(a, dual, g, MIN)})


def solve_threshold(g, engine: str = "strategy-improvement") -> MeanPayoffResult:
    """Winners (Max iff value >= 0) and positional strategies for both players.

    In Max's region every cycle of Max's strategy subgraph has weight >= 0;
    in Min's region every cycle of Min's strategy subgraph is negative.
    """
    a = _as_arena(g)
    if engine == "strategy-improvement":
        return _strategy_improvement(a)
    if engine == "value-iteration":
        return _value_iteration(a)
    raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


# -- values -----------------------------------------------------------------


def compute_values(g, engine: str = "strategy-improvement", per_round: bool = True) -> list[Fraction]:
    """Exact vertex values by bisection over thresholds ``p/q``.

    Each threshold is decided by :func:`solve_threshold` on weights
    ``q*w - p``.  Values are per round (one move of each player, i.e. twice
    the per-move limit average) when ``per_round``; strict alternation makes
    every cycle even so both scales are exact.
    """
    a = _as_arena(g)
    n = a.n
    W = max((abs(x) for x in a.weight), default=0)
    lo = [Fraction(-W)] * n
    hi = [Fraction(W + 1)] * n
    gap = Fraction(1, n * n)
    while True:
        groups: dict[tuple[Fraction, Fraction], list[int]] = {}
        for v in range(n):
            if hi[v] - lo[v] >= gap:
                groups.setdefault((lo[v], hi[v]), []).append(v)
        if not groups:
            break
        for (l, h), members in groups.items():
            mid = (l + h) / 2
            res = solve_threshold(a.reweighted([mid.denominator * x - mid.numerator for x in a.weight]), engine)
            for v in members:
                if res.winners[v] == MAX:
                    lo[v] = mid
                else:
                    hi[v] = mid
    values = []
    for v in range(n):
        for q in range(1, n + 1):
            p = -((-lo[v].numerator * q) // lo[v].denominator)  # ceil(lo*q)
            if Fraction(p, q) < hi[v]:
                values.append(Fraction(p, q))
                break
        else:
            raise AssertionError("no candidate value in the final interval")
    return [2 * x for x in values] if per_round else values


# -- cycle means ------------------------------------------------------------


def min_cycle_mean(g, edges: Iterable[int] | None = None, maximize: bool = False):
    """Minimum (or maximum) mean-weight cycle by Karp's algorithm.

    Returns ``(mean, witness_edge_indices)`` or ``None`` when the selected
    edges are acyclic.  Means are per edge.  Comparisons cross-multiply.
    """
    a = _as_arena(g)
    ks = list(range(len(a.src))) if edges is None else sorted(set(edges))
    sign = -1 if maximize else 1
    n = a.n
    # D[j][v]: least weight of a walk with exactly j edges ending at v
    D: list[list] = [[0] * n]
    parent: list[list] = [[None] * n]
    for j in range(1, n + 1):
        row: list = [None] * n
        par: list = [None] * n
        prev = D[-1]
        for k in ks:
            u, v = a.src[k], a.dst[k]
            if prev[u] is None:
                continue
            x = prev[u] + sign * a.weight[k]
            if row[v] is None or x < row[v]:
                row[v] = x
                par[v] = k
        D.append(row)
        parent.append(par)
    best = None  # (num, den, v)
    for v in range(n):
        if D[n][v] is None:
            continue
        worst = None
        for j in range(n):
            if D[j][v] is None:
                continue
            num, den = D[n][v] - D[j][v], n - j
            if worst is None or num * worst[1] > worst[0] * den:
                worst = (num, den)
        if best is None or worst[0] * best[1] < best[0] * worst[1]:
            best = (worst[0], worst[1], v)
    if best is None:
        return None
    lam = Fraction(best[0], best[1])
    # walk back n steps from the argmin; every cycle on that walk is optimal
    walk = []
    v = best[2]
    for j in range(n, 0, -1):
        k = parent[j][v]
        walk.append(k)
        v = a.src[k]
    walk.reverse()
    verts = [a.src[walk[0]]] + [a.dst[k] for k in walk]
    first: dict[int, int] = {}
    for i, x in enumerate(verts):
        if x in first:
            cyc = walk[first[x] : i]
            total = sum(sign * a.weight[k] for k in cyc)
            if Fraction(total, len(cyc)) == lam:
                return sign * lam, cyc
            first = {y: j for j, y in enumerate(verts[: i + 1])}
        first.setdefault(x, i)
    raise AssertionError("Karp witness extraction failed")


# -- brute force oracle -----------------------------------------------------


def _lasso_cycle(a: Arena, start: int, choice: dict[int, int]) -> list[int]:
    seen: dict[int, int] = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        k = choice[v]
        path.append(k)
        v = a.dst[k]
    return path[seen[v] :]


def _strategy_space(a: Arena, player: int) -> tuple[list[int], list[tuple[int, ...]]]:
    vs = [v for v in range(a.n) if a.owner[v] == player]
    return vs, list(itertools.product(*(a.out[v] for v in vs)))


def _check_cap(a: Arena, cap: int) -> None:
    size = 1
    for v in range(a.n):
        size *= len(a.out[v])
    if size > cap:
        raise ResourceCapError(f"{size} positional strategy pairs exceed the oracle cap {cap}")


def brute_force_outcomes(g, cap: int = 10**6):
    """Cycle mean (per move) of every vertex under every positional pair.

    Returns ``(maxvs, sigmas, minvs, taus, table)`` where
    ``table[i][j][v]`` is the mean from ``v`` under ``sigmas[i]``/``taus[j]``.
    """
    a = _as_arena(g)
    _check_cap(a, cap)
    maxvs, sigmas = _strategy_space(a, MAX)
    minvs, taus = _strategy_space(a, MIN)
    table = []
    for sig in sigmas:
        row = []
        for tau in taus:
            choice = dict(zip(maxvs, sig))
            choice.update(zip(minvs, tau))
            means = []
            for v in range(a.n):
                cyc = _lasso_cycle(a, v, choice)
                means.append(Fraction(sum(a.weight[k] for k in cyc), len(cyc)))
            row.append(means)
        table.append(row)
    return maxvs, sigmas, minvs, taus, table


def brute_force_mpg(g, cap: int = 10**6) -> list[int]:
    """Max wins v iff some positional Max strategy makes every positional Min
    reply produce a lasso with cycle mean >= 0."""
    a = _as_arena(g)
    *_, table = brute_force_outcomes(a, cap)
    return [MAX if any(all(row[j][v] >= 0 for j in range(len(row))) for row in table) else MIN for v in range(a.n)]


def brute_force_values(g, cap: int = 10**6, per_round: bool = True) -> list[Fraction]:
    """max over Max positional strategies of min over Min replies."""
    a = _as_arena(g)
    *_, table = brute_force_outcomes(a, cap)
    vals = [max(min(row[j][v] for j in range(len(row))) for row in table) for v in range(a.n)]
    return [2 * x for x in vals] if per_round else vals


def check_certificate(g, result: MeanPayoffResult, exhaustive: bool = False) -> bool:
    """Independent check that both strategies are sign-correct on their regions.

    Uses :func:`min_cycle_mean` on each player's strategy subgraph restricted
    to its winning region, or simple-cycle enumeration when ``exhaustive``.
    """
    a = _as_arena(g)
    for player in (MAX, MIN):
        region = result.region(player)
        keep = [
            k
            for k in range(len(a.src))
            if a.src[k] in region
            and a.dst[k] in region
            and (a.owner[a.src[k]] != player or result.strategy[player][a.src[k]] == k)
        ]
        # the strategy must not leave the region
        for v in region:
            if a.owner[v] == player and a.dst[result.strategy[player][v]] not in region:
                return False
            if a.owner[v] != player and any(a.dst[k] not in region for k in a.out[v]):
                return False
        if exhaustive:
            from .graph import MultiWeightedGameGraph, Vertex, Edge

            mg = MultiWeightedGameGraph(
                1,
                tuple(Vertex(str(v), a.owner[v]) for v in range(a.n)),
                tuple(Edge(a.src[k], a.dst[k], (a.weight[k],)) for k in range(len(a.src))),
            )
            from .graph import simple_cycles

            for cyc in simple_cycles(mg, keep):
                total = sum(a.weight[k] for k in cyc)
                if (player == MAX and total < 0) or (player == MIN and total >= 0):
                    return False
        else:
            found = min_cycle_mean(a, keep, maximize=(player == MIN))
            if found is not None:
                mean = found[0]
                if (player == MAX and mean < 0) or (player == MIN and mean >= 0):
                    return False
    return True
