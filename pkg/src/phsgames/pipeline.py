"""Game-type dispatch shared by the command line and the experiment scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import mpg
from .bounding import solve_bounding
from .energy_parity import (
    Credit,
    capped_energy_parity_oracle,
    reduce_extended_to_bounding,
    reduce_parity_to_extended,
    solve_arbitrary_credit,
)
from .graph import MultiWeightedGameGraph, Vertex
from .halfspaces import negative_orthant_filter
from .lexenergy import encode_lex_to_mpg, solve_lex_energy
from .phs import build_phs_arena, solve_phs_game, translate_phs_to_lexen

SOLVE_TYPES = ("mpg", "lexen", "phs", "bounding", "energy-arb", "enparity-arb", "enparity-given")
CHAIN = ("enparity", "extended", "bounding", "phs", "lexen", "mpg")
ALIASES = {"energy": "extended"}
UNKNOWN = "unknown-beyond-cap"


@dataclass
class SolveConfig:
    type: str = "bounding"
    engine: str = "strategy-improvement"
    # None: complete bound for phs/bounding, 1 for the energy pipelines
    hs_norm_bound: int | None = None
    orthant_filter: bool = False
    credit: Credit | None = None
    cap: int = 16
    values: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["credit"] = None if self.credit is None else list(self.credit.values)
        return d


@dataclass
class Report:
    type: str
    game: str
    winners: dict[str, object]
    strategies: dict[str, dict[str, str]] = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)
    provenance: list[dict] = field(default_factory=list)
    certificates: dict[str, object] = field(default_factory=dict)
    values: dict[str, str] | None = None
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.values is None:
            del d["values"]
        return d


def _succ_map(g: MultiWeightedGameGraph, strat: dict[int, int]) -> dict[str, str]:
    return {g.vertices[v].id: g.vertices[g.edges[k].dst].id for v, k in sorted(strat.items())}


def _winners(g: MultiWeightedGameGraph, ws) -> dict[str, object]:
    return {v.id: w for v, w in zip(g.vertices, ws)}


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def strip_priorities(g: MultiWeightedGameGraph) -> MultiWeightedGameGraph:
    vs = tuple(Vertex(v.id, v.owner) for v in g.vertices)
    return MultiWeightedGameGraph(g.dim, vs, g.edges, g.extended, g.name)


def solve(g: MultiWeightedGameGraph, cfg: SolveConfig) -> Report:
    """Solve ``g`` as the game type named in ``cfg``."""
    t = cfg.type
    if t not in SOLVE_TYPES:
        raise ValueError(f"unknown game type {t!r}; choose from {', '.join(SOLVE_TYPES)}")
    rep = Report(t, g.name, {}, config=cfg.to_dict())
    if t == "mpg":
        res = mpg.solve_threshold(g, cfg.engine)
        rep.winners = _winners(g, res.winners)
        rep.strategies = {"player1": _succ_map(g, res.strategy[1]), "player2": _succ_map(g, res.strategy[2])}
        rep.certificates["strategies_sign_correct"] = mpg.check_certificate(g, res)
        if cfg.values:
            vals = mpg.compute_values(g, cfg.engine)
            rep.values = {v.id: _frac(x) for v, x in zip(g.vertices, vals)}
        rep.provenance.append({"construction": "mean-payoff threshold", "engine": cfg.engine, "vertices": g.n})
    elif t == "lexen":
        res = solve_lex_energy(g, cfg.engine)
        rep.winners = _winners(g, res.winners)
        rep.strategies = {"player1": _succ_map(g, res.strategy[1]), "player2": _succ_map(g, res.strategy[2])}
        rep.provenance.append(
            {"construction": "lexicographic encoding", "multipliers": list(res.encoded.multipliers), "engine": cfg.engine}
        )
    elif t in ("phs", "bounding"):
        keep = negative_orthant_filter if cfg.orthant_filter else None
        if t == "phs":
            res = solve_phs_game(g, cfg.hs_norm_bound, keep, cfg.engine)
            a = res.arena
            rep.strategies = {
                "player2": {a.vid(p): a.vid(a.dst[k]) for p, k in sorted(res.p2_strategy.choice.items())},
            }
            phs_res = res
        else:
            res = solve_bounding(g, cfg.hs_norm_bound, keep, cfg.engine)
            rep.strategies = {"player2": _succ_map(g, res.p2_strategy)}
            rep.certificates["player2_strategy_oblivious"] = True
            phs_res = res.phs
        rep.winners = _winners(g, res.winners)
        rep.caveats = list(res.caveats)
        rep.provenance.append(_arena_provenance(phs_res.arena, cfg))
    elif t in ("energy-arb", "enparity-arb"):
        src = strip_priorities(g) if t == "energy-arb" else g
        B = 1 if cfg.hs_norm_bound is None else cfg.hs_norm_bound
        res = solve_arbitrary_credit(src, B, cfg.orthant_filter, cfg.engine)
        rep.winners = _winners(g, res.winners)
        rep.strategies = {"player2": _succ_map(g, res.p2_strategy)}
        rep.caveats = list(res.caveats)
        for cert in res.certificates:
            rep.provenance.append(cert.report())
        rep.provenance.append(_arena_provenance(res.bounding.phs.arena, cfg))
        if res.confirmed:
            rep.certificates["player1_confirmed_by_capped_oracle"] = {
                g.vertices[v].id: {"credit": list(c.values), "cap": cap} for v, (c, cap) in res.confirmed.items()
            }
            unconfirmed = [v.id for v, w in zip(g.vertices, res.winners) if w == 1 and g.index[v.id] not in res.confirmed]
            if not unconfirmed and rep.caveats:
                rep.caveats.append("every Player-1 win confirmed by the capped oracle")
    else:
        if cfg.credit is None:
            raise ValueError("enparity-given needs --credit")
        ws = capped_energy_parity_oracle(g, cfg.credit, cfg.cap)
        rep.winners = {v.id: (1 if w == 1 else UNKNOWN) for v, w in zip(g.vertices, ws)}
        rep.caveats = [f"Player-2 answers only hold at cap {cfg.cap}; beyond it the answer is unknown"]
        rep.provenance.append({"construction": "capped energy parity game", "cap": cfg.cap, "credit": list(cfg.credit.values)})
    return rep


def _arena_provenance(a, cfg: SolveConfig) -> dict:
    return {
        "construction": "perfect half space product",
        "norm_bound": a.bound,
        "complete": a.complete,
        "orthant_filter": a.filtered,
        "half_spaces": a.m,
        "product_vertices": a.n,
        "product_edges": len(a.src),
        "engine": cfg.engine,
    }


def chain_step(g: MultiWeightedGameGraph, src: str, hs_norm_bound: int | None = None):
    """Apply one reduction; returns (next graph, provenance entry)."""
    if src == "enparity":
        out, cert = reduce_parity_to_extended(g)
        return out, cert.report()
    if src == "extended":
        out, cert = reduce_extended_to_bounding(g)
        return out, cert.report()
    if src == "bounding":
        # the two games share their graph; only the winning condition changes
        return g, {"construction": "bounding-to-phs (same graph)"}
    if src == "phs":
        a = build_phs_arena(g, hs_norm_bound)
        return translate_phs_to_lexen(a), {"construction": "phs-to-lexen", "norm_bound": a.bound, "complete": a.complete}
    if src == "lexen":
        enc = encode_lex_to_mpg(g)
        return enc.as_graph(), {"construction": "lexen-to-mpg", "multipliers": list(enc.multipliers)}
    raise ValueError(f"no reduction out of {src!r}")


def reduce(g: MultiWeightedGameGraph, src: str, dst: str, hs_norm_bound: int | None = None):
    """Run the chain from ``src`` to ``dst``; returns (graph, provenance)."""
    src, dst = ALIASES.get(src, src), ALIASES.get(dst, dst)
    for x in (src, dst):
        if x not in CHAIN:
            raise ValueError(f"unknown game kind {x!r}; choose from {', '.join(CHAIN)} or energy")
    i, j = CHAIN.index(src), CHAIN.index(dst)
    if i > j:
        raise ValueError(f"the chain only runs forward: {' -> '.join(CHAIN)}")
    prov = []
    for step in CHAIN[i:j]:
        if step == "enparity" and not g.has_priorities:
            prov.append({"construction": "parity-to-extended skipped (no priorities)"})
            continue
        g, p = chain_step(g, step, hs_norm_bound)
        prov.append(p)
    return g, prov

