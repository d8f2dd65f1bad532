"""Multi-weighted game graphs: data model, game-file format, validation,
random generation and path/cycle utilities.

Vertices are addressed by free-form string ids in files and by dense
integer indices everywhere else.  Player 1 owns triangle vertices and
Player 2 owns square vertices, as in the usual drawings of these games.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

INT64_MAX = 2**63 - 1


class _Omega:
    """The extended weight that lets Player 1 pick any non-negative value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "omega"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


class GameError(Exception):
    """Base class for errors raised on bad game input."""


class GameSyntaxError(GameError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GameInvariantError(GameError):
    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class ResourceCapError(Exception):
    """Raised when a construction would exceed its configured size cap."""


@dataclass(frozen=True)
class Vertex:
    id: str
    owner: int
    priority: int | None = None


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: tuple


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str


@dataclass(frozen=True)
class MultiWeightedGameGraph:
    """A finite game graph whose edges carry ``dim``-dimensional weights.

    Construction does not check the standing assumptions; call
    :func:`validate` or :meth:`check` for that.  Graphs are treated as
    immutable values.
    """

    dim: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    extended: bool = False
    name: str = "game"

    @classmethod
    def build(
        cls,
        dim: int,
        vertices: Iterable[tuple],
        edges: Iterable[tuple],
        extended: bool = False,
        name: str = "game",
    ) -> "MultiWeightedGameGraph":
        """Build from ``(id, owner[, priority])`` and ``(src_id, dst_id, weight)``."""
        vs = tuple(Vertex(*v) for v in vertices)
        index = {v.id: i for i, v in enumerate(vs)}
        es = []
        for src, dst, w in edges:
            if isinstance(w, int) or w is OMEGA:
                w = (w,)
            es.append(Edge(index[src], index[dst], tuple(w)))
        return cls(dim, vs, tuple(es), extended, name)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_edges(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for k, e in enumerate(self.edges):
            out[e.src].append(k)
        return out

    @cached_property
    def edge_between(self) -> dict[tuple[int, int], int]:
        return {(e.src, e.dst): k for k, e in enumerate(self.edges)}

    @cached_property
    def owners(self) -> list[int]:
        return [v.owner for v in self.vertices]

    def ids(self, indices: Iterable[int]) -> list[str]:
        return [self.vertices[i].id for i in indices]

    def vertices_of(self, player: int) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.owner == player]

    @property
    def norm(self) -> int:
        """Infinity norm of the edge weights, counting omega as 1."""
        best = 0
        for e in self.edges:
            for x in e.weight:
                best = max(best, 1 if x is OMEGA else abs(x))
        return best

    @property
    def has_priorities(self) -> bool:
        return any(v.priority is not None for v in self.vertices)

    def weight(self, src: int, dst: int) -> tuple:
        return self.edges[self.edge_between[(src, dst)]].weight

    def subgraph(self, edge_indices: Iterable[int]) -> "MultiWeightedGameGraph":
        """Same vertices, only the selected edges (in increasing index order)."""
        keep = sorted(set(edge_indices))
        return MultiWeightedGameGraph(
            self.dim, self.vertices, tuple(self.edges[k] for k in keep), self.extended, self.name
        )

    def check(self) -> None:
        report = validate(self)
        if report:
            first = report[0]
            raise GameInvariantError(first.rule, first.message)


def validate(g: MultiWeightedGameGraph) -> list[Violation]:
    """List every standing assumption the graph violates (empty if none)."""
    report: list[Violation] = []
    if g.dim < 1:
        report.append(Violation("dimension", f"dimension must be positive, got {g.dim}"))
    seen_ids: set[str] = set()
    for v in g.vertices:
        if v.id in seen_ids:
            report.append(Violation("duplicate-vertex", f"vertex {v.id} declared twice"))
        seen_ids.add(v.id)
        if v.owner not in (1, 2):
            report.append(Violation("owner", f"vertex {v.id} has owner {v.owner}"))
        if v.priority is not None and v.priority < 1:
            report.append(Violation("priority", f"vertex {v.id} has priority {v.priority}"))
    pairs: dict[tuple[int, int], tuple] = {}
    for e in g.edges:
        s, t = g.vertices[e.src], g.vertices[e.dst]
        if len(e.weight) != g.dim:
            report.append(
                Violation("dimension", f"edge {s.id}->{t.id} has {len(e.weight)} weights, expected {g.dim}")
            )
        if s.owner == t.owner:
            report.append(Violation("alternation", f"edge {s.id}->{t.id} joins two Player-{s.owner} vertices"))
        key = (e.src, e.dst)
        if key in pairs:
            if pairs[key] != e.weight:
                report.append(Violation("determinacy", f"edges {s.id}->{t.id} carry different weights"))
            else:
                report.append(Violation("determinacy", f"edge {s.id}->{t.id} listed twice"))
        pairs[key] = e.weight
        if any(x is OMEGA for x in e.weight):
            if not g.extended:
                report.append(Violation("omega", f"edge {s.id}->{t.id} uses omega in a non-extended graph"))
            elif s.owner != 1:
                report.append(Violation("omega", f"edge {s.id}->{t.id} uses omega but leaves a Player-2 vertex"))
    for i, out in enumerate(g.out_edges):
        if not out:
            report.append(Violation("out-degree", f"vertex {g.vertices[i].id} has no outgoing edge"))
    if g.edges and g.norm == 0:
        report.append(Violation("zero-norm", "all edge weights are zero"))
    return report


def normalize(g: MultiWeightedGameGraph) -> MultiWeightedGameGraph:
    """Restore strict alternation by inserting opposite-owner relay vertices.

    An edge between two same-owner vertices is replaced by the edge into a
    fresh relay (carrying the original weight) followed by a zero-weight
    edge out of it.  Duplicate edges with distinct weights are ambiguous and
    rejected.
    """
    for viol in validate(g):
        if viol.rule == "determinacy" and "different" in viol.message:
            raise GameInvariantError(viol.rule, viol.message)
    vertices = list(g.vertices)
    taken = {v.id for v in vertices}
    edges: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    zero = (0,) * g.dim
    for e in g.edges:
        if (e.src, e.dst) in seen:
            continue
        seen.add((e.src, e.dst))
        s, t = g.vertices[e.src], g.vertices[e.dst]
        if s.owner != t.owner:
            edges.append(e)
            continue
        rid = f"{s.id}~{t.id}"
        while rid in taken:
            rid += "'"
        taken.add(rid)
        vertices.append(Vertex(rid, 3 - s.owner))
        r = len(vertices) - 1
        edges.append(Edge(e.src, r, e.weight))
        edges.append(Edge(r, e.dst, zero))
    return MultiWeightedGameGraph(g.dim, tuple(vertices), tuple(edges), g.extended, g.name)


# -- game file format -------------------------------------------------------


def _parse_weight(tok: str, line: int):
    if tok == "omega":
        return OMEGA
    try:
        x = int(tok)
    except ValueError:
        raise GameSyntaxError(line, f"bad weight {tok!r}") from None
    if abs(x) > INT64_MAX:
        raise GameSyntaxError(line, f"weight {tok} exceeds the 64-bit input range")
    return x


def parse_game(text: str, check: bool = True) -> MultiWeightedGameGraph:
    """Parse the line-oriented game format; with ``check`` also enforce the
    standing assumptions (alternation, determinacy, out-degree, norm, omega)."""
    name = "game"
    dim = None
    extended = False
    vertices: list[Vertex] = []
    index: dict[str, int] = {}
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head == "game":
            if len(toks) != 2:
                raise GameSyntaxError(lineno, "expected 'game <name>'")
            name = toks[1]
        elif head == "dim":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise GameSyntaxError(lineno, "expected 'dim <positive integer>'")
            dim = int(toks[1])
        elif head == "extended":
            if len(toks) != 1:
                raise GameSyntaxError(lineno, "unexpected tokens after 'extended'")
            extended = True
        elif head == "vertex":
            if len(toks) < 3:
                raise GameSyntaxError(lineno, "expected 'vertex <id> owner=<1|2> [prio=<k>]'")
            vid = toks[1]
            owner = prio = None
            for attr in toks[2:]:
                key, _, val = attr.partition("=")
                if key == "owner" and val in ("1", "2"):
                    owner = int(val)
                elif key == "prio" and val.isdigit() and int(val) >= 1:
                    prio = int(val)
                else:
                    raise GameSyntaxError(lineno, f"bad vertex attribute {attr!r}")
            if owner is None:
                raise GameSyntaxError(lineno, f"vertex {vid} lacks owner=")
            if vid in index:
                raise GameSyntaxError(lineno, f"vertex {vid} declared twice")
            index[vid] = len(vertices)
            vertices.append(Vertex(vid, owner, prio))
        elif head == "edge":
            if dim is None:
                raise GameSyntaxError(lineno, "edge before 'dim'")
            if len(toks) < 3:
                raise GameSyntaxError(lineno, "expected 'edge <src> <dst> <w1> ... <wd>'")
            src, dst = toks[1], toks[2]
            for vid in (src, dst):
                if vid not in index:
                    raise GameSyntaxError(lineno, f"unknown vertex {vid}")
            ws = tuple(_parse_weight(t, lineno) for t in toks[3:])
            if len(ws) != dim:
                raise GameInvariantError(
                    "dimension", f"line {lineno}: edge {src}->{dst} has {len(ws)} weights, expected {dim}"
                )
            edges.append(Edge(index[src], index[dst], ws))
        else:
            raise GameSyntaxError(lineno, f"unknown directive {head!r}")
    if dim is None:
        raise GameSyntaxError(0, "missing 'dim' line")
    g = MultiWeightedGameGraph(dim, tuple(vertices), tuple(edges), extended, name)
    if check:
        g.check()
    return g


def load_game(path, check: bool = True) -> MultiWeightedGameGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read(), check=check)


def _fmt_weight(x) -> str:
    return "omega" if x is OMEGA else str(x)


def serialize_game(g: MultiWeightedGameGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [f"game {g.name}", f"dim {g.dim}"]
    if g.extended:
        lines.append("extended")
    for v in g.vertices:
        prio = f" prio={v.priority}" if v.priority is not None else ""
        lines.append(f"vertex {v.id} owner={v.owner}{prio}")
    for e in g.edges:
        ws = " ".join(_fmt_weight(x) for x in e.weight)
        lines.append(f"edge {g.vertices[e.src].id} {g.vertices[e.dst].id} {ws}")
    return "\n".join(lines) + "\n"


# -- random generation ------------------------------------------------------


def random_game(
    n: int,
    d: int,
    max_weight: int,
    seed: int,
    extended: bool = False,
    priorities: bool = False,
    max_priority: int = 4,
    max_out_degree: int = 3,
    omega_rate: float = 0.25,
) -> MultiWeightedGameGraph:
    """A random graph satisfying every standing assumption.

    Deterministic for a fixed seed.  Owners are balanced, every vertex gets
    between 1 and ``max_out_degree`` successors of the other player, and the
    weight norm is exactly ``max_weight``.
    """
    if n < 2:
        raise ValueError("need at least two vertices to alternate")
    if d < 1 or max_weight < 1:
        raise ValueError("need d >= 1 and max_weight >= 1")
    if priorities and max_priority < 1:
        raise ValueError("max_priority must be positive")
    rng = random.Random(seed)
    n1 = rng.randint(1, n - 1)
    owners = [1] * n1 + [2] * (n - n1)
    rng.shuffle(owners)
    vertices = []
    for i, o in enumerate(owners):
        prio = rng.randint(1, max_priority) if priorities else None
        vertices.append(Vertex(f"{'p' if o == 1 else 'q'}{i}", o, prio))
    side = {1: [i for i in range(n) if owners[i] == 1], 2: [i for i in range(n) if owners[i] == 2]}
    edges = []
    for i, o in enumerate(owners):
        targets = side[3 - o]
        k = rng.randint(1, min(max_out_degree, len(targets)))
        for t in sorted(rng.sample(targets, k)):
            w = [rng.randint(-max_weight, max_weight) for _ in range(d)]
            if extended and o == 1:
                w = [OMEGA if rng.random() < omega_rate else x for x in w]
            edges.append(Edge(i, t, tuple(w)))
    # pin the norm to max_weight
    ints = [(k, c) for k, e in enumerate(edges) for c, x in enumerate(e.weight) if x is not OMEGA]
    if not ints or max(abs(edges[k].weight[c]) for k, c in ints) < max_weight:
        if ints:
            k, c = rng.choice(ints)
        else:
            k, c = 0, 0
        w = list(edges[k].weight)
        w[c] = rng.choice((-max_weight, max_weight))
        edges[k] = Edge(edges[k].src, edges[k].dst, tuple(w))
    return MultiWeightedGameGraph(d, tuple(vertices), tuple(edges), extended, f"random-{seed}")


# -- paths, cycles, lassos --------------------------------------------------


def path_weight(g: MultiWeightedGameGraph, path: Sequence[int]) -> tuple[int, ...]:
    """Componentwise sum of the weights of a sequence of edge indices."""
    total = [0] * g.dim
    for k in path:
        for c, x in enumerate(g.edges[k].weight):
            if x is OMEGA:
                raise ValueError("path crosses an omega weight; instantiate it first")
            total[c] += x
    return tuple(total)


def vertex_path_edges(g: MultiWeightedGameGraph, vertices: Sequence) -> list[int]:
    """Edge indices of the path visiting ``vertices`` (ids or indices)."""
    idx = [g.index[v] if isinstance(v, str) else v for v in vertices]
    out = []
    for a, b in zip(idx, idx[1:]):
        try:
            out.append(g.edge_between[(a, b)])
        except KeyError:
            raise ValueError(f"no edge {g.vertices[a].id}->{g.vertices[b].id}") from None
    return out


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic play: ``prefix`` then ``cycle`` repeated forever.

    Both are vertex-id sequences.  ``cycle`` starts and ends at the same
    vertex; a nonempty ``prefix`` ends where the cycle starts.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if len(self.cycle) < 2 or self.cycle[0] != self.cycle[-1]:
            raise ValueError("cycle must be a closed vertex sequence of length >= 2")
        if self.prefix and self.prefix[-1] != self.cycle[0]:
            raise ValueError("prefix must end where the cycle starts")

    def edges(self, g: MultiWeightedGameGraph) -> tuple[list[int], list[int]]:
        pre = vertex_path_edges(g, self.prefix) if len(self.prefix) > 1 else []
        return pre, vertex_path_edges(g, self.cycle)

    def unroll(self, times: int) -> list[str]:
        """Vertex sequence of the prefix followed by ``times`` cycle passes."""
        seq = list(self.prefix) if self.prefix else [self.cycle[0]]
        for _ in range(times):
            seq.extend(self.cycle[1:])
        return seq


def parse_lasso(text: str) -> Lasso:
    prefix: tuple[str, ...] = ()
    cycle = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "prefix":
            prefix = tuple(rest)
        elif head == "cycle":
            cycle = tuple(rest)
        else:
            raise GameSyntaxError(lineno, f"unknown lasso directive {head!r}")
    if cycle is None:
        raise GameSyntaxError(0, "lasso lacks a 'cycle' line")
    try:
        return Lasso(prefix, cycle)
    except ValueError as exc:
        raise GameSyntaxError(0, str(exc)) from None


def play_positional(g: MultiWeightedGameGraph, start: int, choice: dict[int, int]) -> Lasso:
    """The lasso produced when every vertex follows ``choice`` (vertex -> edge)."""
    seen: dict[int, int] = {}
    seq = []
    v = start
    while v not in seen:
        seen[v] = len(seq)
        seq.append(v)
        v = g.edges[choice[v]].dst
    k = seen[v]
    ids = g.ids(seq)
    return Lasso(tuple(ids[: k + 1]), tuple(ids[k:] + [g.vertices[v].id]))


@dataclass
class PoppedCycle:
    items: list
    start: int
    end: int


@dataclass
class CycleDecomposition:
    cycles: list[PoppedCycle] = field(default_factory=list)
    residual: list = field(default_factory=list)
    residual_positions: list[int] = field(default_factory=list)


def cycle_decompose(
    play: Sequence[Hashable],
    pivots: Callable[[Hashable], bool] = lambda _: True,
    key: Callable[[Hashable], Hashable] = lambda x: x,
) -> CycleDecomposition:
    """Stack-based factoring of a finite play into cycles plus a residual.

    Items are pushed in order; when a pushed item is a pivot whose key is
    already on the stack, the segment from that earlier occurrence up to the
    new item is popped as a cycle and the new item is pushed back.  With
    ``pivots`` = all items this yields simple cycles; with ``pivots`` = the
    Player-1 vertices (and ``key`` projecting product vertices to base
    vertices) it yields the V1-simple cycles.
    """
    out = CycleDecomposition()
    stack: list[tuple[Hashable, int]] = []
    where: dict[Hashable, int] = {}
    for pos, item in enumerate(play):
        k = key(item)
        if pivots(item) and k in where:
            s = where[k]
            seg = stack[s:]
            out.cycles.append(PoppedCycle([x for x, _ in seg] + [item], seg[0][1], pos))
            for x, _ in seg:
                if pivots(x):
                    where.pop(key(x), None)
            del stack[s:]
        if pivots(item):
            where[k] = len(stack)
        stack.append((item, pos))
    out.residual = [x for x, _ in stack]
    out.residual_positions = [p for _, p in stack]
    return out


def simple_cycles(g: MultiWeightedGameGraph, edge_indices: Iterable[int] | None = None) -> Iterator[list[int]]:
    """All simple cycles (as edge-index lists), each reported once.

    A cycle is reported from its smallest vertex; exhaustive, so only for
    small graphs.
    """
    ks = range(len(g.edges)) if edge_indices is None else sorted(set(edge_indices))
    adj: list[list[int]] = [[] for _ in g.vertices]
    for k in ks:
        adj[g.edges[k].src].append(k)
    for root in range(g.n):
        stack = [(root, iter(adj[root]))]
        on_path = {root}
        path: list[int] = []
        while stack:
            v, it = stack[-1]
            k = next(it, None)
            if k is None:
                stack.pop()
                on_path.discard(v)
                if path:
                    path.pop()
                continue
            u = g.edges[k].dst
            if u == root:
                yield path + [k]
            elif u > root and u not in on_path:
                on_path.add(u)
                path.append(k)
                stack.append((u, iter(adj[u])))


def reachable(g: MultiWeightedGameGraph, sources: Iterable[int], edge_indices: Iterable[int] | None = None) -> set[int]:
    ks = range(len(g.edges)) if edge_indices is None else edge_indices
    adj: list[list[int]] = [[] for _ in g.vertices]
    for k in ks:
        adj[g.edges[k].src].append(g.edges[k].dst)
    seen = set(sources)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


# -- DOT export -------------------------------------------------------------

_PLAYER_COLOR = {1: "#1f77b4", 2: "#d62728"}


def _dot_label(w) -> str:
    return "(" + ",".join("ω" if x is OMEGA else str(x) for x in w) + ")"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    g: MultiWeightedGameGraph,
    winners: dict[str, int] | None = None,
    strategy: dict[str, str] | None = None,
) -> str:
    """Graphviz text: triangles for Player 1, boxes for Player 2, weights as
    edge labels; optional winner colouring and bold strategy edges."""
    lines = [f"digraph {_dot_quote(g.name)} {{"]
    for v in g.vertices:
        attrs = [f"shape={'triangle' if v.owner == 1 else 'box'}"]
        label = v.id if v.priority is None else f"{v.id}\\np={v.priority}"
        attrs.append(f"label={_dot_quote(label)}")
        if winners and v.id in winners:
            attrs.append(f'style=filled fillcolor="{_PLAYER_COLOR[winners[v.id]]}"')
        lines.append(f"  {_dot_quote(v.id)} [{' '.join(attrs)}];")
    for e in g.edges:
        s, t = g.vertices[e.src].id, g.vertices[e.dst].id
        attrs = [f"label={_dot_quote(_dot_label(e.weight))}"]
        if strategy and strategy.get(s) == t:
            attrs.append("penwidth=2.5")
        lines.append(f"  {_dot_quote(s)} -> {_dot_quote(t)} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lex_sign(vec: Sequence[int]) -> int:
    """-1, 0 or 1 according to the lexicographic sign of ``vec``."""
    for x in vec:
        if x:
            return -1 if x < 0 else 1
    return 0


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g
