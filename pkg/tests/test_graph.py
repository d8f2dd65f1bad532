import pytest
from hypothesis import given, strategies as st

from helpers import GAMES
from phsgames.graph import (
    OMEGA,
    GameInvariantError,
    GameSyntaxError,
    Lasso,
    MultiWeightedGameGraph,
    cycle_decompose,
    export_dot,
    load_game,
    normalize,
    parse_game,
    parse_lasso,
    path_weight,
    play_positional,
    random_game,
    serialize_game,
    simple_cycles,
    validate,
    vertex_path_edges,
)

random_games = st.builds(
    random_game,
    n=st.integers(2, 7),
    d=st.integers(1, 3),
    max_weight=st.integers(1, 4),
    seed=st.integers(0, 10**6),
    extended=st.booleans(),
    priorities=st.booleans(),
)


def test_fig1_shape(fig1):
    assert (fig1.n, len(fig1.edges), fig1.dim, fig1.norm) == (6, 8, 2, 1)
    assert validate(fig1) == []
    assert fig1.owners == [1, 1, 2, 2, 2, 2]


def test_dimension_mismatch_rejected():
    text = "dim 2\nvertex a owner=1\nvertex b owner=2\nedge a b 1\nedge b a 0 0\n"
    with pytest.raises(GameInvariantError) as exc:
        parse_game(text)
    assert exc.value.rule == "dimension"


def test_zero_norm_rejected():
    text = "dim 1\nvertex a owner=1\nvertex b owner=2\nedge a b 0\nedge b a 0\n"
    with pytest.raises(GameInvariantError) as exc:
        parse_game(text)
    assert exc.value.rule == "zero-norm"


def test_syntax_error_reports_line():
    with pytest.raises(GameSyntaxError) as exc:
        parse_game("dim 1\nvertex a owner=3\n")
    assert exc.value.line == 2


@pytest.mark.parametrize(
    "text, rule",
    [
        ("dim 1\nvertex a owner=1\nvertex b owner=1\nedge a b 1\nedge b a 1\n", "alternation"),
        ("dim 1\nvertex a owner=1\nvertex b owner=2\nedge a b 1\n", "out-degree"),
        ("dim 1\nvertex a owner=1\nvertex b owner=2\nedge a b omega\nedge b a 1\n", "omega"),
        ("dim 1\nextended\nvertex a owner=1\nvertex b owner=2\nedge a b 1\nedge b a omega\n", "omega"),
    ],
)
def test_invariant_rules(text, rule):
    g = parse_game(text, check=False)
    assert rule in {v.rule for v in validate(g)}


def test_duplicate_edge_determinacy():
    g = MultiWeightedGameGraph.build(1, [("a", 1), ("b", 2)], [("a", "b", 1), ("a", "b", 2), ("b", "a", 0)])
    assert [v.rule for v in validate(g)] == ["determinacy"]
    with pytest.raises(GameInvariantError):
        normalize(g)


def test_normalize_inserts_relay():
    g = MultiWeightedGameGraph.build(1, [("a", 1), ("b", 1), ("c", 2)], [("a", "b", 3), ("b", "c", 0), ("c", "a", 0)])
    h = normalize(g)
    assert validate(h) == []
    assert h.n == 4
    relay = h.vertices[3]
    assert relay.owner == 2
    assert h.weight(h.index["a"], 3) == (3,)
    assert h.weight(3, h.index["b"]) == (0,)


def test_round_trip_fig1(fig1):
    assert parse_game(serialize_game(fig1)) == fig1


def test_omega_serialised_as_token():
    g = MultiWeightedGameGraph.build(2, [("a", 1), ("b", 2)], [("a", "b", (OMEGA, 1)), ("b", "a", (0, 0))], extended=True)
    text = serialize_game(g)
    assert "edge a b omega 1" in text
    assert parse_game(text) == g


def test_priorities_preserved(fig5):
    assert "prio=3" in serialize_game(fig5)
    assert parse_game(serialize_game(fig5)) == fig5


@given(random_games)
def test_round_trip_random(g):
    assert parse_game(serialize_game(g)) == g


@given(random_games)
def test_random_games_valid(g):
    assert validate(g) == []


def test_random_game_contract():
    g = random_game(6, 2, 2, 7)
    assert validate(g) == [] and g.norm == 2
    assert random_game(6, 2, 2, 7) == g
    h = random_game(4, 1, 1, 0, priorities=True, max_priority=4)
    assert all(1 <= v.priority <= 4 for v in h.vertices)
    assert all(v.priority is None for v in g.vertices)
    assert not any(x is OMEGA for e in g.edges for x in e.weight)
    with pytest.raises(ValueError):
        random_game(1, 1, 1, 0)


def test_path_weight_examples(fig1):
    cyan = vertex_path_edges(fig1, ["vL", "A", "vR", "B", "vL"])
    assert path_weight(fig1, cyan) == (-1, -1)
    assert path_weight(fig1, vertex_path_edges(fig1, ["vL", "L1", "vL"])) == (1, -1)
    assert path_weight(fig1, []) == (0, 0)


def test_path_weight_rejects_omega():
    g = MultiWeightedGameGraph.build(1, [("a", 1), ("b", 2)], [("a", "b", OMEGA), ("b", "a", 1)], extended=True)
    with pytest.raises(ValueError):
        path_weight(g, [0])


def test_cycle_decompose_fig1_all_pivots():
    play = ["vL", "A", "vR", "B", "vL", "L1", "vL"]
    dec = cycle_decompose(play)
    assert [c.items for c in dec.cycles] == [["vL", "A", "vR", "B", "vL"], ["vL", "L1", "vL"]]
    assert [(c.start, c.end) for c in dec.cycles] == [(0, 4), (4, 6)]
    assert dec.residual == ["vL"]


def test_cycle_decompose_single_item():
    dec = cycle_decompose(["vL"])
    assert dec.cycles == [] and dec.residual == ["vL"]


def test_cycle_decompose_player1_pivots(fig1):
    p1 = {v.id for v in fig1.vertices if v.owner == 1}
    dec = cycle_decompose(["vL", "A", "vR", "R1", "vR"], pivots=lambda x: x in p1)
    assert [c.items for c in dec.cycles] == [["vR", "R1", "vR"]]
    assert dec.residual == ["vL", "A", "vR"]


def _random_play(g, seed, length):
    import random

    rng = random.Random(seed)
    starts = g.vertices_of(1)
    v = rng.choice(starts)
    play = [v]
    for _ in range(length):
        k = rng.choice(g.out_edges[v])
        v = g.edges[k].dst
        play.append(v)
    return play


@given(random_games.filter(lambda g: not g.extended), st.integers(0, 10**6), st.integers(0, 40), st.booleans())
def test_cycle_decompose_properties(g, seed, length, only_p1):
    play = _random_play(g, seed, length)
    pivot = (lambda v: g.owners[v] == 1) if only_p1 else (lambda v: True)
    dec = cycle_decompose(play, pivots=pivot)
    total = [0] * g.dim
    for c in dec.cycles:
        assert c.items[0] == c.items[-1]
        inner = [v for v in c.items[1:-1] if pivot(v)]
        assert len(inner) == len(set(inner)) and c.items[0] not in inner
        for i, x in enumerate(path_weight(g, vertex_path_edges(g, c.items))):
            total[i] += x
    for i, x in enumerate(path_weight(g, vertex_path_edges(g, dec.residual))):
        total[i] += x
    assert tuple(total) == path_weight(g, vertex_path_edges(g, play))
    if only_p1:
        assert len(dec.residual) <= 2 * len(g.vertices_of(1))


def test_simple_cycles_fig1(fig1):
    totals = sorted(path_weight(fig1, c) for c in simple_cycles(fig1))
    assert totals == [(-1, -1), (-1, 1), (1, -1)]


def test_play_positional_and_lasso(fig1):
    choice = {0: 4, 1: 6, 2: 1, 3: 3, 4: 5, 5: 7}
    lasso = play_positional(fig1, 0, choice)
    assert lasso.cycle == ("vL", "L1", "vL")
    assert lasso.unroll(2) == ["vL", "L1", "vL", "L1", "vL"]
    text = "prefix vL A vR\ncycle vR R1 vR\n"
    l2 = parse_lasso(text)
    pre, cyc = l2.edges(fig1)
    assert path_weight(fig1, cyc) == (-1, 1) and len(pre) == 2
    with pytest.raises(ValueError):
        Lasso(("vL",), ("vR", "R1"))
    with pytest.raises(GameSyntaxError):
        parse_lasso("prefix vL\n")


def test_export_dot(fig1):
    dot = export_dot(fig1)
    assert dot.count("shape=") == 6 and dot.count("->") == 8
    assert dot.count("shape=triangle") == 2
    painted = export_dot(fig1, winners={v.id: 2 for v in fig1.vertices})
    assert painted.count('fillcolor="#d62728"') == 6
    g = MultiWeightedGameGraph.build(1, [("a", 1), ("b", 2)], [("a", "b", OMEGA), ("b", "a", 1)], extended=True)
    assert "(ω)" in export_dot(g)


def test_games_directory_assets():
    for name in ("fig1.game", "fig5.game", "fig6.golden.game"):
        assert validate(load_game(GAMES / name)) == []


def test_weights_beyond_int64_rejected():
    with pytest.raises(GameSyntaxError):
        parse_game(f"dim 1\nvertex a owner=1\nvertex b owner=2\nedge a b {2**63}\nedge b a 0\n")
    g = parse_game(f"dim 1\nvertex a owner=1\nvertex b owner=2\nedge a b {2**63 - 1}\nedge b a 0\n")
    assert g.norm == 2**63 - 1


@given(random_games.filter(lambda g: not g.extended), st.integers(0, 10**6), st.integers(0, 60))
def test_residual_norm_bounded(g, seed, length):
    # with every vertex a pivot the residual is a simple path
    dec = cycle_decompose(_random_play(g, seed, length))
    assert len(dec.residual) <= g.n
    res = path_weight(g, vertex_path_edges(g, dec.residual))
    assert all(abs(x) <= g.n * g.norm for x in res)
