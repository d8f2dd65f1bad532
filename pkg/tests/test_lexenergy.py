import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import FIG3_WEIGHTS, cycle_total, lex_sign
from phsgames.graph import OMEGA, Lasso, MultiWeightedGameGraph, random_game, reachable, simple_cycles
from phsgames.lexenergy import encode_lex_to_mpg, encode_weights, lasso_lex_energy_winner, solve_lex_energy
from phsgames.mpg import ENGINES, check_certificate, solve_threshold

lex_games = st.builds(
    random_game,
    n=st.integers(2, 8),
    d=st.integers(1, 3),
    max_weight=st.integers(1, 3),
    seed=st.integers(0, 10**6),
)


def brute_force_lex_energy(g):
    """Player 1 wins v iff some positional strategy keeps every cycle
    reachable from v lexicographically non-negative."""
    p1 = g.vertices_of(1)
    win = [2] * g.n
    for choice in itertools.product(*(g.out_edges[v] for v in p1)):
        chosen = dict(zip(p1, choice))
        ks = [k for k, e in enumerate(g.edges) if g.owners[e.src] == 2 or chosen[e.src] == k]
        bad = set()
        for cyc in simple_cycles(g, ks):
            if lex_sign(cycle_total(g, cyc)) < 0:
                bad.add(g.edges[cyc[0]].src)
        for v in range(g.n):
            if win[v] == 2 and not (reachable(g, [v], ks) & bad):
                win[v] = 1
    return win


def test_fig1_encoding(fig1):
    enc = encode_lex_to_mpg(fig1)
    assert enc.weights == FIG3_WEIGHTS
    assert enc.multipliers == (7,)
    assert enc.norms == (7, 1)
    assert enc.as_graph().dim == 1


def test_fig1_player1_everywhere(fig1):
    for engine in ENGINES:
        assert solve_lex_energy(fig1, engine).winners == [1] * 6


def test_encoding_rejects_omega():
    g = MultiWeightedGameGraph.build(
        2, [("a", 1), ("b", 2)], [("a", "b", (OMEGA, 1)), ("b", "a", (0, -1))], extended=True
    )
    with pytest.raises(ValueError):
        encode_lex_to_mpg(g)


def test_encode_weights_three_dims():
    w, norms, mults = encode_weights([(1, 0, -2), (0, -1, 1)], n=2, dim=3)
    # innermost norm 2 -> multiplier 5; next norm max(|-2|, |-5+1|) = 4 -> 9
    assert mults == [9, 5]
    assert norms == [7, 4, 2]
    assert w == [9 - 2, -5 + 1]


def test_lasso_winner(fig1):
    assert lasso_lex_energy_winner(fig1, Lasso((), ("vL", "A", "vR", "B", "vL"))) == 2
    assert lasso_lex_energy_winner(fig1, Lasso(("vL", "A", "vR"), ("vR", "R1", "vR"))) == 2
    assert lasso_lex_energy_winner(fig1, Lasso((), ("vL", "L1", "vL"))) == 1


@given(lex_games)
def test_sign_preservation(g):
    enc = encode_lex_to_mpg(g)
    for cyc in simple_cycles(g):
        assert lex_sign(cycle_total(g, cyc)) == lex_sign((sum(enc.weights[k] for k in cyc),))


@given(lex_games)
def test_encoded_norm_bound(g):
    enc = encode_lex_to_mpg(g)
    # each component dominates whatever the later ones add on a simple cycle
    for i, m in enumerate(enc.multipliers):
        assert m > g.n * enc.norms[i + 1]
    assert max(abs(x) for x in enc.weights) == enc.norms[0]


@given(st.builds(random_game, n=st.integers(2, 6), d=st.integers(1, 3), max_weight=st.integers(1, 2), seed=st.integers(0, 10**6)))
def test_lex_energy_matches_brute_force(g):
    res = solve_lex_energy(g)
    assert res.winners == brute_force_lex_energy(g)
    mres = solve_threshold(res.encoded.arena())
    assert check_certificate(res.encoded.as_graph(), mres)


def test_one_dimensional_encoding_is_identity():
    g = random_game(5, 1, 3, 11)
    assert list(encode_lex_to_mpg(g).weights) == [e.weight[0] for e in g.edges]


def test_fig4_translation_player2_everywhere(fig1):
    from phsgames.phs import build_phs_arena, translate_phs_to_lexen

    t = translate_phs_to_lexen(build_phs_arena(fig1, 1))
    assert t.dim == 4
    assert set(solve_lex_energy(t).winners) == {2}


def test_positive_loop_player1():
    g = MultiWeightedGameGraph.build(1, [("a", 1), ("b", 2)], [("a", "b", 1), ("b", "a", 0)])
    assert solve_lex_energy(g).winners == [1, 1]


def test_lasso_totals():
    g = MultiWeightedGameGraph.build(2, [("a", 1), ("b", 2)], [("a", "b", (0, -1)), ("b", "a", (0, -1))])
    assert lasso_lex_energy_winner(g, Lasso((), ("a", "b", "a"))) == 2
    h = MultiWeightedGameGraph.build(2, [("a", 1), ("b", 2)], [("a", "b", (1, 0)), ("b", "a", (-1, 0))])
    assert lasso_lex_energy_winner(h, Lasso((), ("a", "b", "a"))) == 1
