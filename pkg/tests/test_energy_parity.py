import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import GAMES, brute_force_parity, relay_cycle
from phsgames.energy_parity import (
    Credit,
    capped_energy_parity_oracle,
    confirm_player1,
    lasso_energy_parity_winner,
    reduce_extended_to_bounding,
    reduce_parity_to_extended,
    solve_arbitrary_credit,
    zielonka,
)
from phsgames.graph import Lasso, MultiWeightedGameGraph, load_game, random_game, validate

parity_games = st.builds(
    random_game,
    n=st.integers(2, 6),
    d=st.integers(1, 2),
    max_weight=st.integers(1, 2),
    seed=st.integers(0, 10**6),
    priorities=st.just(True),
    max_priority=st.integers(1, 4),
)


def edge_set(g):
    return {(g.vertices[e.src].id, g.vertices[e.dst].id, e.weight) for e in g.edges}


def vertex_set(g):
    return {(v.id, v.owner) for v in g.vertices}


def test_fig6_golden(fig5):
    ext, cert = reduce_parity_to_extended(fig5)
    golden = load_game(GAMES / "fig6.golden.game")
    assert (ext.n, len(ext.edges), ext.dim) == (7, 8, 3)
    assert vertex_set(ext) == vertex_set(golden)
    assert edge_set(ext) == edge_set(golden)
    assert cert.holds() and validate(ext) == []


def test_fig7_fragment(fig5):
    ext, _ = reduce_parity_to_extended(fig5)
    bnd, cert = reduce_extended_to_bounding(ext)
    frag = load_game(GAMES / "fig7.fragment.game", check=False)
    assert vertex_set(frag) <= vertex_set(bnd)
    assert edge_set(frag) <= edge_set(bnd)
    assert (bnd.n, len(bnd.edges)) == (23, 36)
    assert cert.holds() and validate(bnd) == []
    assert not bnd.extended and bnd.norm == ext.norm


def test_no_even_priorities_is_identity():
    g = relay_cycle(1, -1, priority=1)
    ext, cert = reduce_parity_to_extended(g)
    assert ext is g and cert.holds()


def test_reduction_needs_priorities():
    with pytest.raises(ValueError):
        reduce_parity_to_extended(relay_cycle(1, -1))


def test_credit_parsing():
    assert Credit.parse("2,0").values == (2, 0)
    assert str(Credit.uniform(3, 2)) == "3,3"
    with pytest.raises(ValueError):
        Credit.parse("1,x")
    with pytest.raises(ValueError):
        Credit((-1,))


def test_fig5_capped_player2(fig5):
    assert capped_energy_parity_oracle(fig5, Credit((2,)), 8) == [2] * 5


def test_fig1_energy_arbitrary_credit_player2(fig1):
    res = solve_arbitrary_credit(fig1, 1)
    assert res.winners == [2] * 6
    assert all(c.holds() for c in res.certificates)
    assert {fig1.edges[k].src for k in res.p2_strategy.values()} == set(fig1.vertices_of(2))


def test_energy_player1_confirmed():
    g = relay_cycle((1,), (-1,), priority=1)
    res = solve_arbitrary_credit(g, 1)
    assert res.winners == [1, 1]
    assert set(res.confirmed) == {0, 1}
    assert confirm_player1(g, 0) == (Credit((0,)), 4)


def test_lasso_winner():
    g = MultiWeightedGameGraph.build(
        1,
        [("a", 1, 1), ("b", 2, 2), ("c", 2, 3)],
        [("a", "b", -1), ("b", "a", 1), ("a", "c", 0), ("c", "a", 0)],
    )
    assert lasso_energy_parity_winner(g, Lasso((), ("a", "c", "a")), Credit((0,))) == 1
    assert lasso_energy_parity_winner(g, Lasso((), ("a", "b", "a")), Credit((1,))) == 1
    assert lasso_energy_parity_winner(g, Lasso((), ("a", "b", "a")), Credit((0,))) == 2
    h = relay_cycle(1, -2, priority=1)
    assert lasso_energy_parity_winner(h, Lasso((), ("a", "b", "a")), Credit((5,))) == 2


@given(
    st.integers(2, 7),
    st.integers(0, 10**6),
)
def test_zielonka_matches_brute_force(n, seed):
    import random

    rng = random.Random(seed)
    owner = [rng.choice((1, 2)) for _ in range(n)]
    prio = [rng.randint(0, 4) for _ in range(n)]
    succ = [sorted(rng.sample(range(n), rng.randint(1, min(3, n)))) for _ in range(n)]
    assert zielonka(owner, prio, succ) == brute_force_parity(owner, prio, succ)


@given(parity_games)
def test_certificates_hold(g):
    ext, c1 = reduce_parity_to_extended(g)
    bnd, c2 = reduce_extended_to_bounding(ext)
    assert c1.holds() and c2.holds()
    assert validate(ext) == [] and validate(bnd) == []


@given(parity_games, st.integers(0, 3), st.integers(1, 4))
def test_capped_oracle_monotone(g, c, cap):
    if g.dim == 2:
        cap = min(cap, 3)
    base = capped_energy_parity_oracle(g, Credit.uniform(min(c, cap), g.dim), cap)
    more_credit = capped_energy_parity_oracle(g, Credit.uniform(min(c + 1, cap), g.dim), cap)
    more_cap = capped_energy_parity_oracle(g, Credit.uniform(min(c, cap), g.dim), cap + 1)
    for v in range(g.n):
        if base[v] == 1:
            assert more_credit[v] == 1 and more_cap[v] == 1


@given(st.builds(random_game, n=st.integers(2, 4), d=st.just(1), max_weight=st.just(1), seed=st.integers(0, 10**6), priorities=st.just(True), max_priority=st.integers(1, 3)))
def test_capped_wins_never_contradict_arbitrary_credit(g):
    res = solve_arbitrary_credit(g, 1, confirm=False)
    for c, cap in itertools.product((0, 2), (4, 8)):
        ws = capped_energy_parity_oracle(g, Credit((c,)), cap)
        for v, w in enumerate(ws):
            if w == 1:
                assert res.winners[v] == 1


def test_extended_without_omega_only_adds_drains(fig1):
    bnd, cert = reduce_extended_to_bounding(fig1)
    assert bnd.n == 6 + 2 * 2 and len(bnd.edges) == 8 + 2 * 2 * 2
    assert cert.holds()
    drains = {e.weight for e in bnd.edges if bnd.vertices[e.dst].id.startswith("vL.m")}
    assert drains == {(-1, 0), (0, -1)}


def test_growing_loop_player1():
    g = relay_cycle(1, 0, priority=1)
    assert solve_arbitrary_credit(g, 1).winners == [1, 1]
    assert capped_energy_parity_oracle(g, Credit((0,)), 4) == [1, 1]


def test_fig5_lassos(fig5):
    cyan = Lasso((), ("t3", "s2", "t2", "s4", "t3"))
    assert lasso_energy_parity_winner(fig5, cyan, Credit((5,))) == 2
    g = relay_cycle(1, 0, priority=1)
    assert lasso_energy_parity_winner(g, Lasso((), ("a", "b", "a")), Credit((0,))) == 1
