import itertools

import pytest
from hypothesis import given, settings

from paritysim import (EVEN, ODD, InvalidGameError, InvalidStrategyError, ParityGame, Strategy,
                       cmp_significance, play, restrict, solve_bruteforce, solve_zielonka,
                       swap_players, validate_game)
from paritysim.game import DanglingEdge, DeadEnd, Lasso, sig_max, sig_min
from paritysim.oracles import InstanceTooLarge, all_strategies, strategy_wins

from conftest import games


@pytest.mark.parametrize("a,b,want", [(3, 4, -1), (2, 8, -1), (5, 3, -1), (7, 7, 0), (4, 3, 1)])
def test_cmp_significance_examples(a, b, want):
    assert cmp_significance(a, b) == want


def test_significance_is_total_order():
    ps = range(13)
    for a, b in itertools.product(ps, ps):
        assert cmp_significance(a, b) == -cmp_significance(b, a)
        assert (cmp_significance(a, b) == 0) == (a == b)
    for a, b, c in itertools.product(ps, ps, ps):
        if cmp_significance(a, b) < 0 and cmp_significance(b, c) < 0:
            assert cmp_significance(a, c) < 0


def test_sig_min_max():
    assert sig_min([4, 7]) == 7
    assert sig_max([4, 7]) == 4
    assert sig_max([1, 3, 0]) == 0


def test_validate_game_examples():
    assert validate_game(ParityGame.from_edges([0], [0], [(0, 0)])) == []
    assert validate_game(ParityGame((EVEN,), (0,), ((),))) == [DeadEnd(0)]
    bad = ParityGame((EVEN, ODD), (0, 1), ((99,), (0,)))
    assert validate_game(bad) == [DanglingEdge(0, 99)]
    with pytest.raises(InvalidGameError):
        bad.check()


def test_restrict():
    g = ParityGame.from_edges([0, 1, 0], [0, 1, 2], [(0, 1), (0, 2), (1, 0), (1, 2), (2, 2)])
    sigma = Strategy(EVEN, {0: 1, 2: 2})
    r = restrict(g, sigma)
    assert r.successors[0] == (1,)
    assert r.successors[1] == (0, 2)
    both = restrict(r, Strategy(ODD, {1: 2}))
    assert all(len(s) == 1 for s in both.successors)
    with pytest.raises(InvalidStrategyError):
        restrict(g, Strategy(EVEN, {0: 0, 2: 2}))


def test_play_self_loops():
    for pri, want in ((2, EVEN), (1, ODD)):
        g = ParityGame.from_edges([0], [pri], [(0, 0)])
        lasso, w = play(g, 0, Strategy(EVEN, {0: 0}), Strategy(ODD, {}))
        assert lasso == Lasso((), (0,)) and w == want


def test_play_three_vertex_cycle():
    g = ParityGame.from_edges([0, 1, 0], [3, 10, 5], [(0, 1), (1, 2), (1, 0), (2, 0)])
    lasso, w = play(g, 0, Strategy(EVEN, {0: 1, 2: 0}), Strategy(ODD, {1: 2}))
    assert lasso.cycle == (0, 1, 2) and w == EVEN
    rotated = Lasso((), lasso.cycle[1:] + lasso.cycle[:1])
    assert rotated.winner(g) == w


def test_zielonka_trivial():
    assert solve_zielonka(ParityGame.from_edges([0], [2], [(0, 0)])).even_wins == frozenset({0})
    assert solve_zielonka(ParityGame.from_edges([0], [1], [(0, 0)])).odd_wins == frozenset({0})


def test_bruteforce_two_cycles():
    assert solve_bruteforce(ParityGame.from_edges([0, 1], [2, 1], [(0, 1), (1, 0)]), 0) == EVEN
    assert solve_bruteforce(ParityGame.from_edges([0, 1], [3, 2], [(0, 1), (1, 0)]), 0) == ODD


def test_bruteforce_refuses_large():
    n = 14
    g = ParityGame.from_edges([0] * n, [0] * n, [(v, u) for v in range(n) for u in range(n)])
    with pytest.raises(InstanceTooLarge):
        solve_bruteforce(g, 0)


@settings(max_examples=150, deadline=None)
@given(games(max_n=7))
def test_zielonka_matches_bruteforce(g):
    w = solve_zielonka(g)
    assert w.even_wins | w.odd_wins == frozenset(g.vertices)
    assert not w.even_wins & w.odd_wins
    for s in g.vertices:
        assert solve_bruteforce(g, s) == w.winner(s)


@settings(max_examples=60, deadline=None)
@given(games(max_n=6))
def test_witness_strategies_win(g):
    w = solve_zielonka(g)
    for player in (EVEN, ODD):
        strat = w.strategy(player)
        for v in w.region(player):
            assert strategy_wins(g, strat, v)


@settings(max_examples=60, deadline=None)
@given(games(max_n=6))
def test_swap_players_flips_winners(g):
    w, ws = solve_zielonka(g), solve_zielonka(swap_players(g))
    assert ws.even_wins == w.odd_wins and ws.odd_wins == w.even_wins
    assert solve_zielonka(swap_players(swap_players(g))).even_wins == w.even_wins


def test_all_strategies_count():
    g = ParityGame.from_edges([0, 0], [0, 0], [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert len(list(all_strategies(g, EVEN))) == 4
