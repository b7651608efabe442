import math
import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from paritysim import (EVEN, ODD, DagDecomposition, DecompositionError, ParityGame,
                       StrategyProfile, TREEWIDTH_EXCEEDED, TreeDecomposition,
                       build_tree_decomposition_heuristic, modify_game, orient,
                       root_decomposition, round_bound, solve_dagwidth, solve_nc,
                       solve_treewidth, solve_zielonka, swap_players)
from paritysim.decomp import validate_tree_decomposition, width
from paritysim.generate import clique_game, random_game, random_partial_ktree
from paritysim.simgame import Record, SearchStats
from paritysim.solvers import SliceReducePolicy, SliceReduceState

from conftest import games, ktree_games


def clique(owner, priority):
    n = len(owner)
    return ParityGame(tuple(owner), tuple(priority),
                      tuple(tuple(u for u in range(n) if u != v) for v in range(n)))


def one_bag(g):
    return TreeDecomposition({0: frozenset(g.vertices)})


# -- DAG-width --------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(games(max_n=6))
def test_dagwidth_single_node_matches_zielonka(g):
    dd = DagDecomposition({0: frozenset(g.vertices)})
    w = solve_zielonka(g)
    assert all(solve_dagwidth(g, dd, s) == w.winner(s) for s in g.vertices)


def test_dagwidth_two_bag_chain():
    # block {0,1} feeds block {2,3}; nothing comes back
    g = ParityGame.from_edges([0, 1, 0, 1], [1, 2, 3, 4],
                              [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)])
    dd = DagDecomposition({0: {0, 1}, 1: {2, 3}}, {(0, 1)})
    w = solve_zielonka(g)
    assert [solve_dagwidth(g, dd, s) for s in g.vertices] == [w.winner(s) for s in g.vertices]


def test_dagwidth_odd_vertex():
    g = ParityGame.from_edges([1, 0], [3, 2], [(0, 1), (1, 0)])
    assert solve_zielonka(g).winner(0) == ODD
    dd = DagDecomposition({0: {0, 1}})
    assert solve_dagwidth(g, dd, 0) == ODD


def test_dagwidth_rejects_bad_decomposition():
    g = ParityGame.from_edges([0, 0], [0, 0], [(0, 1), (1, 0)])
    with pytest.raises(DecompositionError):
        solve_dagwidth(g, DagDecomposition({0: {0}}), 0)


@settings(max_examples=25, deadline=None)
@given(ktree_games(max_n=9))
def test_dagwidth_oriented_tree_decomposition(pair):
    g, td = pair
    w = solve_zielonka(g)
    for s in g.vertices:
        root = td.nodes_containing(s)[0]
        assert solve_dagwidth(g, orient(td, root), s) == w.winner(s)


# -- modified game and treewidth ------------------------------------------------

def test_modify_single_bag_is_identity():
    g = random_game(5, 3, seed=4)
    mg = modify_game(g, root_decomposition(one_bag(g), 0))
    assert mg.base == g
    assert mg.origin == {}


def test_modify_path_adds_one_copy():
    # v=1 sits in both bags; rooted at A=0 it is copied once, into B=1
    g = ParityGame.from_edges([0, 1, 0], [2, 5, 1], [(0, 1), (1, 0), (1, 2), (2, 1)])
    td = TreeDecomposition({0: {0, 1}, 1: {1, 2}}, {(0, 1)})
    mg = modify_game(g, root_decomposition(td, 0))
    assert list(mg.origin.values()) == [(1, 1)]
    (x,) = mg.origin
    assert mg.base.priority[x] == 5
    assert mg.base.owner[x] == g.owner[1]
    assert mg.copy_of(1, 1) == x and mg.copy_of(1, 0) == 1


@settings(max_examples=60, deadline=None)
@given(ktree_games(max_n=9))
def test_modify_preserves_winners(pair):
    g, td = pair
    w = solve_zielonka(g)
    for root in td.nodes[:2]:
        w2 = solve_zielonka(modify_game(g, root_decomposition(td, root)).base)
        assert all(w.winner(s) == w2.winner(s) for s in g.vertices)


@settings(max_examples=40, deadline=None)
@given(ktree_games(max_n=9))
def test_treewidth_matches_zielonka(pair):
    g, td = pair
    w = solve_zielonka(g)
    assert all(solve_treewidth(g, td, s) == w.winner(s) for s in g.vertices)


def test_treewidth_with_heuristic_decomposition():
    for seed in range(15):
        g = random_game(6, 4, seed)
        td = build_tree_decomposition_heuristic(g)
        w = solve_zielonka(g)
        assert [solve_treewidth(g, td, s) for s in g.vertices] == [w.winner(s) for s in g.vertices]


# -- player swap -------------------------------------------------------------

def test_swap_self_loop():
    g = ParityGame.from_edges([0], [2], [(0, 0)])
    h = swap_players(g)
    assert h.owner == (ODD,) and h.priority == (3,)
    assert solve_zielonka(g).winner(0) == EVEN
    assert solve_zielonka(h).winner(0) == ODD


@settings(max_examples=50, deadline=None)
@given(games(max_n=7))
def test_swap_exchanges_regions(g):
    w, w2 = solve_zielonka(g), solve_zielonka(swap_players(g))
    assert w.even_wins == w2.odd_wins and w.odd_wins == w2.even_wins
    assert solve_zielonka(swap_players(swap_players(g))).even_wins == w.even_wins


# -- round bound ---------------------------------------------------------------

def test_round_bound_values():
    assert round_bound(1, 1) == 4
    assert round_bound(2, 9) == 39
    assert round_bound(3, 20) == math.ceil(4 * (2 * math.log(20, 1.5) + 2))
    with pytest.raises(ValueError):
        round_bound(1, 0)


@given(st.integers(0, 10), st.integers(1, 200))
def test_round_bound_monotone(k, n):
    assert round_bound(k + 1, n) >= round_bound(k, n)
    assert round_bound(k, n + 1) >= round_bound(k, n)


# -- bounded-round solver ------------------------------------------------------

@pytest.mark.parametrize("seed", range(12))
def test_nc_full_width_matches_zielonka(seed):
    g = random_game(1 + seed % 4, 3, seed)
    w = solve_zielonka(g)
    assert all(solve_nc(g, g.n, s) == w.winner(s) for s in g.vertices)


@pytest.mark.parametrize("seed", range(8))
def test_nc_move_hint_keeps_verdict(seed):
    g = random_game(2 + seed % 3, 3, seed + 100)
    k = 1 + seed % 2
    for s in g.vertices:
        assert solve_nc(g, k, s, hint=True) == solve_nc(g, k, s, hint=False)


def test_nc_zero_rounds():
    g = random_game(3, 3, seed=1)
    assert all(solve_nc(g, 3, s, r=0) is TREEWIDTH_EXCEEDED for s in g.vertices)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_nc_zero_k(n):
    # Odd can never reject, so only a self-loop could end the game early
    g = clique_game(n, 4, seed=n)
    assert all(solve_nc(g, 0, s) is TREEWIDTH_EXCEEDED for s in g.vertices)


def test_nc_zero_k_self_loop():
    g = ParityGame.from_edges([1], [3], [(0, 0)])
    assert solve_nc(g, 0, 0) == ODD


def test_nc_clique_even_family():
    # Even owns a 5-clique whose cycles are all odd: Odd wins for real, but
    # with single-vertex sets and three records Even keeps dodging
    g = clique([0] * 5, [3] * 5)
    assert solve_zielonka(g).odd_wins == frozenset(g.vertices)
    assert all(solve_nc(g, 1, s) is TREEWIDTH_EXCEEDED for s in g.vertices)


def test_nc_clique_four_decided():
    # four vertices are too few to dodge three records plus the current set
    g = clique([0] * 4, [3] * 4)
    assert [solve_nc(g, 1, s) for s in g.vertices] == [ODD] * 4


def test_nc_slice_reduce_mode():
    for seed in range(8):
        g, td = random_partial_ktree(7, 2, 4, seed)
        w = solve_zielonka(g)
        for s in g.vertices:
            got = solve_nc(g, width(td), s, mode="slice_reduce", td=td)
            assert got in (w.winner(s), TREEWIDTH_EXCEEDED)
            assert got == w.winner(s) or w.winner(s) == ODD


def test_nc_stats_and_errors():
    g = random_game(3, 2, seed=7)
    stats = SearchStats()
    solve_nc(g, 2, 0, stats=stats)
    assert stats.states > 0 and stats.max_history <= 3
    with pytest.raises(ValueError):
        solve_nc(g, 2, 0, mode="nope")
    with pytest.raises(DecompositionError):
        solve_nc(g, 2, 0, mode="slice_reduce")


# -- slice / reduce ------------------------------------------------------------

def star_td():
    # centre 0 with arms 0-1-4, 0-2-5, 0-3-6; node i holds vertex i
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
    return TreeDecomposition({i: {i} for i in range(7)}, edges)


def leaf_record(i):
    return Record(frozenset({i}), None, StrategyProfile({i: None}), i)


def test_slice_first_reject():
    td = star_td()
    pol = SliceReducePolicy(td)
    old = (leaf_record(4),)
    (b,) = pol.branches(frozenset({6}), 6, 3, old, None)
    assert b.history == ()
    assert b.ctx == SliceReduceState(frozenset(range(7)))
    assert b.node == 0  # the centre splits the star


def test_slice_small_eligible_set():
    td = TreeDecomposition({0: {0}, 1: {1}}, [(0, 1)])
    (b,) = SliceReducePolicy(td).branches(frozenset({1}), 1, 0, (), None)
    assert b.node == 0


def test_reduce_picks_point():
    td = star_td()
    pol = SliceReducePolicy(td)
    hist = tuple(leaf_record(i) for i in (4, 5, 6))
    (b,) = pol.branches(frozenset({6}), 6, 0, hist, SliceReduceState(frozenset({0, 1, 2, 3})))
    assert b.node == 0 and b.S == frozenset({0})
    assert len(b.history) == 3


def test_slice_reduce_bounds_on_random_instances():
    rng = random.Random(3)
    for _ in range(10):
        g, td = random_partial_ktree(rng.randint(3, 10), 2, 3, rng.randrange(10**6))
        assert not validate_tree_decomposition(g, td)
        stats = SearchStats()
        k = width(td)
        for s in g.vertices[:3]:
            solve_nc(g, k, s, mode="slice_reduce", td=td, stats=stats)
        assert stats.max_history <= 3
        assert stats.max_round <= round_bound(k, g.n) + 1
