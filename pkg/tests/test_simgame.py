import pytest
from hypothesis import given, settings

from paritysim import EVEN, ODD, ParityGame, Strategy, StrategyProfile, solve_zielonka
from paritysim.generate import random_partial_ktree
from paritysim.decomp import orient
from paritysim.simgame import (Accept, AlternatingSearch, Branch, FixedPolicy, GameOutcome,
                               IllegalMove, PathEntry, Phase, Policy, PolicyError, Reason, Record,
                               Reject, SimulationGame, SingleBagPolicy, adjudicate_step5,
                               explore_outcomes, follow_even, follow_odd, initialize, keep_last,
                               play_simulation, run_round, solve_simulation, update_history,
                               update_record, winner_of_lasso)
from paritysim.solvers.dagwidth import dag_policy, dag_source

from conftest import games


def rec(F, p, claims):
    return Record(frozenset(F), p, StrategyProfile(dict(zip(sorted(F), claims))))


def cycle(*pris, prefix=()):
    # entries v -> v+1 ..., the last one returning to the first cycle vertex
    entries = [PathEntry(100 + i, p, 101 + i) for i, p in enumerate(prefix)]
    base = 100 + len(prefix)
    k = len(pris)
    entries += [PathEntry(base + i, p, base + (i + 1) % k) for i, p in enumerate(pris)]
    return entries


def test_update_record_examples():
    assert update_record(rec({0}, None, [3]), 5).p == 5
    assert update_record(rec({0}, 7, [3]), 5).p == 7
    assert update_record(rec({0}, 5, [3]), 7).p == 7
    r = rec({0}, 9, [3])
    assert update_record(r, 2) is r


def test_update_history():
    assert update_history((), 4) == ()
    h = (rec({0}, 1, [3]), rec({1}, None, [2]))
    assert [r.p for r in update_history(h, 4)] == [4, 4]
    high = (rec({0}, 8, [3]), rec({1}, 9, [2]))
    assert update_history(high, 4) == high


def test_winner_of_lasso_examples():
    assert winner_of_lasso(cycle(7, 4, 5, 10, 2)) == EVEN
    assert winner_of_lasso(cycle(3)) == ODD
    assert winner_of_lasso(cycle(2, prefix=(99,))) == EVEN
    with pytest.raises(ValueError):
        winner_of_lasso([PathEntry(0, 1, 1)])


def test_adjudicate_step5_examples():
    path = [PathEntry(0, 8, 1)]
    assert adjudicate_step5(1, (rec({1}, None, [None]),), path) == ODD
    assert adjudicate_step5(1, (rec({1}, None, [14]),), path) == ODD
    assert adjudicate_step5(1, (rec({1}, None, [8]),), path) == EVEN
    # the final record containing c decides
    h = (rec({1}, None, [2]), rec({1, 2}, None, [14, 0]))
    assert adjudicate_step5(1, h, path) == ODD
    assert adjudicate_step5(5, h, path) is None


def test_initialize():
    h = (rec({7}, 1, [2]),)
    st = initialize({0, 1}, 0, h)
    assert st.phase is Phase.STEP1 and st.c == 0 and st.history == h
    st = initialize({0, 1}, 5)
    assert st.phase is Phase.STEP3 and st.pending == 5


def bag_game():
    # 0 (Even) -> 1 (Odd, outside S) -> 2 (in S) -> 2
    g = ParityGame.from_edges([0, 1, 0], [0, 5, 2], [(0, 1), (1, 2), (2, 2)])
    return g, SimulationGame(g, FixedPolicy(lambda S, node, v, h: ({v, 2}, None), keep_last))


def test_round_steps():
    g, game = bag_game()
    st = game.start({0, 2}, 0)
    st = game.apply(st, 1)
    assert st.phase is Phase.STEP3 and st.pending == 1
    st = game.apply(st, StrategyProfile({0: None, 2: 2}))
    assert st.phase is Phase.STEP4
    assert game.moves(st)[0] == Accept(2)
    after = game.apply(st, Accept(2))
    assert after.path == (PathEntry(0, 5, 2),) and after.c == 2 and after.round == 2
    rej = game.apply(st, game.moves(st)[1])
    assert rej.round == 2 and rej.path == () and rej.c == 1 and rej.S == {1, 2}
    assert rej.history[0].F == {0, 2}


def test_all_unreachable_offer_forces_reject():
    g, game = bag_game()
    st = game.apply(game.apply(game.start({0, 2}, 0), 1), StrategyProfile({0: None, 2: None}))
    assert all(isinstance(m, Reject) for m in game.moves(st))


def test_illegal_moves():
    g, game = bag_game()
    st = game.start({0, 2}, 0)
    with pytest.raises(IllegalMove) as err:
        game.apply(st, 2)
    assert err.value.player == EVEN
    st = game.apply(game.apply(st, 1), StrategyProfile({0: None, 2: 2}))
    with pytest.raises(IllegalMove) as err:
        game.apply(st, Accept(0))
    assert err.value.player == ODD


def test_round_bound_zero():
    g, _ = bag_game()
    out = solve_simulation(g, {0, 2}, 0, SingleBagPolicy(), round_bound=0)
    assert out.winner == EVEN and out.reason is Reason.ROUND_BOUND


def test_bad_history_policy_is_caught():
    class Forger(Policy):
        def branches(self, S, node, v, history, ctx):
            return [Branch((rec({9}, None, [1]),), frozenset({v}), None, None)]

    g, _ = bag_game()
    game = SimulationGame(g, Forger())
    st = game.apply(game.apply(game.start({0, 2}, 0), 1), StrategyProfile({0: None, 2: None}))
    with pytest.raises(PolicyError):
        game.moves(st)


def test_follow_agents():
    g, game = bag_game()
    sigma = Strategy(EVEN, {0: 1, 2: 2})
    tau = Strategy(ODD, {1: 2})
    st = game.start({0, 2}, 0)
    assert follow_even(sigma)(game, st) == 1
    st = game.apply(st, 1)
    honest = follow_even(sigma)(game, st)
    assert honest == StrategyProfile({0: None, 2: 5})
    offered = game.apply(st, honest)
    assert follow_odd(tau)(game, offered) == Accept(2)
    dead = game.apply(st, StrategyProfile({0: None, 2: None}))
    assert isinstance(follow_odd(tau)(game, dead), Reject)


def test_play_and_transcript():
    g, game = bag_game()
    out = play_simulation(game, {0, 2}, 0, follow_even(Strategy(EVEN, {0: 1, 2: 2})),
                          follow_odd(Strategy(ODD, {1: 2})))
    assert out.winner == EVEN and out.reason is Reason.CYCLE
    assert out.trace[0] == "round=1 step=1 S={0,2} c=0 move=edge to=1"
    assert out.trace[1] == "round=1 step=3 S={0,2} c=0 move=profile v=1 P={0: -, 2: 5}"
    assert out.trace[2] == "round=1 step=4 S={0,2} c=0 move=accept u=2 p=5"
    assert out.trace[-1] == "end winner=Even reason=CycleStep6"


def test_run_round_single_successor():
    g = ParityGame.from_edges([0, 0], [1, 2], [(0, 1), (1, 1)])
    game = SimulationGame(g, SingleBagPolicy())
    st = run_round(game, game.start({0, 1}, 0), lambda gm, s: g.successors[s.c][0], None)
    assert st.c == 1 and st.path == (PathEntry(0, 2, 1),)


@settings(max_examples=80, deadline=None)
@given(games(max_n=7))
def test_single_bag_matches_zielonka(g):
    w = solve_zielonka(g)
    for s in g.vertices:
        search = AlternatingSearch(SimulationGame(g, SingleBagPolicy()))
        assert solve_simulation(g, g.vertices, s, SingleBagPolicy(), search=search).winner == w.winner(s)
        assert search.stats.max_path <= g.n + 1


def test_follow_lemmas_small_corpus():
    for seed in range(15):
        g, td = random_partial_ktree(2 + seed % 4, 2, 3, seed)
        w = solve_zielonka(g)
        dd = orient(td, min(td.bags))
        game = SimulationGame(g, dag_policy(dd))
        for s in g.vertices:
            i = dag_source(dd, s)
            player = w.winner(s)
            strat = w.strategy(player)
            agent = follow_even(strat) if player == EVEN else follow_odd(strat)
            outs = explore_outcomes(game, dd.bags[i], s, agent, player, i)
            assert all(win == player for win, why in outs if why in (Reason.RETURN, Reason.CYCLE))
