"""
How fast slice and reduce end the game
======================================

Odd's scripted policy picks bags that cut the remaining decomposition tree
roughly in half, and with three records it jumps to the node separating
them.  Exploring every Even behaviour gives the longest play, which stays far
below the round bound.
"""

from paritysim import ParityGame, round_bound, width
from paritysim.generate import random_partial_ktree
from paritysim.simgame import SearchStats, SimulationGame, explore_outcomes
from paritysim.solvers import SliceReducePolicy

for seed in range(5):
    g, td = random_partial_ktree(12, 2, 4, seed)
    # round counts do not depend on priorities
    flat = ParityGame(g.owner, (0,) * g.n, g.successors)
    stats = SearchStats()
    game = SimulationGame(flat, SliceReducePolicy(td))
    for s in range(3):
        explore_outcomes(game, {s}, s, None, None, stats=stats)
    k = width(td)
    print(f"seed {seed}: longest play {stats.max_round} rounds, bound {round_bound(k, g.n)}, "
          f"history at most {stats.max_history}")
