"""
Watching a simulation game
==========================

A three-vertex game is played as a simulation game over the bag {0, 2}.
Whenever play leaves the bag, Even announces a profile for the escaped vertex
instead of playing it out, and Odd either accepts one entry or rejects.
"""

from paritysim import ParityGame, solve_simulation, solve_zielonka
from paritysim.simgame import FixedPolicy, keep_last

# 0 -> 1 -> {0, 2}, 2 -> 0; vertex 1 belongs to Odd
g = ParityGame.from_edges(owner=[0, 1, 0], priority=[0, 5, 2],
                          edges=[(0, 1), (1, 0), (1, 2), (2, 0)])
w = solve_zielonka(g)
print("Even wins", sorted(w.even_wins), "Odd wins", sorted(w.odd_wins))

# after a reject, play continues in the bag grown by the rejected vertex
grow = FixedPolicy(lambda S, node, v, history: (S | {v}, None), keep_last)
out = solve_simulation(g, {0, 2}, 0, grow, with_trace=True)
for line in out.trace:
    print(line)

# the exhaustive search and Zielonka agree
assert out.winner == w.winner(0)
