"""
The modified game
=================

Rooting a tree decomposition fixes, for each vertex, the topmost bag holding
it.  Every other bag holding the vertex gets a copy with the same owner and
priority, and play reaches a child bag only through these copies.  The copies
never change who wins.
"""

from paritysim import (TreeDecomposition, modify_game, root_decomposition, solve_zielonka,
                       write_pgsolver)
from paritysim.game import ParityGame

# a path 0 - 1 - 2 split into bags A = {0, 1} and B = {1, 2}
g = ParityGame.from_edges([0, 1, 0], [2, 5, 1], [(0, 1), (1, 0), (1, 2), (2, 1)])
td = TreeDecomposition({0: {0, 1}, 1: {1, 2}}, [(0, 1)])

mg = modify_game(g, root_decomposition(td, 0))
for x, (v, i) in mg.origin.items():
    print(f"vertex {x} is the copy of {v} at node {i}")
print(write_pgsolver(mg.base))

w, w2 = solve_zielonka(g), solve_zielonka(mg.base)
print([w.winner(v) == w2.winner(v) for v in g.vertices])
