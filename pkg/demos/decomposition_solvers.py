"""
Solving along a decomposition
=============================

Random partial 2-trees come with the tree decomposition they were built from.
The same game is solved by Zielonka's algorithm, by the DAG-width solver on
the decomposition read as a DAG, and by the treewidth solver on the modified
game.
"""

import time

from paritysim import (build_tree_decomposition_heuristic, orient, solve_dagwidth,
                       solve_treewidth, solve_zielonka, validate_tree_decomposition, width)
from paritysim.generate import random_partial_ktree

g, td = random_partial_ktree(10, 2, 4, seed=11)
print(f"{g.n} vertices, generating decomposition of width {width(td)}")
print("violations:", validate_tree_decomposition(g, td))

# a min-degree decomposition is usually about as narrow
h = build_tree_decomposition_heuristic(g)
print("heuristic width:", width(h))

w = solve_zielonka(g)
dd = orient(td, min(td.bags))
for name, solve in [("dagwidth", lambda s: solve_dagwidth(g, dd, s)),
                    ("treewidth", lambda s: solve_treewidth(g, td, s))]:
    t0 = time.perf_counter()
    got = [solve(s) for s in g.vertices]
    ms = (time.perf_counter() - t0) * 1000
    agree = got == [w.winner(s) for s in g.vertices]
    print(f"{name:>9}: agrees with zielonka: {agree}  ({ms:.0f} ms)")
