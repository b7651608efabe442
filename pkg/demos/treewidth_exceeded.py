"""
Declaring the width too large
=============================

The bounded solver lets Odd pick at most ``k`` vertices after each reject and
keep at most three records, and stops after a fixed number of rounds.  It is
run on the game and on its dual, where owners swap and priorities shift by
one.  If Even wins both, the width bound was too small.
"""

from paritysim import EVEN, ParityGame, TREEWIDTH_EXCEEDED, solve_nc, solve_zielonka
from paritysim.generate import random_game


def clique(n, owner, priority):
    succ = tuple(tuple(u for u in range(n) if u != v) for v in range(n))
    return ParityGame((owner,) * n, (priority,) * n, succ)


# with k = n nothing is lost: the answer matches Zielonka
g = random_game(5, 4, seed=3)
w = solve_zielonka(g)
print([solve_nc(g, g.n, s) == w.winner(s) for s in g.vertices])

# Even owns a clique in which every cycle is odd.  With single-vertex sets Odd
# can only catch Even by walking into a recorded vertex, and from five
# vertices on Even always has an unrecorded one to move to.
for n in (4, 5, 6):
    c = clique(n, EVEN, 3)
    print(n, [str(solve_nc(c, 1, s)) for s in c.vertices])

assert solve_nc(clique(5, EVEN, 3), 1, 0) is TREEWIDTH_EXCEEDED
