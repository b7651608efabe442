"""Random instances: unrestricted small games and partial k-tree games that
come with the decomposition they were generated from."""

from __future__ import annotations

import random

from .decomp import TreeDecomposition
from .game import Owner, ParityGame


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_game(n: int, d: int, seed=None, max_out: int = 3) -> ParityGame:
    """A game with ``n`` vertices, priorities ``0..d`` and 1 to ``max_out`` successors each."""
    rng = _rng(seed)
    owner, priority, succ = [], [], []
    for _ in range(n):
        owner.append(Owner(rng.randrange(2)))
        priority.append(rng.randint(0, d))
        k = rng.randint(1, min(max_out, n))
        succ.append(tuple(sorted(rng.sample(range(n), k))))
    return ParityGame(tuple(owner), tuple(priority), tuple(succ))


def random_partial_ktree(n: int, k: int, d: int, seed=None, keep: float = 0.6,
                         self_loop_repair: bool = False) -> tuple[ParityGame, TreeDecomposition]:
    """A game whose underlying graph is a random partial k-tree.

    Returns the game and the decomposition used to build it, whose bags hold
    at most ``k + 1`` vertices.  Dead ends get an edge to another member of a
    bag that contains them, so the decomposition stays valid.
    """
    if n < 1 or k < 1 or d < 1:
        raise ValueError("n, k and d must be positive")
    rng = _rng(seed)
    label = list(range(n))
    rng.shuffle(label)

    bags: list[frozenset[int]] = [frozenset(range(min(n, k + 1)))]
    tree_edges: list[tuple[int, int]] = []
    adj: set[tuple[int, int]] = {(a, b) for a in bags[0] for b in bags[0] if a < b}
    for v in range(k + 1, n):
        b = rng.randrange(len(bags))
        clique = frozenset(rng.sample(sorted(bags[b]), k))
        bags.append(clique | {v})
        tree_edges.append((b, len(bags) - 1))
        adj |= {(u, v) for u in clique}

    succ: dict[int, set[int]] = {v: set() for v in range(n)}
    for a, b in sorted(adj):
        if rng.random() >= keep:
            continue
        way = rng.randrange(3)
        if way in (0, 2):
            succ[a].add(b)
        if way in (1, 2):
            succ[b].add(a)
    home = {}
    for i, bag in enumerate(bags):
        for v in bag:
            home.setdefault(v, bag)
    for v in range(n):
        if succ[v]:
            continue
        mates = sorted(home[v] - {v})
        if self_loop_repair or not mates:
            succ[v].add(v)
        else:
            succ[v].add(rng.choice(mates))

    owner = [None] * n
    priority = [None] * n
    successors = [None] * n
    for v in range(n):
        owner[label[v]] = Owner(rng.randrange(2))
        priority[label[v]] = rng.randint(0, d)
        successors[label[v]] = tuple(sorted(label[u] for u in succ[v]))
    g = ParityGame(tuple(owner), tuple(priority), tuple(successors))
    td = TreeDecomposition({i: frozenset(label[v] for v in bag) for i, bag in enumerate(bags)},
                           tree_edges)
    return g, td


def clique_game(n: int, d: int, seed=None) -> ParityGame:
    """Complete digraph without self-loops, random owners and priorities."""
    rng = _rng(seed)
    owner = tuple(Owner(rng.randrange(2)) for _ in range(n))
    priority = tuple(rng.randint(0, d) for _ in range(n))
    succ = tuple(tuple(u for u in range(n) if u != v) for v in range(n))
    return ParityGame(owner, priority, succ)
