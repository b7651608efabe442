"""Bounded-round simulation game in which Odd picks the next set and prunes
the history, run on a game and on its player-swapped dual."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from ..decomp import (DecompositionError, TreeDecomposition, point_vertex, split_vertex,
                      subtree_nodes)
from ..game import EVEN, Owner, ParityGame, swap_players
from ..oracles import solve_zielonka
from ..simgame import (AlternatingSearch, Branch, Policy, SearchStats, SimulationGame,
                       solve_simulation)


class _Exceeded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TreewidthExceeded"

    __str__ = __repr__


TREEWIDTH_EXCEEDED = _Exceeded()

MAX_RECORDS = 3


def round_bound(k: int, n: int) -> int:
    """Rounds after which Odd's slice/reduce play must have ended the game."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.ceil((k + 1) * (2 * math.log(n) / math.log(1.5) + 2))


def _subsequences(history, limit):
    n = len(history)
    for size in range(min(n, limit), -1, -1):
        for idx in itertools.combinations(range(n), size):
            yield tuple(history[i] for i in idx)


class UniversalPolicy(Policy):
    """Odd may pick any set of at most ``k`` vertices containing the rejected
    vertex and any way of trimming the history to at most three records."""

    trusted = True

    def __init__(self, vertices, k: int):
        self.vertices = tuple(vertices)
        self.k = k

    @functools.lru_cache(maxsize=None)
    def _sets(self, v):
        others = [x for x in self.vertices if x != v]
        return [frozenset((v, *extra))
                for size in range(min(self.k - 1, len(others)), -1, -1)
                for extra in itertools.combinations(others, size)]

    def branches(self, S, node, v, history, ctx):
        if self.k < 1:
            return []
        sets = self._sets(v)
        return [Branch(kept, S2, None, None)
                for kept in _subsequences(history, MAX_RECORDS)
                for S2 in sets]


@dataclass(frozen=True)
class SliceReduceState:
    L: frozenset[int]


class SliceReducePolicy(Policy):
    """Odd's scripted choice of bags that forces the game to end quickly.

    The eligible nodes ``L`` start as every node at the first reject and
    shrink to the side of the current bag holding the rejected vertex.
    Records whose bag has no tree neighbour left in ``L`` are dropped.  With
    fewer than three records the next bag separates ``L`` evenly; with three
    it is the node separating the three remembered bags.
    """

    def __init__(self, td: TreeDecomposition, check_guard: bool = True):
        self.td = td
        self.adj = td.adjacency
        self.check_guard = check_guard

    def _split(self, L):
        if len(L) < 3:
            return min(L)
        edges = [(a, b) for a, b in self.td.edges if a in L and b in L]
        return split_vertex(L, edges)

    def branches(self, S, node, v, history, ctx):
        if ctx is None:
            L = frozenset(self.td.bags)
            kept = ()
        else:
            L = ctx.L & subtree_nodes(self.td, node, v)
            kept = tuple(r for r in history if any(j in L for j in self.adj[r.node]))
        if self.check_guard and ctx is not None:
            remembered = {r.node for r in kept}
            for i in L:
                for j in self.adj[i]:
                    if j not in L and j not in remembered:
                        raise AssertionError(f"tree edge {i}-{j} leaves L unguarded")
        if len(kept) > MAX_RECORDS:
            raise AssertionError("slice/reduce retained more than three records")
        if len(kept) < MAX_RECORDS:
            i = self._split(L)
        else:
            a, b, c = (r.node for r in kept)
            i = point_vertex(self.td.bags, self.td.edges, a, b, c)
        return [Branch(kept, self.td.bags[i], i, SliceReduceState(L))]


def solve_nc_side(g: ParityGame, k: int, s: int, r: int | None, policy: Policy,
                  budget: int = 10**7, stats: SearchStats | None = None,
                  search: AlternatingSearch | None = None) -> Owner:
    """Winner of the bounded game from ``s``.  A ``search`` built for the same
    game, policy and bound may be passed in to reuse its memo."""
    if search is None:
        search = AlternatingSearch(SimulationGame(g, policy, r), budget)
    before = search.stats.states
    search.budget = before + budget
    try:
        outcome = solve_simulation(g, {s}, s, policy, r, search=search)
    finally:
        if stats is not None:
            own = SearchStats(search.stats.states - before, search.stats.max_history,
                              search.stats.max_rejects, search.stats.max_round,
                              search.stats.max_path)
            stats.merge(own)
    return outcome.winner


def _classical_moves(g: ParityGame) -> dict[int, int]:
    w = solve_zielonka(g)
    return {v: w.strategy(g.owner[v])(v) for v in g.vertices}


@functools.lru_cache(maxsize=4)
def _shared_searches(g: ParityGame, k: int, r: int, mode: str, td, hint: bool):
    # one memo per (game, k, bound, mode), reused across start vertices
    out = []
    for side in (g, swap_players(g)):
        policy = UniversalPolicy(side.vertices, k) if mode == "universal" else SliceReducePolicy(td)
        prefer = _classical_moves(side) if hint else None
        out.append(AlternatingSearch(SimulationGame(side, policy, r), prefer=prefer))
    return tuple(out)


def solve_nc(g: ParityGame, k: int, s: int, r: int | None = None, mode: str = "universal",
             td: TreeDecomposition | None = None, budget: int = 10**7,
             stats: SearchStats | None = None, hint: bool = True):
    """Winner of ``s``, or :data:`TREEWIDTH_EXCEEDED` when both the game and
    its dual claim an Even win within ``r`` rounds.

    With ``hint`` the exhaustive search tries the moves of a classical
    positional solution first.  That only changes how soon the search finds
    a winning line, never its answer.
    """
    g.check()
    if r is None:
        r = round_bound(k, g.n)
    if mode not in ("universal", "slice_reduce"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "slice_reduce" and td is None:
        raise DecompositionError("slice/reduce needs a tree decomposition")
    s_here, s_dual = _shared_searches(g, k, r, mode, td if mode == "slice_reduce" else None,
                                      hint)
    here = solve_nc_side(g, k, s, r, s_here.game.policy, budget, stats, s_here)
    if here != EVEN:
        return here  # the dual cannot change an Odd verdict
    dual = solve_nc_side(s_dual.game.g, k, s, r, s_dual.game.policy, budget, stats, s_dual)
    return TREEWIDTH_EXCEEDED if dual == EVEN else here
