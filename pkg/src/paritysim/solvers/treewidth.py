"""Treewidth solver: a simulation game on a modified game whose extra vertices
mark where play crosses from one bag into a child bag."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..decomp import (DecompositionError, RootedTreeDecomposition, TreeDecomposition,
                      root_decomposition, validate_tree_decomposition)
from ..game import Owner, ParityGame
from ..simgame import (AlternatingSearch, FixedPolicy, SearchStats, SimulationGame,
                       keep_last, solve_simulation)


@dataclass(frozen=True)
class ModifiedGame:
    base: ParityGame
    origin: Mapping[int, tuple[int, int]]     # extra vertex -> (vertex, node)
    reverse: Mapping[tuple[int, int], int]    # (vertex, node) -> extra vertex
    rtd: RootedTreeDecomposition

    def copy_of(self, v: int, i: int) -> int:
        """The vertex standing for ``v`` at node ``i``."""
        if self.rtd.first[v] == i:
            return v
        return self.reverse[(v, i)]


def modify_game(g: ParityGame, rtd: RootedTreeDecomposition, prune: bool = True) -> ModifiedGame:
    """Build the modified game over a rooted tree decomposition.

    Each vertex ``v`` gets a copy ``v_i`` at every node holding it other than
    the topmost one.  Copies pass play down the tree and into their bag.
    Copies left without successors are removed (with ``prune``), since no
    strategy can use them.
    """
    first = rtd.first
    bags = rtd.bags
    slots = [(v, i) for i in sorted(bags) for v in sorted(bags[i]) if first[v] != i]
    n = g.n
    ids = {slot: n + k for k, slot in enumerate(slots)}

    succ: dict[int, list[int]] = {}
    for v in g.vertices:
        out = [u for u in g.successors[v] if u in bags[first[v]]]
        out += [ids[(v, j)] for j in rtd.children[first[v]] if (v, j) in ids]
        succ[v] = out
    for (v, i), x in ids.items():
        out = [u for u in g.successors[v] if u in bags[i]]
        out += [ids[(v, j)] for j in rtd.children[i] if (v, j) in ids]
        succ[x] = out

    alive = set(ids.values())
    if prune:
        changed = True
        while changed:
            changed = False
            for x in sorted(alive):
                if not any(y < n or y in alive for y in succ[x]):
                    alive.discard(x)
                    changed = True
    keep = sorted(alive)
    renum = {x: n + k for k, x in enumerate(keep)}
    renum.update({v: v for v in g.vertices})

    owner = list(g.owner)
    priority = list(g.priority)
    successors = [None] * (n + len(keep))
    origin, reverse = {}, {}
    for (v, i), x in ids.items():
        if x in renum:
            origin[renum[x]] = (v, i)
            reverse[(v, i)] = renum[x]
    for x in list(g.vertices) + keep:
        successors[renum[x]] = tuple(renum[y] for y in succ[x] if y in renum)
    for x in keep:
        v = origin[renum[x]][0]
        owner.append(g.owner[v])
        priority.append(g.priority[v])
    base = ParityGame(tuple(owner), tuple(priority), tuple(successors))
    return ModifiedGame(base, origin, reverse, rtd)


def tw_policy(mg: ModifiedGame) -> FixedPolicy:
    bags = mg.rtd.bags

    def next_fn(S, node, v, history):
        if v not in mg.origin:
            raise AssertionError(f"rejected vertex {v} is not a copy vertex")
        j = mg.origin[v][1]
        if mg.rtd.parent[j] != node:
            raise AssertionError(f"copy vertex {v} does not lead to a child of node {node}")
        return bags[j] | {v}, j

    return FixedPolicy(next_fn, keep_last)


def solve_treewidth(g: ParityGame, td: TreeDecomposition, s: int, budget: int = 10**7,
                    stats: SearchStats | None = None, check: bool = True) -> Owner:
    if check:
        g.check()
        problems = validate_tree_decomposition(g, td)
        if problems:
            raise DecompositionError("; ".join(map(str, problems)))
    holders = td.nodes_containing(s)
    if not holders:
        raise DecompositionError(f"vertex {s} is in no bag")
    root = min(holders)
    mg = modify_game(g, root_decomposition(td, root))
    game = SimulationGame(mg.base, tw_policy(mg))
    search = AlternatingSearch(game, budget)
    outcome = solve_simulation(mg.base, td.bags[root], s, game.policy, node0=root, search=search)
    if stats is not None:
        stats.merge(search.stats)
    return outcome.winner
