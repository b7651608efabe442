"""Simulation-game solver driven by a DAG decomposition."""

from __future__ import annotations

from ..decomp import (DagDecomposition, DecompositionError, guarded, next_dag_node,
                      validate_dag_decomposition)
from ..game import Owner, ParityGame
from ..simgame import FixedPolicy, SearchStats, keep_last, solve_simulation
from ..simgame import AlternatingSearch, SimulationGame


def dag_policy(dd: DagDecomposition) -> FixedPolicy:
    """Move to the lowest-id child covering the rejected vertex; keep the newest record."""

    def next_fn(S, node, v, history):
        try:
            j = next_dag_node(dd, node, v)
        except DecompositionError as exc:
            raise AssertionError(f"no child of {node} covers rejected vertex {v}") from exc
        return dd.bags[j], j

    return FixedPolicy(next_fn, keep_last)


def dag_source(dd: DagDecomposition, s: int) -> int:
    for i in dd.sources:
        if s in dd.bags[i] or s in guarded(dd, i):
            return i
    raise DecompositionError(f"no source node covers vertex {s}")


def solve_dagwidth(g: ParityGame, dd: DagDecomposition, s: int, budget: int = 10**7,
                   stats: SearchStats | None = None, check: bool = True) -> Owner:
    if check:
        g.check()
        problems = validate_dag_decomposition(g, dd)
        if problems:
            raise DecompositionError("; ".join(map(str, problems)))
    i = dag_source(dd, s)
    game = SimulationGame(g, dag_policy(dd))
    search = AlternatingSearch(game, budget)
    outcome = solve_simulation(g, dd.bags[i], s, game.policy, node0=i, search=search)
    # every reject moves one edge down the DAG
    assert search.stats.max_rejects <= len(dd.bags), "reject chain longer than the DAG"
    if stats is not None:
        stats.merge(search.stats)
    return outcome.winner
