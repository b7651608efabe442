from ..game import swap_players
from .dagwidth import dag_policy, dag_source, solve_dagwidth
from .nc import (TREEWIDTH_EXCEEDED, SliceReducePolicy, SliceReduceState, UniversalPolicy,
                 round_bound, solve_nc, solve_nc_side)
from .treewidth import ModifiedGame, modify_game, solve_treewidth, tw_policy

__all__ = [
    "ModifiedGame", "SliceReducePolicy", "SliceReduceState", "TREEWIDTH_EXCEEDED",
    "UniversalPolicy", "dag_policy", "dag_source", "modify_game", "round_bound",
    "solve_dagwidth", "solve_nc", "solve_nc_side", "solve_treewidth", "swap_players",
    "tw_policy",
]
