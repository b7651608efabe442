"""Parity games solved through simulation games over graph decompositions."""

from .decomp import (DagDecomposition, DecompositionError, RootedTreeDecomposition,
                     TreeDecomposition, build_tree_decomposition_heuristic, orient,
                     parse_decomposition, root_decomposition, validate_dag_decomposition,
                     validate_tree_decomposition, width, write_decomposition)
from .game import (EVEN, ODD, InvalidGameError, InvalidStrategyError, Owner, ParityGame,
                   Strategy, cmp_significance, play, restrict, significance_key,
                   swap_players, validate_game)
from .oracles import InstanceTooLarge, WinningPartition, solve_bruteforce, solve_zielonka
from .pgsolver import PGSolverSyntaxError, parse_pgsolver, read_game, write_game, write_pgsolver
from .profiles import StrategyProfile, achievable_maxima, profile_of_strategy, refutes
from .simgame import BudgetExceeded, GameOutcome, solve_simulation
from .solvers import (TREEWIDTH_EXCEEDED, modify_game, round_bound, solve_dagwidth, solve_nc,
                      solve_treewidth)

__version__ = "0.1.0"
