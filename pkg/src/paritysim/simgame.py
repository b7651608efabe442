"""The simulation game: a parity game played on a vertex set ``S`` where every
excursion outside ``S`` is summarised by a strategy profile that Even declares
and Odd either accepts or rejects.

The engine is a pure transition system over :class:`SimState`.  How the next
set and the retained history are chosen after a reject is delegated to a
:class:`Policy`.  :func:`solve_simulation` decides the game by exhaustive
alternating search; :func:`play_simulation` runs it with concrete agents.
"""

from __future__ import annotations

import enum
import itertools
import sys
import threading
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

from .game import EVEN, ODD, Owner, ParityGame, Strategy, significance_key
from .profiles import StrategyProfile, claim_key, profile_of_strategy, refutes


class BudgetExceeded(RuntimeError):
    """The search explored more states than allowed."""


class PolicyError(RuntimeError):
    pass


class IllegalMove(ValueError):
    def __init__(self, player: Owner, message: str):
        super().__init__(f"{player} made an illegal move: {message}")
        self.player = player


class SimulationDiverges(RuntimeError):
    """A state was revisited on the current search path without a round bound."""


# -- records and histories ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Record:
    F: frozenset[int]
    p: int | None
    P: StrategyProfile
    node: Hashable = None

    def __post_init__(self):
        if self.P.final_set != self.F:
            raise ValueError("record profile must be over the record's set")
        object.__setattr__(self, "_hash", hash((self.F, self.p, self.P, self.node)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Record):
            return NotImplemented
        return (self._hash == other._hash and self.p == other.p and self.F == other.F
                and self.node == other.node and self.P == other.P)

    def __hash__(self):
        return self._hash

    def _with_p(self, p: int | None) -> "Record":
        r = object.__new__(Record)
        r.__dict__.update(F=self.F, p=p, P=self.P, node=self.node,
                          _hash=hash((self.F, p, self.P, self.node)))
        return r


def _max(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def update_record(r: Record, p2: int | None) -> Record:
    p = _max(r.p, p2)
    return r if p == r.p else r._with_p(p)


def update_history(h: Sequence[Record], p2: int | None) -> tuple[Record, ...]:
    return tuple(update_record(r, p2) for r in h)


def is_subsequence(short: Sequence, long: Sequence) -> bool:
    it = iter(long)
    return all(any(x is y or x == y for y in it) for x in short)


class PathEntry(NamedTuple):
    v: int
    p: int
    u: int


def maxpri(path: Sequence[PathEntry]) -> int | None:
    return max((e.p for e in path), default=None)


def winner_of_lasso(path: Sequence[PathEntry]) -> Owner:
    """Winner of a simulated path whose last entry closes a cycle."""
    if not path:
        raise ValueError("empty path")
    end = path[-1].u
    for i, e in enumerate(path):
        if e.v == end:
            return Owner(max(x.p for x in path[i:]) % 2)
    raise ValueError("path does not end in a cycle")


# -- states and outcomes ------------------------------------------------------

class Phase(enum.Enum):
    STEP1 = 1
    STEP3 = 3
    STEP4 = 4


class Reason(enum.Enum):
    CYCLE = "CycleStep6"
    RETURN = "ReturnStep5"
    ROUND_BOUND = "RoundBoundExhausted"
    ODD_STUCK = "OddHasNoMove"


@dataclass(frozen=True)
class GameOutcome:
    winner: Owner
    reason: Reason
    trace: tuple[str, ...] = ()

    def __post_init__(self):
        if self.reason is Reason.ROUND_BOUND and self.winner != EVEN:
            raise ValueError("an exhausted round bound is always an Even win")


@dataclass(frozen=True)
class SimState:
    S: frozenset[int]
    history: tuple[Record, ...]
    c: int | None
    path: tuple[PathEntry, ...]
    phase: Phase
    node: Hashable = None
    pending: int | None = None
    offer: StrategyProfile | None = None
    round: int = 1
    rejects: int = 0
    ctx: Hashable = None

    def evolve(self, **changes) -> "SimState":
        # dataclasses.replace without the per-call field introspection
        new = object.__new__(SimState)
        new.__dict__.update(self.__dict__)
        new.__dict__.update(changes)
        return new

    def in_history(self, v: int) -> bool:
        return any(v in r.F for r in self.history)


@dataclass(frozen=True)
class Accept:
    u: int


@dataclass(frozen=True)
class Branch:
    """One admissible continuation after a reject: retained history and next set."""

    history: tuple[Record, ...]
    S: frozenset[int]
    node: Hashable = None
    ctx: Hashable = None


@dataclass(frozen=True)
class Reject:
    branch: Branch


# -- policies -----------------------------------------------------------------

class Policy:
    """Chooses what happens after Odd rejects.

    ``branches`` receives the current set, its decomposition node, the
    rejected vertex, the history with the new record already appended, and
    the policy's own memory.  It returns every admissible continuation; Odd
    picks one.  Policies must not look at profile contents.
    """

    # set when the returned histories are subsequences by construction
    trusted = False

    def start(self, S0: frozenset[int], node0: Hashable, s: int) -> Hashable:
        return None

    def branches(self, S, node, v, history, ctx) -> list[Branch]:
        raise NotImplementedError


class FixedPolicy(Policy):
    """Deterministic Next/Hist pair.

    ``next_fn(S, node, v, history) -> (S', node')`` and
    ``hist_fn(history) -> history``.
    """

    def __init__(self, next_fn: Callable, hist_fn: Callable):
        self.next_fn = next_fn
        self.hist_fn = hist_fn

    def branches(self, S, node, v, history, ctx):
        kept = tuple(self.hist_fn(history))
        S2, node2 = self.next_fn(S, node, v, kept)
        return [Branch(kept, frozenset(S2), node2, ctx)]


def keep_last(history: Sequence[Record]) -> tuple[Record, ...]:
    """Remember only the newest record."""
    return tuple(history[-1:])


class SingleBagPolicy(Policy):
    """For games played on the whole vertex set, where a reject cannot occur."""

    def branches(self, S, node, v, history, ctx):
        raise PolicyError(f"reject at vertex {v} although the set should contain every successor")


# -- the transition system ----------------------------------------------------

class SimulationGame:
    """Rules of the simulation game for one parity game and one policy."""

    def __init__(self, g: ParityGame, policy: Policy, round_bound: int | None = None,
                 literal: bool = False):
        self.g = g
        self.policy = policy
        self.round_bound = round_bound
        # The literal rules never count the rejected vertex's own priority:
        # the next subgame starts on it without a path entry.  By default it
        # is folded into every retained record, since play does pass through it.
        self.literal = literal
        self.domain = tuple(sorted(g.priorities, key=significance_key))
        self._records: dict[Record, Record] = {}

    # initialisation --------------------------------------------------------

    def initialize(self, S: Iterable[int], s: int, history: Sequence[Record] = (),
                   node: Hashable = None, ctx: Hashable = None, round: int = 1,
                   rejects: int = 0) -> SimState | GameOutcome:
        S = frozenset(S)
        if self.round_bound is not None and round > self.round_bound:
            return GameOutcome(EVEN, Reason.ROUND_BOUND)
        if s in S:
            return SimState(S, tuple(history), s, (), Phase.STEP1, node, None, None,
                            round, rejects, ctx)
        return SimState(S, tuple(history), None, (), Phase.STEP3, node, s, None,
                        round, rejects, ctx)

    def start(self, S0: Iterable[int], s: int, node0: Hashable = None) -> SimState | GameOutcome:
        S0 = frozenset(S0)
        return self.initialize(S0, s, (), node0, self.policy.start(S0, node0, s))

    # queries ----------------------------------------------------------------

    def to_move(self, state: SimState) -> Owner:
        if state.phase is Phase.STEP1:
            return self.g.owner[state.c]
        return EVEN if state.phase is Phase.STEP3 else ODD

    def all_profiles(self, S: frozenset[int]):
        order = sorted(S)
        for values in itertools.product((None,) + self.domain, repeat=len(order)):
            yield StrategyProfile(zip(order, values))

    def reject_branches(self, state: SimState) -> list[Branch]:
        assert state.phase is Phase.STEP4
        return self._branches(state, state.offer)

    def _branches(self, state: SimState, offer: StrategyProfile) -> list[Branch]:
        seen = maxpri(state.path)
        # see the note on ``literal``: the rejected vertex's priority is folded
        # in here, which commutes with whatever subsequence the policy keeps
        pv = None if self.literal else self.g.priority[state.pending]
        updated = update_history(state.history, _max(seen, pv))
        extended = updated + (Record(state.S, pv, offer, state.node),)
        # one object per distinct record keeps search keys cheap to compare
        extended = tuple(self._records.setdefault(r, r) for r in extended)
        branches = self.policy.branches(state.S, state.node, state.pending, extended, state.ctx)
        for b in () if self.policy.trusted else branches:
            if not is_subsequence(b.history, extended):
                raise PolicyError("history policy returned records that were not offered")
        return branches

    def moves(self, state: SimState) -> list:
        if state.phase is Phase.STEP1:
            return list(self.g.successors[state.c])
        if state.phase is Phase.STEP3:
            return list(self.all_profiles(state.S))
        accepts = [Accept(u) for u in sorted(state.S) if state.offer[u] is not None]
        return accepts + [Reject(b) for b in self.reject_branches(state)]

    # transitions ------------------------------------------------------------

    def apply(self, state: SimState, move) -> SimState | GameOutcome:
        if state.phase is Phase.STEP1:
            return self._edge(state, move)
        if state.phase is Phase.STEP3:
            if not isinstance(move, StrategyProfile) or move.final_set != state.S:
                raise IllegalMove(EVEN, f"expected a profile over {sorted(state.S)}")
            if any(p is not None and p not in self.g.priorities for p in move.values()):
                raise IllegalMove(EVEN, "profile uses a priority absent from the game")
            return state.evolve(phase=Phase.STEP4, offer=move)
        if isinstance(move, Accept):
            if move.u not in state.S or state.offer[move.u] is None:
                raise IllegalMove(ODD, f"cannot accept vertex {move.u}")
            return self._accept(state, move.u, state.offer[move.u])
        if isinstance(move, Reject):
            if move.branch not in self.reject_branches(state):
                raise IllegalMove(ODD, "reject continuation not offered by the policy")
            return self._reject(state, move.branch)
        raise IllegalMove(ODD, f"unknown move {move!r}")

    def _edge(self, state: SimState, v: int) -> SimState | GameOutcome:
        c = state.c
        if v not in self.g.successors[c]:
            raise IllegalMove(self.g.owner[c], f"{c} -> {v} is not an edge")
        if v in state.S or state.in_history(v):
            path = state.path + (PathEntry(c, self.g.priority[v], v),)
            return self._settle(state.evolve(c=v, path=path))
        return state.evolve(phase=Phase.STEP3, pending=v, offer=None)

    def _accept(self, state: SimState, u: int, p: int) -> SimState | GameOutcome:
        v = state.pending
        src = v if state.c is None else state.c
        path = state.path + (PathEntry(src, max(self.g.priority[v], p), u),)
        return self._settle(state.evolve(c=u, path=path, pending=None, offer=None))

    def _reject(self, state: SimState, branch: Branch) -> SimState | GameOutcome:
        return self.initialize(branch.S, state.pending, branch.history, branch.node,
                               branch.ctx, state.round + 1, state.rejects + 1)

    def _settle(self, state: SimState) -> SimState | GameOutcome:
        """Steps 5 and 6, then the start of the next round."""
        c = state.c
        back = adjudicate_step5(c, state.history, state.path)
        if back is not None:
            return GameOutcome(back, Reason.RETURN)
        for i, e in enumerate(state.path[:-1]):
            if e.v == c:
                return GameOutcome(winner_of_lasso(state.path[i:]), Reason.CYCLE)
        if state.path[-1].v == c:
            return GameOutcome(Owner(state.path[-1].p % 2), Reason.CYCLE)
        nxt = state.round + 1
        if self.round_bound is not None and nxt > self.round_bound:
            return GameOutcome(EVEN, Reason.ROUND_BOUND)
        return state.evolve(phase=Phase.STEP1, pending=None, offer=None, round=nxt)


def initialize(S: Iterable[int], s: int, history: Sequence[Record] = ()) -> SimState:
    """Initial state of a game on ``S`` from ``s``: Step 1 if ``s`` is in ``S``,
    otherwise Step 3 with ``s`` pending."""
    S = frozenset(S)
    if s in S:
        return SimState(S, tuple(history), s, (), Phase.STEP1)
    return SimState(S, tuple(history), None, (), Phase.STEP3, pending=s)


def adjudicate_step5(c: int, history: Sequence[Record], path: Sequence[PathEntry]) -> Owner | None:
    """Winner if ``c`` returns into a recorded set, else ``None``."""
    for rec in reversed(history):
        if c in rec.F:
            claim = rec.P[c]
            if claim is None:
                return ODD
            seen = _max(maxpri(path), rec.p)
            return EVEN if significance_key(seen) >= significance_key(claim) else ODD
    return None


# -- transcripts and agent-driven play ---------------------------------------

def _set_label(state: SimState) -> str:
    if state.node is not None:
        return str(state.node)
    return "{" + ",".join(map(str, sorted(state.S))) + "}"


def describe(state: SimState, move) -> str:
    head = f"round={state.round} step={state.phase.value} S={_set_label(state)} c={'-' if state.c is None else state.c}"
    if state.phase is Phase.STEP1:
        return f"{head} move=edge to={move}"
    if state.phase is Phase.STEP3:
        return f"{head} move=profile v={state.pending} P={move}"
    if isinstance(move, Accept):
        return f"{head} move=accept u={move.u} p={state.offer[move.u]}"
    b = move.branch
    nxt = b.node if b.node is not None else "{" + ",".join(map(str, sorted(b.S))) + "}"
    return f"{head} move=reject v={state.pending} next={nxt} kept={len(b.history)}"


Agent = Callable[[SimulationGame, SimState], object]


def run_round(game: SimulationGame, state: SimState, even_agent: Agent, odd_agent: Agent,
              trace: list[str] | None = None) -> SimState | GameOutcome:
    """Play one round (Steps 1-6) from a Step 1 or Step 3 state."""
    start_round = state.round
    while True:
        player = game.to_move(state)
        agent = even_agent if player == EVEN else odd_agent
        move = agent(game, state)
        if trace is not None:
            trace.append(describe(state, move))
        state = game.apply(state, move)
        if isinstance(state, GameOutcome) or state.round != start_round:
            return state
        if state.phase is Phase.STEP4:
            legal = [u for u in state.S if state.offer[u] is not None]
            if not legal and not game.reject_branches(state):
                return GameOutcome(EVEN, Reason.ODD_STUCK)


@dataclass
class PlayStats:
    rounds: int = 0
    rejects: int = 0
    max_history: int = 0


def play_simulation(game: SimulationGame, S0, s: int, even_agent: Agent, odd_agent: Agent,
                    node0: Hashable = None, max_rounds: int = 10_000,
                    stats: PlayStats | None = None) -> GameOutcome:
    trace: list[str] = []
    state = game.start(S0, s, node0)
    while not isinstance(state, GameOutcome):
        if stats is not None:
            stats.rounds = max(stats.rounds, state.round)
            stats.rejects = max(stats.rejects, state.rejects)
            stats.max_history = max(stats.max_history, len(state.history))
        if state.round > max_rounds:
            raise SimulationDiverges(f"play exceeded {max_rounds} rounds")
        state = run_round(game, state, even_agent, odd_agent, trace)
    trace.append(f"end winner={state.winner} reason={state.reason.value}")
    return GameOutcome(state.winner, state.reason, tuple(trace))


# -- scripted agents ----------------------------------------------------------

def follow_even(sigma: Strategy) -> Agent:
    """Even plays ``sigma`` on real edges and declares ``sigma``'s true profiles."""
    cache: dict = {}

    def agent(game: SimulationGame, state: SimState):
        if state.phase is Phase.STEP1:
            return sigma(state.c)
        key = (state.pending, state.S)
        if key not in cache:
            cache[key] = profile_of_strategy(game.g, sigma, state.pending, state.S)
        return cache[key]

    return agent


def follow_odd(tau: Strategy, choose_branch: Callable[[list[Branch]], Branch] | None = None) -> Agent:
    """Odd plays ``tau`` on real edges and rejects exactly the profiles ``tau`` refutes.

    When several reject continuations exist ``choose_branch`` picks one
    (default: the first).
    """
    cache: dict = {}

    def agent(game: SimulationGame, state: SimState):
        if state.phase is Phase.STEP1:
            return tau(state.c)
        key = (state.pending, state.S)
        if key not in cache:
            cache[key] = profile_of_strategy(game.g, tau, state.pending, state.S)
        mine = cache[key]
        offer = state.offer
        if refutes(mine, offer):
            branches = game.reject_branches(state)
            if not branches:
                # cannot reject: fall back to any legal accept
                return Accept(next(u for u in sorted(offer) if offer[u] is not None))
            return Reject(choose_branch(branches) if choose_branch else branches[0])
        for u in sorted(offer):
            if offer[u] is not None and claim_key(mine[u]) >= claim_key(offer[u]):
                return Accept(u)
        raise AssertionError("unrefuted profile without an acceptable vertex")

    return agent


def explore_outcomes(game: SimulationGame, S0, s: int, agent: Agent | None, player: Owner | None,
                     node0: Hashable = None, budget: int = 10**6,
                     stats: "SearchStats | None" = None) -> set[tuple[Owner, Reason]]:
    """Every ``(winner, reason)`` reachable when ``agent`` plays ``player`` and
    the opponent tries every legal move.  With ``agent=None`` both sides do.

    States are told apart by round too, so ``stats`` gets the exact maximum
    round, history length and reject count over all plays.  Needs a policy
    under which play cannot revisit a state (a round bound, or one whose
    rejects descend); otherwise raises SimulationDiverges.
    """
    outcomes: set[tuple[Owner, Reason]] = set()
    done: set = set()
    count = 0
    stack: list = [(game.start(S0, s, node0), False)]
    active: set = set()
    while stack:
        st, leaving = stack.pop()
        if isinstance(st, GameOutcome):
            outcomes.add((st.winner, st.reason))
            continue
        key = (st.phase, st.S, st.node, st.history, st.c, st.pending,
               _path_key(st.path, st.S), st.offer, st.ctx, st.round)
        if leaving:
            active.discard(key[:-1])
            done.add(key)
            continue
        if key in done:
            continue
        # the round grows along every play, so a repeat differs only by round
        loop = key[:-1]
        if loop in active:
            raise SimulationDiverges("exploration revisits a state")
        count += 1
        if count > budget:
            raise BudgetExceeded(f"explored more than {budget} states")
        if stats is not None:
            stats.states += 1
            stats.max_round = max(stats.max_round, st.round)
            stats.max_history = max(stats.max_history, len(st.history))
            stats.max_rejects = max(stats.max_rejects, st.rejects)
            stats.max_path = max(stats.max_path, len(st.path))
        active.add(loop)
        stack.append((st, True))
        if agent is not None and game.to_move(st) == player:
            options = [agent(game, st)]
        else:
            options = game.moves(st)
            if not options:
                outcomes.add((EVEN, Reason.ODD_STUCK))
        for move in options:
            stack.append((game.apply(st, move), False))
    return outcomes


# -- exhaustive alternating search --------------------------------------------

@dataclass
class SearchStats:
    states: int = 0
    max_history: int = 0
    max_rejects: int = 0
    max_round: int = 0
    max_path: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.states += other.states
        self.max_history = max(self.max_history, other.max_history)
        self.max_rejects = max(self.max_rejects, other.max_rejects)
        self.max_round = max(self.max_round, other.max_round)
        self.max_path = max(self.max_path, other.max_path)


def _path_key(path: Sequence[PathEntry], S: frozenset[int]):
    """What the future depends on: overall maximum and, for every visited
    source in ``S``, the maximum priority from its entry onwards."""
    overall = None
    suffix = {}
    for e in path:
        overall = _max(overall, e.p)
        for x in suffix:
            suffix[x] = max(suffix[x], e.p)
        if e.v in S:
            suffix[e.v] = e.p
    return overall, frozenset(suffix.items())


_NO_PATH = _path_key((), frozenset())


def _fresh_key(b: "Branch", v: int):
    # search key of the state a reject into ``b`` starts, as _key would build it
    if v in b.S:
        return (b.S, b.node, b.history, v, None, _NO_PATH, b.ctx)
    return (b.S, b.node, b.history, None, v, _NO_PATH, b.ctx)


class AlternatingSearch:
    """Memoised AND-OR search deciding whether Even wins a simulation game.

    At Step 3 Even's profile choice is reduced to a single candidate: for every
    vertex ``u`` the least attractive priority whose acceptance still wins for
    Even, or ``-`` if none does.  Lowering a claim can only help Even once the
    profile sits in a record, and offering a winning acceptance never hurts,
    so this candidate is optimal.
    """

    def __init__(self, game: SimulationGame, budget: int = 10**7, use_safety: bool = True,
                 prefer: Mapping[int, int] | None = None):
        self.game = game
        self.budget = budget
        # successors in the order they are tried; ``prefer`` puts one first.
        # The value of the search does not depend on it, only the time taken.
        prefer = prefer or {}
        self._succ = tuple(
            tuple(sorted(game.g.successors[v], key=lambda u, v=v: u != prefer.get(v)))
            for v in game.g.vertices)
        self.stats = SearchStats()
        self._memo: dict = {}
        self._active: set = set()
        # unbounded safety analysis, shared by all round-bounded queries
        self.use_safety = use_safety and game.round_bound is not None
        # same rules with no bound, so a cached verdict never leans on the round
        self._free = SimulationGame(game.g, game.policy, None, game.literal)
        self._free._records = game._records
        self._safe_final: dict = {}
        self._safe_cond: dict = {}
        self._safe_depth: dict = {}
        self._safe_waiting: list[list] = []

    def _key(self, st: SimState):
        # searched states sit at Step 1 or Step 3, told apart by ``pending``
        return (st.S, st.node, st.history, st.c, st.pending,
                _path_key(st.path, st.S), st.ctx)

    def _left(self, st: SimState) -> int | None:
        if self.game.round_bound is None:
            return None
        return self.game.round_bound - st.round

    def wins(self, st: SimState | GameOutcome) -> bool:
        """True iff Even wins from ``st``."""
        if isinstance(st, GameOutcome):
            return st.winner == EVEN
        key = self._key(st)
        left = self._left(st)
        known = self._memo.get(key)
        if known is not None:
            even_upto, odd_from = known
            if left is None:
                if even_upto is not None:
                    return True
                if odd_from is not None:
                    return False
            else:
                if even_upto is not None and left <= even_upto:
                    return True
                if odd_from is not None and left >= odd_from:
                    return False
        if self.use_safety and self.even_safe(st):
            self._memo[key] = (self.game.round_bound, None)
            return True
        if left is None:
            if key in self._active:
                raise SimulationDiverges("simulation game revisits a state; supply a round bound")
            self._active.add(key)
        try:
            result = self._evaluate(st)
        finally:
            if left is None:
                self._active.discard(key)
        even_upto, odd_from = known if known is not None else (None, None)
        lv = -1 if left is None else left
        if result:
            even_upto = lv if even_upto is None else max(even_upto, lv)
        else:
            odd_from = lv if odd_from is None else min(odd_from, lv)
        self._memo[key] = (even_upto, odd_from)
        return result

    def _count(self, st: SimState) -> None:
        s = self.stats
        s.states += 1
        if s.states > self.budget:
            raise BudgetExceeded(f"explored more than {self.budget} states")
        s.max_history = max(s.max_history, len(st.history))
        s.max_rejects = max(s.max_rejects, st.rejects)
        s.max_round = max(s.max_round, st.round)
        s.max_path = max(s.max_path, len(st.path))

    def _evaluate(self, st: SimState) -> bool:
        self._count(st)
        game = self.game
        if st.phase is Phase.STEP1:
            if game.g.owner[st.c] == EVEN:
                return any(self.wins(game._edge(st, v)) for v in self._succ[st.c])
            return all(self.wins(game._edge(st, v)) for v in self._succ[st.c])
        assert st.phase is Phase.STEP3
        offer = self.best_offer(st)
        branches = game._branches(st, offer)
        return all(self.wins(game._reject(st.evolve(offer=offer), b)) for b in branches)

    def best_offer(self, st: SimState) -> StrategyProfile:
        game = self.game
        entries = {}
        for u in sorted(st.S):
            entries[u] = None
            for p in game.domain:  # ascending attractiveness
                if self.wins(game._accept(st, u, p)):
                    entries[u] = p
                    break
        return StrategyProfile(entries)

    # unbounded safety -------------------------------------------------------
    #
    # Ignoring the round bound and counting endless play as an Even win gives
    # a safety game for Even.  Whoever is safe there wins every bounded
    # version too, and the answer does not depend on the round, so each state
    # is decided once.  Revisiting a state on the search stack is assumed
    # safe.  A result resting on such assumptions carries a bitmask of the
    # stack depths it assumed and stays provisional: it is dropped if one of
    # them turns out unsafe and becomes final once all of them are safe.
    # Unsafe verdicts never rest on assumptions (assuming safety only helps
    # Even), so they are final at once.

    def even_safe(self, st: SimState | GameOutcome) -> bool:
        """Can Odd never force an Odd win, however many rounds are played?"""
        val, _ = self._safe(st)
        return val

    def _safe(self, st):
        if isinstance(st, GameOutcome):
            return st.winner == EVEN, 0
        key = self._key(st)
        v = self._safe_final.get(key)
        if v is not None:
            return v, 0
        d = self._safe_depth.get(key)
        if d is not None:
            return True, 1 << d
        m = self._safe_cond.get(key)
        if m is not None:
            return True, m
        d = len(self._safe_depth)
        self._safe_depth[key] = d
        waiting = self._safe_waiting
        if len(waiting) <= d:
            waiting.append([])
        try:
            val, mask = self._safe_eval(st)
        finally:
            del self._safe_depth[key]
        bit = 1 << d
        cond = self._safe_cond
        # an entry waits on its deepest assumption only, which is the first
        # to finish; listed entries may be stale (dropped, or moved on)
        for k in waiting[d]:
            mk = cond.get(k)
            if mk is None or mk.bit_length() != d + 1:
                continue
            if not val:
                del cond[k]
            elif mk == bit:
                del cond[k]
                self._safe_final[k] = True
            else:
                mk ^= bit
                cond[k] = mk
                waiting[mk.bit_length() - 1].append(k)
        waiting[d] = []
        mask &= ~bit
        if not val or not mask:
            self._safe_final[key] = val
            return val, 0
        cond[key] = mask
        waiting[mask.bit_length() - 1].append(key)
        return True, mask

    def _safe_eval(self, st: SimState):
        self._count(st)
        game = self._free
        if st.phase is Phase.STEP1:
            succ = self._succ[st.c]
            if game.g.owner[st.c] == EVEN:
                for v in succ:
                    val, mask = self._safe(game._edge(st, v))
                    if val:
                        return True, mask
                return False, 0
            mask = 0
            for v in succ:
                val, m = self._safe(game._edge(st, v))
                if not val:
                    return False, 0
                mask |= m
            return True, mask
        mask = 0
        entries = {}
        for u in sorted(st.S):
            entries[u] = None
            for p in game.domain:
                val, m = self._safe(game._accept(st, u, p))
                if val:
                    entries[u] = p
                    mask |= m
                    break
        offer = StrategyProfile(entries)
        v = st.pending
        final = self._safe_final
        for b in game._branches(st, offer):
            # most reject successors are already decided; look them up before
            # building the state
            known = final.get(_fresh_key(b, v))
            if known is not None:
                if not known:
                    return False, 0
                continue
            val, m = self._safe(game._reject(st.evolve(offer=offer), b))
            if not val:
                return False, 0
            mask |= m
        return True, mask

    # principal play --------------------------------------------------------

    def even_agent(self, game: SimulationGame, st: SimState):
        if st.phase is Phase.STEP1:
            succ = self._succ[st.c]
            return next((v for v in succ if self.wins(game._edge(st, v))), succ[0])
        return self.best_offer(st)

    def odd_agent(self, game: SimulationGame, st: SimState):
        if st.phase is Phase.STEP1:
            succ = self._succ[st.c]
            return next((v for v in succ if not self.wins(game._edge(st, v))), succ[0])
        options = game.moves(st)
        for m in options:
            if not self.wins(game.apply(st, m)):
                return m
        rejects = [m for m in options if isinstance(m, Reject)]
        return rejects[0] if rejects else options[0]


def _deep_call(fn, *args, **kwargs):
    """Run a deeply recursive search on a thread with a large stack."""
    if threading.current_thread().name == "paritysim-search":
        return fn(*args, **kwargs)
    box = {}

    def target():
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised in the caller
            box["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, 200_000))
    threading.stack_size(1 << 29)
    try:
        worker = threading.Thread(target=target, name="paritysim-search")
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in box:
        raise box["error"]
    return box["value"]


def solve_simulation(g: ParityGame, S0: Iterable[int], s: int, policy: Policy,
                     round_bound: int | None = None, budget: int = 10**7,
                     node0: Hashable = None, with_trace: bool = False,
                     search: AlternatingSearch | None = None,
                     literal: bool = False) -> GameOutcome:
    """Decide the simulation game by exhaustive alternating search.

    With ``with_trace`` a principal play (both sides following the search) is
    replayed to report how the game ends; otherwise the reason is that of the
    principal play's terminal as well, but no transcript is kept.
    """
    game = search.game if search is not None else SimulationGame(g, policy, round_bound, literal)
    search = search or AlternatingSearch(game, budget)
    root = game.start(S0, s, node0)
    even = _deep_call(search.wins, root)
    outcome = _deep_call(play_simulation, game, S0, s, search.even_agent, search.odd_agent,
                         node0, max_rounds=10**6)
    if (outcome.winner == EVEN) != even:
        raise AssertionError("principal play disagrees with the search value")
    return GameOutcome(outcome.winner, outcome.reason, outcome.trace if with_trace else ())
