"""Reference solvers used as ground truth: Zielonka's recursive algorithm and
brute-force enumeration of positional strategies."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from .game import EVEN, ODD, Owner, ParityGame, Strategy, restrict


class InstanceTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class WinningPartition:
    even_wins: frozenset[int]
    odd_wins: frozenset[int]
    even_strategy: Strategy | None = None
    odd_strategy: Strategy | None = None

    def winner(self, v: int) -> Owner:
        return EVEN if v in self.even_wins else ODD

    def region(self, player: Owner) -> frozenset[int]:
        return self.even_wins if player == EVEN else self.odd_wins

    def strategy(self, player: Owner) -> Strategy | None:
        return self.even_strategy if player == EVEN else self.odd_strategy


def attractor(g: ParityGame, arena: set[int], target: set[int], player: Owner,
              pred: list[list[int]]) -> tuple[set[int], dict[int, int]]:
    """Attractor of ``target`` for ``player`` inside ``arena``.

    Returns the attractor and, for the player's vertices added outside the
    target, the edge that moves one step closer.
    """
    attr = set(target)
    strat: dict[int, int] = {}
    remaining = {v: sum(1 for u in g.successors[v] if u in arena)
                 for v in arena if g.owner[v] != player}
    queue = deque(attr)
    while queue:
        u = queue.popleft()
        for v in pred[u]:
            if v not in arena or v in attr:
                continue
            if g.owner[v] == player:
                attr.add(v)
                strat[v] = u
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strat


def _zielonka(g: ParityGame, arena: set[int], pred) -> tuple[set[int], set[int], dict, dict]:
    if not arena:
        return set(), set(), {}, {}
    d = max(g.priority[v] for v in arena)
    me = Owner(d % 2)
    top = {v for v in arena if g.priority[v] == d}
    attr, attr_strat = attractor(g, arena, top, me, pred)
    sub = _zielonka(g, arena - attr, pred)
    w_sub = {EVEN: sub[0], ODD: sub[1]}
    s_sub = {EVEN: sub[2], ODD: sub[3]}
    if not w_sub[me.opponent]:
        strat = dict(s_sub[me])
        strat.update(attr_strat)
        for v in top:
            if g.owner[v] == me:
                strat[v] = next(u for u in g.successors[v] if u in arena)
        win = {me: set(arena), me.opponent: set()}
        strats = {me: strat, me.opponent: {}}
    else:
        opp = me.opponent
        battr, battr_strat = attractor(g, arena, w_sub[opp], opp, pred)
        rest = _zielonka(g, arena - battr, pred)
        w_rest = {EVEN: rest[0], ODD: rest[1]}
        s_rest = {EVEN: rest[2], ODD: rest[3]}
        opp_strat = dict(s_rest[opp])
        opp_strat.update(s_sub[opp])
        opp_strat.update(battr_strat)
        win = {me: w_rest[me], opp: w_rest[opp] | battr}
        strats = {me: dict(s_rest[me]), opp: opp_strat}
    return win[EVEN], win[ODD], strats[EVEN], strats[ODD]


def solve_zielonka(g: ParityGame) -> WinningPartition:
    """Winning regions of both players with positional witness strategies."""
    g.check()
    pred = g.predecessors()
    w0, w1, s0, s1 = _zielonka(g, set(g.vertices), pred)
    # complete both strategies on the opponent's region with any edge
    for v in g.vertices:
        if g.owner[v] == EVEN and v not in s0:
            s0[v] = g.successors[v][0]
        if g.owner[v] == ODD and v not in s1:
            s1[v] = g.successors[v][0]
    return WinningPartition(frozenset(w0), frozenset(w1),
                            Strategy(EVEN, s0), Strategy(ODD, s1))


# -- one-player analysis ------------------------------------------------------

def _reachable(succ, start: int, allowed=None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in succ[v]:
            if u not in seen and (allowed is None or u in allowed):
                seen.add(u)
                stack.append(u)
    return seen


def opponent_can_win(restricted: ParityGame, v0: int, player: Owner) -> bool:
    """In a graph where ``player`` has no remaining choice, can the opponent
    reach a cycle whose maximum priority has the opponent's parity?"""
    succ = restricted.successors
    pri = restricted.priority
    reach = _reachable(succ, v0)
    bad = 1 - int(player)
    for p in sorted({pri[v] for v in reach if pri[v] % 2 == bad}):
        allowed = {v for v in reach if pri[v] <= p}
        for w in allowed:
            if pri[w] != p:
                continue
            # a cycle through w inside vertices of priority <= p
            if any(u == w or (u in allowed and w in _reachable(succ, u, allowed))
                   for u in succ[w] if u in allowed):
                return True
    return False


def strategy_wins(g: ParityGame, strategy: Strategy, v0: int) -> bool:
    """Does ``strategy`` win from ``v0`` against every opponent behaviour?"""
    return not opponent_can_win(restrict(g, strategy), v0, strategy.owner)


def strategy_count(g: ParityGame, player: Owner) -> int:
    return math.prod(len(g.successors[v]) for v in g.owned_by(player))


def all_strategies(g: ParityGame, player: Owner):
    owned = g.owned_by(player)
    for picks in itertools.product(*(g.successors[v] for v in owned)):
        yield Strategy(player, dict(zip(owned, picks)))


def solve_bruteforce(g: ParityGame, s: int, limit: int = 10**6) -> Owner:
    """Winner of ``s`` by trying every positional Even strategy."""
    g.check()
    count = strategy_count(g, EVEN)
    if count > limit:
        raise InstanceTooLarge(f"{count} Even strategies exceed the limit of {limit}")
    for sigma in all_strategies(g, EVEN):
        if strategy_wins(g, sigma, s):
            return EVEN
    return ODD
