"""Strategy profiles: the best exit priority a strategy allows towards each
vertex of a final set, and the refutation test used by Odd."""

from __future__ import annotations

from typing import Iterable, Mapping

from .game import EVEN, ParityGame, Strategy, restrict, sig_max, sig_min, significance_key

UNREACHABLE = None


def claim_key(x: int | None) -> tuple[int, int]:
    """Significance key extended so that ``-`` sits below every priority."""
    if x is None:
        return (-1, 0)
    return significance_key(x)


class StrategyProfile(Mapping[int, "int | None"]):
    """Immutable map from a final set to a priority or ``None`` (unreachable)."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, entries: Mapping[int, int | None] | Iterable[tuple[int, int | None]]):
        items = dict(entries.items() if isinstance(entries, Mapping) else entries)
        self._items = tuple(sorted(items.items()))
        self._map = dict(self._items)
        self._hash = hash(self._items)

    @property
    def final_set(self) -> frozenset[int]:
        return frozenset(self._map)

    def __getitem__(self, u):
        return self._map[u]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, StrategyProfile):
            return self._items == other._items
        return NotImplemented

    def __str__(self):
        body = ", ".join(f"{u}: {'-' if p is None else p}" for u, p in self._items)
        return "{" + body + "}"

    __repr__ = __str__

    def all_unreachable(self) -> bool:
        return all(p is None for p in self._map.values())


def _forward(succ, start, allowed):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in succ[v]:
            if u in allowed and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def achievable_maxima(restricted: ParityGame, s: int, F: Iterable[int], u: int) -> frozenset[int]:
    """Maxima of all walks from ``s`` to ``u`` whose vertices before ``u`` avoid ``F``."""
    F = frozenset(F)
    if s in F:
        raise ValueError("start vertex must lie outside the final set")
    if u not in F:
        raise ValueError("target must belong to the final set")
    pri = restricted.priority
    succ = restricted.successors
    pred = restricted.predecessors()
    out = set()
    candidates = sorted({pri[x] for x in restricted.vertices if x not in F} | {pri[u]})
    for p in candidates:
        if pri[s] > p or pri[u] > p:
            continue
        inner = {x for x in restricted.vertices if x not in F and pri[x] <= p}
        fwd = _forward(succ, s, inner)
        # vertices of ``inner`` with an edge into u, then everything that reaches them
        bwd = {x for x in pred[u] if x in inner}
        stack = list(bwd)
        while stack:
            x = stack.pop()
            for y in pred[x]:
                if y in inner and y not in bwd:
                    bwd.add(y)
                    stack.append(y)
        if not (fwd & bwd):
            continue
        if pri[u] == p or any(pri[w] == p for w in fwd & bwd):
            out.add(p)
    return frozenset(out)


def profile_of_strategy(g: ParityGame, chi: Strategy, s: int, F: Iterable[int]) -> StrategyProfile:
    F = frozenset(F)
    restricted = restrict(g, chi)
    pick = sig_min if chi.owner == EVEN else sig_max
    entries = {}
    for u in F:
        maxima = achievable_maxima(restricted, s, F, u)
        entries[u] = pick(maxima) if maxima else UNREACHABLE
    return StrategyProfile(entries)


def refutes(tau_profile: StrategyProfile, P: StrategyProfile) -> bool:
    """Does Odd's true profile show that Even's claimed profile ``P`` is unattainable?

    Holds when every final vertex either carries ``-`` in ``P`` or gets a
    claim strictly better for Even than Odd's profile allows, with ``-``
    ranked below every priority.
    """
    if tau_profile.final_set != P.final_set:
        raise ValueError("profiles over different final sets")
    if P.all_unreachable():
        return True
    return all(P[u] is None or claim_key(tau_profile[u]) < claim_key(P[u]) for u in P)


def oracle_enumerate_walks(restricted: ParityGame, s: int, F: Iterable[int], u: int,
                           max_len: int | None = None) -> frozenset[int]:
    """Exhaustive walk enumeration; exponential, for tests only."""
    F = frozenset(F)
    if max_len is None:
        max_len = 2 * restricted.n
    pri = restricted.priority
    out: set[int] = set()
    seen_states = set()
    # state (vertex, max so far, length) is enough to enumerate all maxima
    stack = [(s, pri[s], 0)]
    while stack:
        v, m, length = stack.pop()
        if (v, m, length) in seen_states:
            continue
        seen_states.add((v, m, length))
        if length == max_len:
            continue
        for w in restricted.successors[v]:
            mw = max(m, pri[w])
            if w == u:
                out.add(mw)
            if w not in F:
                stack.append((w, mw, length + 1))
    return frozenset(out)
