"""Parity games, the significance ordering, strategies and plays."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class Owner(enum.IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Owner":
        return Owner(1 - self)

    def __str__(self) -> str:
        return self.name.capitalize()


EVEN = Owner.EVEN
ODD = Owner.ODD


class InvalidGameError(ValueError):
    pass


class InvalidStrategyError(ValueError):
    pass


# -- significance ordering ----------------------------------------------------

def significance_key(p: int) -> tuple[int, int]:
    """Sort key realising the significance order on priorities.

    Odd priorities come first, largest odd first; then even priorities in
    increasing order.  ``a`` precedes ``b`` iff ``key(a) < key(b)``.
    """
    if p % 2:
        return (0, -p)
    return (1, p)


def cmp_significance(a: int, b: int) -> int:
    """Return -1, 0 or 1 according as ``a`` is less, equally or more attractive to Even."""
    ka, kb = significance_key(a), significance_key(b)
    return (ka > kb) - (ka < kb)


def sig_min(priorities: Iterable[int]) -> int:
    return min(priorities, key=significance_key)


def sig_max(priorities: Iterable[int]) -> int:
    return max(priorities, key=significance_key)


# -- the game -----------------------------------------------------------------

@dataclass(frozen=True)
class ParityGame:
    """A finite parity game on vertices ``0..n-1``.

    Construction does not validate; call :func:`validate_game` or
    :meth:`check` before solving.
    """

    owner: tuple[Owner, ...]
    priority: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    names: tuple[str | None, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(Owner(o) for o in self.owner))
        object.__setattr__(self, "priority", tuple(int(p) for p in self.priority))
        object.__setattr__(self, "successors", tuple(tuple(s) for s in self.successors))
        if not self.names:
            object.__setattr__(self, "names", (None,) * len(self.owner))
        if not (len(self.owner) == len(self.priority) == len(self.successors) == len(self.names)):
            raise InvalidGameError("owner, priority, successors and names must have equal length")

    @classmethod
    def from_edges(cls, owner: Sequence[int], priority: Sequence[int],
                   edges: Iterable[tuple[int, int]], names=None) -> "ParityGame":
        succ: list[list[int]] = [[] for _ in owner]
        for v, u in edges:
            if u not in succ[v]:
                succ[v].append(u)
        return cls(tuple(owner), tuple(priority), tuple(tuple(s) for s in succ),
                   tuple(names) if names else ())

    @property
    def n(self) -> int:
        return len(self.owner)

    def __len__(self) -> int:
        return len(self.owner)

    @property
    def vertices(self) -> range:
        return range(len(self.owner))

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v in self.vertices for u in self.successors[v]]

    @property
    def priorities(self) -> frozenset[int]:
        """The priority set D (only priorities actually present)."""
        return frozenset(self.priority)

    def owned_by(self, player: Owner) -> list[int]:
        return [v for v in self.vertices if self.owner[v] == player]

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.vertices]
        for v in self.vertices:
            for u in self.successors[v]:
                pred[u].append(v)
        return pred

    def check(self) -> None:
        problems = validate_game(self)
        if problems:
            raise InvalidGameError("; ".join(str(p) for p in problems))


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class DeadEnd:
    vertex: int

    def __str__(self):
        return f"dead end at vertex {self.vertex}"


@dataclass(frozen=True)
class DanglingEdge:
    vertex: int
    target: int

    def __str__(self):
        return f"edge {self.vertex} -> {self.target} points to no vertex"


@dataclass(frozen=True)
class DuplicateId:
    vertex: int
    line: int | None = None

    def __str__(self):
        where = f" (line {self.line})" if self.line is not None else ""
        return f"duplicate vertex id {self.vertex}{where}"


def validate_game(g: ParityGame) -> list:
    """Return the list of structural problems of ``g``; empty means valid."""
    out: list = []
    n = g.n
    for v in g.vertices:
        if not g.successors[v]:
            out.append(DeadEnd(v))
        for u in g.successors[v]:
            if not 0 <= u < n:
                out.append(DanglingEdge(v, u))
        if g.priority[v] < 0:
            raise InvalidGameError(f"negative priority at vertex {v}")
    return out


# -- strategies and plays -----------------------------------------------------

@dataclass(frozen=True)
class Strategy:
    """Positional strategy: one chosen successor per vertex of ``owner``."""

    owner: Owner
    choice: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "owner", Owner(self.owner))
        object.__setattr__(self, "choice", dict(self.choice))

    def __call__(self, v: int) -> int:
        return self.choice[v]

    def __hash__(self):
        return hash((self.owner, tuple(sorted(self.choice.items()))))

    def check(self, g: ParityGame) -> None:
        for v in g.owned_by(self.owner):
            if v not in self.choice:
                raise InvalidStrategyError(f"strategy for {self.owner} undefined at vertex {v}")
            if self.choice[v] not in g.successors[v]:
                raise InvalidStrategyError(f"{v} -> {self.choice[v]} is not an edge")


def restrict(g: ParityGame, s: Strategy) -> ParityGame:
    """The game where ``s.owner`` is forced to play ``s``; other edges untouched."""
    s.check(g)
    succ = tuple((s.choice[v],) if g.owner[v] == s.owner else g.successors[v]
                 for v in g.vertices)
    return ParityGame(g.owner, g.priority, succ, g.names)


@dataclass(frozen=True)
class Lasso:
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def inf_priorities(self, g: ParityGame) -> frozenset[int]:
        return frozenset(g.priority[v] for v in self.cycle)

    def winner(self, g: ParityGame) -> Owner:
        return Owner(max(self.inf_priorities(g)) % 2)


def play(g: ParityGame, v0: int, sigma: Strategy, tau: Strategy) -> tuple[Lasso, Owner]:
    """Follow both positional strategies from ``v0`` until a vertex repeats."""
    if sigma.owner != EVEN or tau.owner != ODD:
        raise InvalidStrategyError("play expects an Even and an Odd strategy, in that order")
    sigma.check(g)
    tau.check(g)
    seen: dict[int, int] = {}
    path: list[int] = []
    v = v0
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = sigma(v) if g.owner[v] == EVEN else tau(v)
    lasso = Lasso(tuple(path[:seen[v]]), tuple(path[seen[v]:]))
    return lasso, lasso.winner(g)


def swap_players(g: ParityGame) -> ParityGame:
    """Exchange owners and shift every priority up by one."""
    return ParityGame(tuple(o.opponent for o in g.owner),
                      tuple(p + 1 for p in g.priority), g.successors, g.names)
