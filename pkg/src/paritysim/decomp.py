"""Tree and DAG decompositions of parity games.

Node ids are integers.  Tree edges are stored as sorted pairs, DAG edges as
ordered pairs.  Width follows the max-bag-size convention (no minus one).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .game import ParityGame


class DecompositionError(ValueError):
    pass


def _freeze_bags(bags: Mapping[int, Iterable[int]]) -> dict[int, frozenset[int]]:
    return {int(i): frozenset(b) for i, b in bags.items()}


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "bags", _freeze_bags(self.bags))
        object.__setattr__(self, "edges", frozenset(
            (min(i, j), max(i, j)) for i, j in self.edges))

    def __hash__(self):
        return hash((tuple(sorted((i, tuple(sorted(b))) for i, b in self.bags.items())), self.edges))

    @property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        return _adjacency(self.bags, self.edges)

    def nodes_containing(self, v: int) -> list[int]:
        return [i for i in self.nodes if v in self.bags[i]]


@dataclass(frozen=True)
class DagDecomposition:
    bags: Mapping[int, frozenset[int]]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "bags", _freeze_bags(self.bags))
        object.__setattr__(self, "edges", frozenset((int(i), int(j)) for i, j in self.edges))

    def __hash__(self):
        return hash((tuple(sorted((i, tuple(sorted(b))) for i, b in self.bags.items())), self.edges))

    @property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    @cached_property
    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {i: [] for i in self.bags}
        for i, j in self.edges:
            if i in ch:
                ch[i].append(j)
        return {i: sorted(js) for i, js in ch.items()}

    @cached_property
    def sources(self) -> list[int]:
        targets = {j for _, j in self.edges}
        return [i for i in self.nodes if i not in targets]

    @cached_property
    def below(self) -> dict[int, frozenset[int]]:
        """Reflexive-transitive successors of every node."""
        out: dict[int, frozenset[int]] = {}
        for i in self.nodes:
            seen = {i}
            stack = [i]
            while stack:
                x = stack.pop()
                for y in self.children.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out[i] = frozenset(seen)
        return out

    def bag_union(self, nodes: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for k in nodes:
            out |= self.bags[k]
        return frozenset(out)


@dataclass(frozen=True)
class RootedTreeDecomposition:
    base: TreeDecomposition
    root: int
    parent: Mapping[int, int | None]
    children: Mapping[int, tuple[int, ...]]
    depth: Mapping[int, int]
    first: Mapping[int, int]

    @property
    def bags(self):
        return self.base.bags

    @property
    def nodes(self):
        return self.base.nodes

    def directed_edges(self) -> list[tuple[int, int]]:
        return sorted((p, i) for i, p in self.parent.items() if p is not None)


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str

    def __str__(self):
        return f"{self.condition}: {self.detail}"


def _adjacency(nodes, edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {i: [] for i in nodes}
    for i, j in edges:
        if i in adj and j in adj:
            adj[i].append(j)
            adj[j].append(i)
    return {i: sorted(n) for i, n in adj.items()}


def _component(adj, start, removed=None, allowed=None) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y == removed or y in seen or (allowed is not None and y not in allowed):
                continue
            seen.add(y)
            queue.append(y)
    return seen


# -- validation ---------------------------------------------------------------

def _check_cover(g: ParityGame, bags) -> list[Violation]:
    out = []
    covered = set().union(*bags.values()) if bags else set()
    for v in g.vertices:
        if v not in covered:
            out.append(Violation("condition-1", f"vertex {v} is in no bag"))
    for v in sorted(covered - set(g.vertices)):
        out.append(Violation("unknown-vertex", f"bag entry {v} is not a game vertex"))
    return out


def validate_tree_decomposition(g: ParityGame, td: TreeDecomposition) -> list[Violation]:
    out: list[Violation] = []
    nodes = set(td.bags)
    for i, j in sorted(td.edges):
        if i not in nodes or j not in nodes:
            out.append(Violation("not-a-tree", f"edge {i}-{j} uses an unknown node"))
        elif i == j:
            out.append(Violation("not-a-tree", f"self-loop at node {i}"))
    if not nodes:
        out.append(Violation("not-a-tree", "decomposition has no nodes"))
    else:
        if len(td.edges) != len(nodes) - 1 or len(_component(td.adjacency, min(nodes))) != len(nodes):
            out.append(Violation("not-a-tree", "node graph is not a tree"))
    out += _check_cover(g, td.bags)
    for v, u in g.edges():
        if not any(v in b and u in b for b in td.bags.values()):
            out.append(Violation("condition-2", f"edge ({v}, {u}) lies in no bag"))
    if not any(x.condition == "not-a-tree" for x in out):
        for v in g.vertices:
            holding = set(td.nodes_containing(v))
            if holding and len(_component(td.adjacency, min(holding), allowed=holding)) != len(holding):
                out.append(Violation("condition-3", f"nodes containing vertex {v} are not connected"))
    return out


def _guards(g: ParityGame, guard: frozenset[int], region: frozenset[int]) -> list[tuple[int, int]]:
    """Edges leaving ``region`` that avoid ``guard``."""
    return [(v, u) for v in region for u in g.successors[v] if u not in guard and u not in region]


def validate_dag_decomposition(g: ParityGame, dd: DagDecomposition) -> list[Violation]:
    """Check acyclicity and the three DAG-decomposition conditions.

    Additionally every source must have an edge-closed region below it
    (the empty set guards it); without this, bags need not cover game edges.
    """
    out: list[Violation] = []
    nodes = set(dd.bags)
    if not nodes:
        out.append(Violation("cyclic", "decomposition has no nodes"))
    for i, j in sorted(dd.edges):
        if i not in nodes or j not in nodes:
            out.append(Violation("cyclic", f"edge {i}->{j} uses an unknown node"))
    if out:
        return out + _check_cover(g, dd.bags)
    below = dd.below
    for i in dd.nodes:
        if any(i in below[j] for j in dd.children[i]):
            out.append(Violation("cyclic", f"node {i} lies on a directed cycle"))
    if out:
        return out
    out += _check_cover(g, dd.bags)
    for i, j in sorted(dd.edges):
        guard = dd.bags[i] & dd.bags[j]
        region = dd.bag_union(below[j]) - dd.bags[i]
        leaks = _guards(g, guard, region)
        if leaks:
            out.append(Violation("condition-2", f"edge {leaks[0]} escapes the guard of {i}->{j}"))
    for i in dd.nodes:
        for j in below[i]:
            common = dd.bags[i] & dd.bags[j]
            if not common:
                continue
            for k in below[i] & frozenset(x for x in nodes if j in below[x]):
                if not common <= dd.bags[k]:
                    out.append(Violation("condition-3", f"{i} <= {k} <= {j} but bag {k} misses "
                                         f"{sorted(common - dd.bags[k])}"))
    for i in dd.sources:
        leaks = _guards(g, frozenset(), dd.bag_union(below[i]))
        if leaks:
            out.append(Violation("source-closure", f"edge {leaks[0]} leaves the region below source {i}"))
    return out


# -- basic queries ------------------------------------------------------------

def width(d) -> int:
    if not d.bags:
        raise DecompositionError("decomposition has no nodes")
    return max(len(b) for b in d.bags.values())


def direction_tree(td: TreeDecomposition, i: int, v: int) -> int:
    """Neighbour of ``i`` on the path towards the nearest bag holding ``v``."""
    if i not in td.bags:
        raise DecompositionError(f"unknown node {i}")
    if v in td.bags[i]:
        raise DecompositionError(f"vertex {v} is already in bag {i}")
    adj = td.adjacency
    first_step = {j: j for j in adj[i]}
    queue = deque(adj[i])
    seen = {i, *adj[i]}
    while queue:
        x = queue.popleft()
        if v in td.bags[x]:
            return first_step[x]
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                first_step[y] = first_step[x]
                queue.append(y)
    raise DecompositionError(f"vertex {v} is in no bag")


def subtree_nodes(td: TreeDecomposition, i: int, v: int) -> frozenset[int]:
    """Component of the tree minus ``i`` that contains ``direction_tree(td, i, v)``."""
    j = direction_tree(td, i, v)
    return frozenset(_component(td.adjacency, j, removed=i))


def guarded(dd: DagDecomposition, i: int) -> frozenset[int]:
    if i not in dd.bags:
        raise DecompositionError(f"unknown node {i}")
    below = dd.below
    reach: set[int] = set()
    for j in dd.children[i]:
        reach |= below[j]
    return dd.bag_union(reach) - dd.bags[i]


def direction_dag(dd: DagDecomposition, i: int, v: int) -> int:
    """Lowest-id child ``j`` of ``i`` with ``v`` in its bag or guarded set."""
    if v not in guarded(dd, i):
        raise DecompositionError(f"vertex {v} is not guarded by node {i}")
    return next_dag_node(dd, i, v)


def next_dag_node(dd: DagDecomposition, i: int, v: int) -> int:
    for j in dd.children[i]:
        if v in dd.bags[j] or v in guarded(dd, j):
            return j
    raise DecompositionError(f"no child of node {i} covers vertex {v}")


def root_decomposition(td: TreeDecomposition, root: int) -> RootedTreeDecomposition:
    if root not in td.bags:
        raise DecompositionError(f"unknown root {root}")
    adj = td.adjacency
    parent: dict[int, int | None] = {root: None}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
                queue.append(y)
    if len(parent) != len(td.bags):
        raise DecompositionError("decomposition tree is not connected")
    children = {i: tuple(sorted(j for j, p in parent.items() if p == i)) for i in td.bags}
    first: dict[int, int] = {}
    for x in order:
        for v in td.bags[x]:
            first.setdefault(v, x)
    return RootedTreeDecomposition(td, root, parent, children, depth, first)


def orient(td: TreeDecomposition, root: int) -> DagDecomposition:
    """Read a tree decomposition as a DAG decomposition with edges away from ``root``."""
    rtd = root_decomposition(td, root)
    return DagDecomposition(td.bags, rtd.directed_edges())


def count_two_edge_paths(rtd: RootedTreeDecomposition) -> int:
    return sum(len(rtd.children[j]) for i in rtd.nodes for j in rtd.children[i])


# -- separators ---------------------------------------------------------------

def split_vertex(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
    """A node whose removal leaves components of at most two thirds of the nodes.

    Returns the lowest-id centroid, which leaves components of at most half.
    """
    nodes = sorted(set(nodes))
    if len(nodes) < 3:
        raise DecompositionError("splitting needs at least three nodes")
    adj = _adjacency(nodes, edges)
    n = len(nodes)
    if len(_component(adj, nodes[0])) != n:
        raise DecompositionError("node set does not induce a tree")
    # subtree sizes from an arbitrary root
    root = nodes[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    size = {x: 1 for x in nodes}
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    best, best_load = None, n + 1
    for x in nodes:
        parts = [size[y] for y in adj[x] if parent.get(y) == x]
        if parent[x] is not None:
            parts.append(n - size[x])
        load = max(parts, default=0)
        if load < best_load:
            best, best_load = x, load
    return best


def point_vertex(nodes: Iterable[int], edges: Iterable[tuple[int, int]], i: int, j: int, k: int) -> int:
    """The node whose removal pairwise separates ``i``, ``j`` and ``k``."""
    if len({i, j, k}) < 3:
        raise DecompositionError("point needs three distinct nodes")
    adj = _adjacency(list(nodes), edges)

    def path(a, b):
        prev = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        out = []
        x = b
        while x is not None:
            out.append(x)
            x = prev[x]
        return set(out)

    median = path(i, j) & path(j, k) & path(i, k)
    (m,) = median
    if m in (i, j, k):
        raise DecompositionError(f"nodes {i}, {j}, {k} lie on one path")
    return m


# -- heuristic construction ---------------------------------------------------

def _undirected(g: ParityGame) -> dict[int, set[int]]:
    adj = {v: set() for v in g.vertices}
    for v, u in g.edges():
        if v != u:
            adj[v].add(u)
            adj[u].add(v)
    return adj


def build_tree_decomposition_heuristic(g: ParityGame, method: str = "min-degree") -> TreeDecomposition:
    """Elimination-ordering tree decomposition (min-degree, or min-fill)."""
    if method not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown elimination heuristic {method!r}")
    adj = _undirected(g)
    remaining = set(g.vertices)
    order: list[int] = []
    bag_of: dict[int, frozenset[int]] = {}

    def fill(v):
        nb = list(adj[v])
        return sum(1 for a in range(len(nb)) for b in range(a + 1, len(nb)) if nb[b] not in adj[nb[a]])

    while remaining:
        if method == "min-degree":
            v = min(remaining, key=lambda x: (len(adj[x]), x))
        else:
            v = min(remaining, key=lambda x: (fill(x), len(adj[x]), x))
        nb = adj[v]
        bag_of[v] = frozenset(nb | {v})
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        remaining.discard(v)
        order.append(v)
        del adj[v]

    position = {v: i for i, v in enumerate(order)}
    bags = {i: bag_of[v] for i, v in enumerate(order)}
    edges = []
    for i, v in enumerate(order[:-1]):
        later = [u for u in bag_of[v] if u != v]
        # attach to the bag of the earliest-eliminated remaining neighbour
        target = min((position[u] for u in later), default=i + 1)
        edges.append((i, target))
    return normalize(TreeDecomposition(bags, edges))


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """Contract every tree edge whose one bag is a subset of the other."""
    bags = dict(td.bags)
    edges = {tuple(e) for e in td.edges}
    changed = True
    while changed:
        changed = False
        for i, j in sorted(edges):
            if bags[i] <= bags[j] or bags[j] <= bags[i]:
                keep, drop = (j, i) if bags[i] <= bags[j] else (i, j)
                edges.discard((i, j))
                edges = {(keep if a == drop else a, keep if b == drop else b) for a, b in edges}
                edges = {(min(a, b), max(a, b)) for a, b in edges}
                del bags[drop]
                changed = True
                break
    # renumber densely
    ids = {old: new for new, old in enumerate(sorted(bags))}
    return TreeDecomposition({ids[i]: b for i, b in bags.items()},
                             [(ids[a], ids[b]) for a, b in edges])


# -- text format --------------------------------------------------------------

_LINE = re.compile(r"^(td|b|e|rooted)\b(.*);$")


@dataclass
class DecompositionFile:
    """Parsed decomposition file; the consumer chooses tree or DAG reading."""

    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]]
    root: int | None = None

    def tree(self) -> TreeDecomposition:
        return TreeDecomposition(self.bags, self.edges)

    def dag(self) -> DagDecomposition:
        if self.root is not None:
            return orient(self.tree(), self.root)
        return DagDecomposition(self.bags, self.edges)


def parse_decomposition(text: str) -> DecompositionFile:
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    root = None
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise DecompositionError(f"line {lineno}: cannot parse {line!r}")
        kind, rest = m.group(1), m.group(2).strip()
        try:
            if kind == "td":
                continue
            if kind == "b":
                head, _, tail = rest.partition(" ")
                node = int(head)
                if node in bags:
                    raise DecompositionError(f"line {lineno}: duplicate bag {node}")
                bags[node] = frozenset(int(x) for x in tail.replace(" ", "").split(",") if x)
            elif kind == "e":
                a, b = rest.split()
                edges.append((int(a), int(b)))
            else:
                root = int(rest)
        except ValueError as exc:
            raise DecompositionError(f"line {lineno}: {exc}") from None
    return DecompositionFile(bags, edges, root)


def write_decomposition(d, root: int | None = None) -> str:
    w = width(d) if d.bags else 0
    lines = [f"td {len(d.bags)} {w};"]
    for i in sorted(d.bags):
        members = ",".join(map(str, sorted(d.bags[i])))
        lines.append(f"b {i} {members};" if members else f"b {i};")
    for i, j in sorted(d.edges):
        lines.append(f"e {i} {j};")
    if root is not None:
        lines.append(f"rooted {root};")
    return "\n".join(lines) + "\n"
