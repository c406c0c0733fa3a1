"""Graphs, configurations, identifier assignments and radius-t views.

Nodes are indexed ``0..n-1``.  Identifiers are a separate concern and only
exist inside an :class:`IdAssignment`; nothing here assumes that a node's
index says anything about its identifier.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "GraphError",
    "SelfLoop",
    "DuplicateEdge",
    "Disconnected",
    "Graph",
    "Configuration",
    "IdAssignment",
    "RadiusView",
    "Permutation",
    "build_graph",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "distances",
    "is_tree",
    "has_cycle",
    "ball",
    "views_isomorphic",
    "refine_colors",
    "find_fpf_automorphism",
    "is_automorphism",
]


class GraphError(ValueError):
    """A graph violates one of the topology invariants."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """A simple, undirected, connected graph stored as sorted adjacency tuples."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with node ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise GraphError(f"a graph needs at least one node, got n={n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) appears twice")
        nbrs[u].add(v)
        nbrs[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        for y in nbrs[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise Disconnected(f"graph is disconnected: node 0 reaches {len(seen)} of {n} nodes")
    return Graph(n, tuple(tuple(sorted(a)) for a in nbrs))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 nodes")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at node 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _is_bits(s: str) -> bool:
    return all(ch in "01" for ch in s)


@dataclass(frozen=True)
class Configuration:
    """A graph together with one binary-string input per node."""

    graph: Graph
    inputs: tuple[str, ...]

    def __post_init__(self):
        inputs = tuple(self.inputs)
        object.__setattr__(self, "inputs", inputs)
        if len(inputs) != self.graph.n:
            raise ValueError(f"{len(inputs)} inputs for {self.graph.n} nodes")
        for s in inputs:
            if not isinstance(s, str) or not _is_bits(s):
                raise ValueError(f"input {s!r} is not a binary string")

    @classmethod
    def plain(cls, graph: Graph) -> "Configuration":
        """The configuration with every input empty."""
        return cls(graph, ("",) * graph.n)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def max_input_len(self) -> int:
        return max((len(s) for s in self.inputs), default=0)

    def relabel(self, perm: Sequence[int]) -> "Configuration":
        inputs = [""] * self.n
        for v, s in enumerate(self.inputs):
            inputs[perm[v]] = s
        return Configuration(self.graph.relabel(perm), tuple(inputs))


@dataclass(frozen=True)
class IdAssignment:
    ids: tuple[int, ...]
    universe_bound: int

    def __post_init__(self):
        ids = tuple(int(x) for x in self.ids)
        object.__setattr__(self, "ids", ids)
        if len(set(ids)) != len(ids):
            raise ValueError("identifiers must be distinct")
        for x in ids:
            if not 1 <= x <= self.universe_bound:
                raise ValueError(f"identifier {x} outside 1..{self.universe_bound}")

    @classmethod
    def identity(cls, n: int, degree: int = 2) -> "IdAssignment":
        return cls(tuple(range(1, n + 1)), max(1, n**degree))

    @classmethod
    def of(cls, ids: Sequence[int], degree: int = 2) -> "IdAssignment":
        n = len(ids)
        return cls(tuple(ids), max(max(ids, default=1), n**degree, 1))

    def within_degree(self, degree: int) -> bool:
        return self.universe_bound <= max(1, len(self.ids) ** degree)

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class RadiusView:
    """Everything a node sees after ``radius`` rounds.

    Local node 0 is the root.  Nodes are ordered by (distance, identifier), so
    the layout depends only on what the root can observe, never on the global
    node indices.  ``adj`` omits edges joining two nodes at distance exactly
    ``radius``.
    """

    radius: int
    dist: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...]
    ids: tuple[int, ...]
    inputs: tuple[str, ...]
    certs: tuple[str, ...]

    root = 0

    @property
    def size(self) -> int:
        return len(self.dist)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.size) for v in self.adj[u] if u < v]

    def neighbors(self, x: int = 0) -> tuple[int, ...]:
        return self.adj[x]

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.adj[x]

    def interior(self) -> list[int]:
        """Local nodes whose whole neighborhood is visible."""
        return [x for x, d in enumerate(self.dist) if d < self.radius]


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"{self.mapping} is not a bijection")

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def fixed_points(self) -> list[int]:
        return [v for v, w in enumerate(self.mapping) if v == w]


def distances(g: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    """BFS distances from ``source``, optionally cut off at ``limit``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_tree(g: Graph) -> bool:
    # build_graph guarantees connectivity
    return g.m == g.n - 1


def has_cycle(g: Graph) -> bool:
    return not is_tree(g)


def ball_members(g: Graph, ids: Sequence[int], v: int, t: int) -> tuple[list[int], list[int]]:
    """Global node indices of ``N_t(v)`` in view order, with their distances."""
    dist = distances(g, v, t)
    order = sorted(dist, key=lambda x: (dist[x], ids[x]))
    return order, [dist[x] for x in order]


def ball(
    config: Configuration,
    ids: IdAssignment,
    certs: Sequence[str] | None,
    v: int,
    t: int,
) -> RadiusView:
    if t < 0:
        raise ValueError("radius must be non-negative")
    g = config.graph
    order, dist = ball_members(g, ids.ids, v, t)
    local = {x: i for i, x in enumerate(order)}
    adj = []
    for i, x in enumerate(order):
        row = [local[y] for y in g.adj[x] if y in local and min(dist[i], dist[local[y]]) < t]
        adj.append(tuple(sorted(row)))
    return RadiusView(
        radius=t,
        dist=tuple(dist),
        adj=tuple(adj),
        ids=tuple(ids.ids[x] for x in order),
        inputs=tuple(config.inputs[x] for x in order),
        certs=tuple(certs[x] for x in order) if certs is not None else ("",) * len(order),
    )


def _view_signature(view: RadiusView, x: int, compare_ids: bool) -> tuple:
    sig = (view.dist[x], len(view.adj[x]), view.inputs[x], view.certs[x])
    return sig + (view.ids[x],) if compare_ids else sig


def views_isomorphic(a: RadiusView, b: RadiusView, compare_ids: bool = False) -> bool:
    """Root-preserving isomorphism test matching inputs and certificates."""
    if a.size != b.size or len(a.edges) != len(b.edges):
        return False
    sig_a = [_view_signature(a, x, compare_ids) for x in range(a.size)]
    sig_b = [_view_signature(b, y, compare_ids) for y in range(b.size)]
    if sig_a[0] != sig_b[0] or sorted(sig_a) != sorted(sig_b):
        return False

    # map a-nodes in BFS order so each one has a mapped neighbor when possible
    order = sorted(range(a.size), key=lambda x: a.dist[x])
    phi: dict[int, int] = {0: 0}
    used = {0}

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        mapped_nbrs = [phi[z] for z in a.adj[x] if z in phi]
        if mapped_nbrs:
            candidates = [y for y in b.adj[mapped_nbrs[0]] if y not in used]
        else:
            candidates = [y for y in range(b.size) if y not in used]
        inv = {w: z for z, w in phi.items()}
        for y in candidates:
            if sig_b[y] != sig_a[x]:
                continue
            if any(not b.has_edge(y, w) for w in mapped_nbrs):
                continue
            # mapped b-neighbors of y must come from a-neighbors of x
            if any(w in inv and inv[w] not in a.adj[x] for w in b.adj[y]):
                continue
            phi[x] = y
            used.add(y)
            if extend(k + 1):
                return True
            del phi[x]
            used.discard(y)
        return False

    return extend(1)


def refine_colors(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Color refinement to a stable partition.

    Colors are ranks of sorted signatures, so the result commutes with any
    relabeling of the nodes.
    """
    col = list(colors) if colors is not None else [0] * g.n
    ncolors = len(set(col))
    while True:
        sigs = [(col[v], tuple(sorted(col[u] for u in g.adj[v]))) for v in range(g.n)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return new
        col, ncolors = new, len(rank)


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)


def find_fpf_automorphism(g: Graph) -> Permutation | None:
    """Backtracking search for an automorphism that moves every node."""
    colors = refine_colors(g)
    from_zero = distances(g, 0)
    order = sorted(range(g.n), key=lambda v: from_zero[v])
    phi: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == g.n:
            return True
        x = order[k]
        mapped = [z for z in g.adj[x] if z in phi]
        pool = g.adj[phi[mapped[0]]] if mapped else range(g.n)
        for y in pool:
            if y == x or y in used or colors[y] != colors[x]:
                continue
            if any(not g.has_edge(phi[z], y) for z in mapped):
                continue
            if sum(1 for w in g.adj[y] if w in used) != len(mapped):
                continue
            phi[x] = y
            used.add(y)
            if extend(k + 1):
                return True
            del phi[x]
            used.discard(y)
        return False

    if extend(0):
        return Permutation(tuple(phi[v] for v in range(g.n)))
    return None
