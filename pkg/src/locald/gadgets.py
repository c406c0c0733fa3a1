"""Lower-bound constructions as instance generators, and the certificate
transplants that turn them into concrete fooling attacks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import CertificateVector, rooted_code
from .graphs import Configuration, Graph, GraphError, IdAssignment, build_graph, cycle_graph, is_tree, path_graph
from .runtime import IdStrategy, LocalVerifier
from .search import accepts_all

__all__ = [
    "NotAPath",
    "NotATree",
    "SizeMismatch",
    "SpliceResult",
    "TransplantResult",
    "BoundFns",
    "path_and_cycle",
    "path_order",
    "splice_cycle_from_path",
    "partition_gadget",
    "transplant_attack",
    "tree_pair_gadget",
    "bound_fns",
    "psi",
    "sides_match",
]


class NotAPath(GraphError):
    pass


class NotATree(GraphError):
    pass


class SizeMismatch(GraphError):
    pass


def path_and_cycle(t: int) -> tuple[Configuration, Configuration]:
    """P_{2t+1} (a member of Tree_t) and C_{2t+2} (not one); their t-views agree."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return Configuration.plain(path_graph(2 * t + 1)), Configuration.plain(cycle_graph(2 * t + 2))


def path_order(g: Graph) -> list[int]:
    """Nodes of a path graph from its smaller-index endpoint."""
    if not is_tree(g) or any(g.degree(v) > 2 for v in range(g.n)):
        raise NotAPath("graph is not a path")
    if g.n == 1:
        return [0]
    start = min(v for v in range(g.n) if g.degree(v) == 1)
    order, prev = [start], None
    while len(order) < g.n:
        cur = order[-1]
        (nxt,) = [u for u in g.adj[cur] if u != prev]
        prev = cur
        order.append(nxt)
    return order


@dataclass(frozen=True)
class SpliceResult:
    graph: Configuration
    certs: CertificateVector
    splice_nodes: tuple[int, int]
    origin: tuple[int, ...]  # path node each cycle node was copied from


def splice_cycle_from_path(path: Configuration, certs: Sequence[str], t: int) -> SpliceResult | None:
    """Close two equal certificate windows of a path into a cycle.

    With windows (a, v, b) and (a', u, b') and the stretch d between them,
    the cycle runs a, v, b, d, a', u, b', d', back to a, where d' copies d.
    Every node keeps the certificate of the path node it copies.
    """
    order = path_order(path.graph)
    n = len(order)
    if len(certs) != n:
        raise ValueError(f"{len(certs)} certificates for {n} nodes")
    window = lambda p: tuple(certs[order[x]] for x in range(p - t, p + t + 1))
    centers = range(t + 1, n - 1 - t)
    for p in centers:
        for q in centers:
            if q < p + 2 * t + 1 or window(p) != window(q):
                continue
            seq = order[p - t : q + t + 1] + order[p + t + 1 : q - t]
            g = cycle_graph(len(seq))
            config = Configuration(g, tuple(path.inputs[x] for x in seq))
            return SpliceResult(
                graph=config,
                certs=CertificateVector(certs[x] for x in seq),
                splice_nodes=(order[p], order[q]),
                origin=tuple(seq),
            )
    return None


def _join(parts: Iterable[tuple[Graph, Sequence[str]]], links: Iterable[tuple[int, int]]) -> Configuration:
    """Disjoint union of the parts in order, plus the linking edges (global indices)."""
    edges, inputs, offset = [], [], 0
    for g, w in parts:
        edges += [(a + offset, b + offset) for a, b in g.edges]
        inputs += list(w)
        offset += g.n
    return Configuration(build_graph(offset, edges + list(links)), tuple(inputs))


def partition_gadget(g1: Graph, v1: int, i: int, g2: Graph, v2: int, j: int, t: int) -> Configuration:
    """g1 (all inputs i), the path v_1..v_{4t+4} with w(v_k) = k mod 2, then g2 (all inputs j).

    Node order: g1's nodes, the path nodes, g2's nodes.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    length = 4 * t + 4
    path = path_graph(length)
    first, last = g1.n, g1.n + length - 1
    return _join(
        [
            (g1, [str(i)] * g1.n),
            (path, [str(k % 2) for k in range(1, length + 1)]),
            (g2, [str(j)] * g2.n),
        ],
        [(v1, first), (last, last + 1 + v2)],
    )


@dataclass(frozen=True)
class TransplantResult:
    config: Configuration
    certs: CertificateVector
    ids: IdAssignment
    sides: tuple[int, int, int, int]  # pool indices of G', G'', G''', G''''


def transplant_attack(
    ver: LocalVerifier,
    t: int,
    pool: Iterable[Graph],
    id_strategy: IdStrategy | None = None,
    attach: int = 0,
) -> TransplantResult | None:
    """Stitch two accepted positive partition gadgets into an accepted negative one.

    Positive gadgets G_t(G',0,G'',1) and G_t(G''',1,G'''',0) are built from
    equal-size pool pairs and certified by ``ver.prover``.  When their path
    certificates agree on v_{t+2}..v_{3t+3}, G_t(G',0,G'''',0) gets c1 on G'
    and v_1..v_{2t+2}, c2 on the rest.  Returned only if every node accepts
    under every generated id assignment.
    """
    if ver.radius > t:
        raise ValueError(f"verifier radius {ver.radius} exceeds t={t}")
    if ver.prover is None:
        raise ValueError(f"verifier {ver.name} has no prover")
    id_strategy = id_strategy or IdStrategy()
    graphs = list(pool)
    length = 4 * t + 4
    mid = slice(t + 1, 3 * t + 3)  # v_{t+2}..v_{3t+3}, zero-based within the path

    def accepted(config: Configuration, certs: Sequence[str]) -> bool:
        return all(accepts_all(ver, config, ids, certs) for ids in id_strategy.assignments(config.n))

    def gadgets(i: int, j: int):
        for a, ga in enumerate(graphs):
            for b, gb in enumerate(graphs):
                if ga.n != gb.n:
                    continue
                config = partition_gadget(ga, attach, i, gb, attach, j, t)
                try:
                    certs = list(ver.prover(config))
                except ValueError:
                    continue
                yield a, b, config, certs

    first: dict[tuple[str, ...], tuple[int, int, list[str]]] = {}
    for a, b, config, c1 in gadgets(0, 1):
        key = tuple(c1[graphs[a].n :][mid])
        if key not in first and accepted(config, c1):
            first[key] = (a, b, c1)
    if not first:
        return None

    for c, d, config, c2 in gadgets(1, 0):
        key = tuple(c2[graphs[c].n :][mid])
        if key not in first or not accepted(config, c2):
            continue
        a, b, c1 = first[key]
        g1, g4 = graphs[a], graphs[d]
        bad = partition_gadget(g1, attach, 0, g4, attach, 0, t)
        path1 = c1[g1.n : g1.n + length]
        path2 = c2[graphs[c].n : graphs[c].n + length]
        certs = c1[: g1.n] + path1[: 2 * t + 2] + path2[2 * t + 2 :] + c2[graphs[c].n + length :]
        if accepted(bad, certs):
            ids = next(id_strategy.assignments(bad.n))
            return TransplantResult(bad, CertificateVector(certs), ids, (a, b, c, d))
    return None


def psi(n: int) -> int:
    """Path length of the tree-pair gadget: n rounded down to even."""
    return n if n % 2 == 0 else n - 1


def tree_pair_gadget(t1: Graph, v1: int, t2: Graph, v2: int) -> Configuration:
    """T' and T'' of equal size n joined by a path v', v_1..v_psi(n), v''.

    Node order: T', path, T''.  No inputs.
    """
    for g in (t1, t2):
        if not is_tree(g):
            raise NotATree("both sides must be trees")
    if t1.n != t2.n:
        raise SizeMismatch(f"sides have {t1.n} and {t2.n} nodes")
    length = psi(t1.n)
    path = path_graph(length) if length else None
    parts = [(t1, [""] * t1.n)] + ([(path, [""] * length)] if path else []) + [(t2, [""] * t2.n)]
    far = t1.n + length + v2
    if length:
        links = [(v1, t1.n), (t1.n + length - 1, far)]
    else:
        links = [(v1, far)]
    return _join(parts, links)


def sides_match(t1: Graph, v1: int, t2: Graph, v2: int) -> bool:
    """Rooted isomorphism of (T', v') and (T'', v'')."""
    return rooted_code(t1, v1) == rooted_code(t2, v2)


@dataclass(frozen=True)
class BoundFns:
    """Counting functions of the lower bounds, logs base 2."""

    t: int = 1

    def k(self, n: float) -> float:
        return (0.5 * math.log2(n) - (4 * self.t + 5)) / (2 * self.t) - 1

    def s(self, n: float) -> float:
        base = 2 ** (self.k(n) + 1)
        return (4 * self.t + 4) * (base ** (2 * self.t) + 1) * base

    @staticmethod
    def g(n: int) -> float:
        return math.comb(n, 2) - math.lgamma(n + 1) / math.log(2)

    @staticmethod
    def psi(n: int) -> int:
        return psi(n)

    @staticmethod
    def cayley(n: int) -> int:
        if n < 1:
            raise ValueError("n must be >= 1")
        return 1 if n == 1 else n ** (n - 2)


def bound_fns(t: int = 1) -> BoundFns:
    if t < 1:
        raise ValueError("t must be >= 1")
    return BoundFns(t)
