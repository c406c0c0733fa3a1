"""Lifted configurations: the local lift check, fibers, the quotient partition
and the lift-based verification scheme.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .codes import MalformedCode, decode_quotient, decode_tree_cert, encode_quotient
from .graphs import Configuration, Graph, GraphError, IdAssignment, RadiusView, build_graph, distances
from .languages import Language, member
from .runtime import LocalVerifier, Verdict, run_verifier

__all__ = [
    "LabelOutOfRange",
    "LiftCheckFailed",
    "LiftLabeling",
    "FiberStats",
    "lift_view_ok",
    "lift_verifier",
    "check_lift",
    "fiber_stats",
    "quotient_partition",
    "universal_lift_verifier",
    "covering_maps",
    "covering_blowup",
    "quotient_cert_decoder",
    "tree_cert_decoder",
]

Decoder = Callable[[str], "tuple[Configuration, int]"]


class LabelOutOfRange(ValueError):
    pass


class LiftCheckFailed(ValueError):
    pass


@dataclass(frozen=True)
class LiftLabeling:
    quotient: Configuration
    labels: tuple[int, ...]

    def fiber(self, i: int) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab == i]


@dataclass(frozen=True)
class FiberStats:
    fiber_sizes: tuple[int, ...]
    multiplicity: int
    degrees_constant: bool
    inputs_constant: bool
    input_counts: dict[str, int]
    quotient_input_counts: dict[str, int]


@lru_cache(maxsize=65536)
def quotient_cert_decoder(bits: str) -> tuple[Configuration, int]:
    return decode_quotient(bits)


@lru_cache(maxsize=65536)
def tree_cert_decoder(bits: str) -> tuple[Configuration, int]:
    _, tree, label = decode_tree_cert(bits)
    return Configuration.plain(tree), label


def lift_view_ok(view: RadiusView, decode: Decoder) -> bool:
    """The lift conditions as far as one node's view reaches.

    Every certificate in view names the same quotient; every node whose
    neighborhood is fully visible maps it bijectively onto the quotient
    neighborhood of its label; every visible input matches the quotient input.
    """
    try:
        decoded = [decode(c) for c in view.certs]
    except MalformedCode:
        return False
    quotient = decoded[0][0]
    if any(q != quotient for q, _ in decoded):
        return False
    qg = quotient.graph
    labels = [lab for _, lab in decoded]
    for x in range(view.size):
        if quotient.inputs[labels[x]] != view.inputs[x]:
            return False
    for x in view.interior():
        want = qg.adj[labels[x]]
        got = sorted(labels[y] for y in view.adj[x])
        if len(got) != len(want) or tuple(got) != want:
            return False
    return True


def lift_verifier(
    t: int,
    decode: Decoder,
    accept_quotient: Callable[[Configuration], bool],
    name: str,
    prover=None,
) -> LocalVerifier:
    if t < 1:
        raise ValueError("lift checks need radius >= 1")

    def decide(view: RadiusView) -> bool:
        if not lift_view_ok(view, decode):
            return False
        return accept_quotient(decode(view.certs[0])[0])

    return LocalVerifier(radius=t, decide=decide, name=name, prover=prover)


_PLAIN_LIFT = {}


def _plain_lift_verifier(t: int) -> LocalVerifier:
    if t not in _PLAIN_LIFT:
        _PLAIN_LIFT[t] = lift_verifier(t, quotient_cert_decoder, lambda q: True, f"lift-check:{t}")
    return _PLAIN_LIFT[t]


def _certs_for(config: Configuration, lab: LiftLabeling) -> list[str]:
    nq = lab.quotient.n
    if len(lab.labels) != config.n:
        raise LabelOutOfRange(f"{len(lab.labels)} labels for {config.n} nodes")
    for v, i in enumerate(lab.labels):
        if not 0 <= i < nq:
            raise LabelOutOfRange(f"node {v} has label {i}, quotient has {nq} nodes")
    return [encode_quotient(lab.quotient, i) for i in lab.labels]


def check_lift(config: Configuration, lab: LiftLabeling, t: int = 1) -> Verdict:
    """Run the local lift check; global acceptance means (G,w) is a t-lift."""
    certs = _certs_for(config, lab)
    return run_verifier(_plain_lift_verifier(t), config, IdAssignment.identity(config.n), certs)


def fiber_stats(config: Configuration, lab: LiftLabeling) -> FiberStats:
    if not check_lift(config, lab).accepted:
        raise LiftCheckFailed("labeling does not pass the lift check")
    q = lab.quotient
    sizes = tuple(len(lab.fiber(i)) for i in range(q.n))
    g = config.graph
    degrees_constant = all(g.degree(v) == q.graph.degree(i) for v, i in enumerate(lab.labels))
    inputs_constant = all(config.inputs[v] == q.inputs[i] for v, i in enumerate(lab.labels))
    return FiberStats(
        fiber_sizes=sizes,
        multiplicity=sizes[0] if len(set(sizes)) == 1 else -1,
        degrees_constant=degrees_constant,
        inputs_constant=inputs_constant,
        input_counts=dict(Counter(config.inputs)),
        quotient_input_counts=dict(Counter(q.inputs)),
    )


def _spanning_order(qg: Graph, root: int) -> list[tuple[int, int]]:
    """(node, parent) pairs of a BFS tree of ``qg`` from ``root``.

    Ties go to the parent whose own root path is lexicographically smallest,
    which makes every tree path a unique shortest path.
    """
    dist = distances(qg, root)
    path = {root: (root,)}
    for x in sorted(dist, key=lambda y: dist[y]):
        if x == root:
            continue
        parents = [p for p in qg.adj[x] if dist[p] == dist[x] - 1]
        best = min(parents, key=lambda p: path[p])
        path[x] = path[best] + (x,)
    order = sorted((x for x in dist if x != root), key=lambda x: (dist[x], path[x]))
    return [(x, path[x][-2]) for x in order]


def quotient_partition(config: Configuration, lab: LiftLabeling, i: int) -> list[set[int]]:
    """Split V into |fiber(i)| connected blocks, each meeting every fiber once.

    Block j grows from the j-th node of fiber i by adding, one quotient node at
    a time in shortest-path order, the unique neighbor carrying that label.
    """
    if not check_lift(config, lab).accepted:
        raise LiftCheckFailed("labeling does not pass the lift check")
    g = config.graph
    steps = _spanning_order(lab.quotient.graph, i)
    blocks = []
    for start in lab.fiber(i):
        placed = {i: start}
        for x, parent in steps:
            anchor = placed[parent]
            (placed[x],) = [u for u in g.adj[anchor] if lab.labels[u] == x]
        blocks.append(set(placed.values()))
    return blocks


def universal_lift_verifier(lang: Language, t: int = 1) -> LocalVerifier:
    """Accept iff the quotient certificate passes the lift check and the quotient is a member."""
    return lift_verifier(t, quotient_cert_decoder, lambda q: member(lang, q), f"lift-universal:{lang}")


def covering_maps(config: Configuration, quotient: Configuration) -> Iterator[tuple[int, ...]]:
    """All labelings of ``config`` onto ``quotient`` that satisfy the lift check."""
    g, qg = config.graph, quotient.graph
    if g.n % qg.n:
        return
    dist = distances(g, 0)
    order = sorted(range(g.n), key=lambda v: dist[v])
    labels: dict[int, int] = {}

    def fits(v: int, i: int) -> bool:
        if g.degree(v) != qg.degree(i) or config.inputs[v] != quotient.inputs[i]:
            return False
        seen = set()
        for u in g.adj[v]:
            if u in labels:
                j = labels[u]
                if j not in qg.adj[i] or j in seen:
                    return False
                seen.add(j)
        return True

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == g.n:
            yield tuple(labels[v] for v in range(g.n))
            return
        v = order[k]
        anchors = [u for u in g.adj[v] if u in labels]
        pool = qg.adj[labels[anchors[0]]] if anchors else range(qg.n)
        for i in pool:
            if not fits(v, i):
                continue
            # the anchor's other labelled neighbors must not already use i
            if anchors and any(labels[w] == i for w in g.adj[anchors[0]] if w in labels and w != v):
                continue
            labels[v] = i
            yield from extend(k + 1)
            del labels[v]

    for labeling in extend(0):
        if check_lift(config, LiftLabeling(quotient, labeling)).accepted:
            yield labeling


def covering_blowup(
    base: Configuration,
    l: int,
    rng: random.Random,
    attempts: int = 200,
) -> tuple[Configuration, LiftLabeling] | None:
    """A random connected l-fold cover of ``base`` from permutation voltages."""
    qg = base.graph
    for _ in range(attempts):
        edges = []
        for a, b in qg.edges:
            perm = list(range(l))
            rng.shuffle(perm)
            edges += [(a * l + x, b * l + perm[x]) for x in range(l)]
        try:
            g = build_graph(qg.n * l, edges)
        except GraphError:
            continue
        labels = tuple(v // l for v in range(g.n))
        config = Configuration(g, tuple(base.inputs[i] for i in labels))
        return config, LiftLabeling(base, labels)
    return None
