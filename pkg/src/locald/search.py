"""Brute-force ground truth: minimum certificate sizes and bounded soundness searches.

Per-node certificate domains are searched by backtracking in BFS order.  A
node is evaluated as soon as every certificate in its view is fixed, and a
rejection prunes the whole subtree, which is exact because acceptance needs
every node to accept.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import Iterator, Sequence

from .codes import encode_quotient, encode_tree, encode_tree_cert, tree_preorder
from .enumeration import enumerate_instances
from .graphs import Configuration, Graph, IdAssignment, RadiusView, ball, ball_members, distances
from .runtime import IdStrategy, LocalVerifier

__all__ = [
    "SearchBudgetExceeded",
    "CertSpace",
    "bitstrings",
    "accepts_all",
    "search_domains",
    "min_cert_size",
    "soundness_search",
    "lift_labelings",
]

DEFAULT_MAX_NODES = 12
DEFAULT_MAX_STEPS = 5_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


def bitstrings(max_len: int) -> list[str]:
    """All binary strings of length <= max_len, by length then value."""
    out = [""]
    for k in range(1, max_len + 1):
        out += ["".join(p) for p in product("01", repeat=k)]
    return out


def accepts_all(ver: LocalVerifier, config: Configuration, ids: IdAssignment, certs: Sequence[str]) -> bool:
    """Global acceptance, stopping at the first rejecting node."""
    return all(ver.decide(ball(config, ids, certs, v, ver.radius)) for v in range(config.n))


class _Budget:
    def __init__(self, max_steps: int):
        self.left = max_steps

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetExceeded("search step budget exhausted")


def search_domains(
    ver: LocalVerifier,
    config: Configuration,
    domains: Sequence[Sequence[str]],
    id_sets: Sequence[Sequence[IdAssignment]],
    max_steps: int = DEFAULT_MAX_STEPS,
) -> list[str] | None:
    """First certificate vector (in domain order) accepted under every assignment
    of any one group in ``id_sets``.

    One group with all assignments expresses "for every id assignment"; one
    group per assignment expresses "for some id assignment".
    """
    g = config.graph
    from_zero = distances(g, 0)
    order = sorted(range(g.n), key=lambda v: (from_zero[v], v))
    pos = {v: k for k, v in enumerate(order)}
    budget = _Budget(max_steps)

    for group in id_sets:
        templates: list[list[tuple[RadiusView, list[int]]]] = [[] for _ in range(g.n)]
        ready: list[list[int]] = [[] for _ in range(g.n)]
        for v in range(g.n):
            for ids in group:
                members, _ = ball_members(g, ids.ids, v, ver.radius)
                templates[v].append((ball(config, ids, None, v, ver.radius), members))
            last = max(pos[x] for x in templates[v][0][1])
            ready[last].append(v)

        assign: list[str] = [""] * g.n

        def ok(v: int) -> bool:
            for view, members in templates[v]:
                budget.spend()
                if not ver.decide(replace(view, certs=tuple(assign[x] for x in members))):
                    return False
            return True

        def extend(k: int) -> bool:
            if k == g.n:
                return True
            v = order[k]
            for c in domains[v]:
                assign[v] = c
                if all(ok(u) for u in ready[k]) and extend(k + 1):
                    return True
            return False

        if extend(0):
            return list(assign)
    return None


def lift_labelings(g: Graph, qg: Graph, strict: bool = True) -> Iterator[tuple[int, ...]]:
    """Degree-preserving homomorphisms ``g -> qg``.

    With ``strict`` each neighborhood must map bijectively, i.e. the labelings
    that pass the lift conditions.  Without it the search yields a superset
    and leaves injectivity for the verifier under test to enforce.
    """
    from_zero = distances(g, 0)
    order = sorted(range(g.n), key=lambda v: (from_zero[v], v))
    labels: dict[int, int] = {}

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == g.n:
            yield tuple(labels[v] for v in range(g.n))
            return
        v = order[k]
        anchors = [u for u in g.adj[v] if u in labels]
        pool = qg.adj[labels[anchors[0]]] if anchors else range(qg.n)
        for i in pool:
            if qg.degree(i) != g.degree(v):
                continue
            if any(labels[u] not in qg.adj[i] for u in anchors):
                continue
            if strict:
                if len({labels[u] for u in anchors}) < len(anchors):
                    continue
                # i must not repeat among the labelled neighbors of v's neighbors
                if any(labels.get(w) == i for u in g.adj[v] for w in g.adj[u] if w != v):
                    continue
            labels[v] = i
            yield from extend(k + 1)
            del labels[v]

    yield from extend(0)


@dataclass(frozen=True)
class CertSpace:
    """A finite certificate space for one instance.

    kinds: ``bits`` (all strings up to ``bound`` bits per node), ``distance``
    (binary labels 0..bound), ``color`` (one bit), ``lift`` (lift certificates
    over quotients of size dividing n and at most ``bound``; ``encoding`` is
    ``quotient`` or ``tree``; ``strict`` restricts labelings to those passing
    the lift conditions).
    """

    kind: str
    bound: int = 0
    encoding: str = "quotient"
    strict: bool = True

    @classmethod
    def all_bitstrings_up_to(cls, bits: int) -> "CertSpace":
        return cls("bits", bits)

    @classmethod
    def structured_lift(cls, max_quotient: int, encoding: str = "quotient", strict: bool = True) -> "CertSpace":
        return cls("lift", max_quotient, encoding, strict)

    @classmethod
    def distance_labels(cls, max_value: int) -> "CertSpace":
        return cls("distance", max_value)

    @classmethod
    def color_bits(cls) -> "CertSpace":
        return cls("color", 1)

    def describe(self) -> str:
        if self.kind == "lift":
            mode = "" if self.strict else ", relaxed"
            return f"structuredLift({self.bound}, {self.encoding}{mode})"
        return {"bits": "allBitstringsUpTo", "distance": "distanceLabels", "color": "colorBits"}[self.kind] + (
            f"({self.bound})" if self.kind != "color" else ""
        )

    def domains(self, config: Configuration) -> list[list[str]]:
        if self.kind == "bits":
            dom = bitstrings(self.bound)
        elif self.kind == "distance":
            dom = [format(d, "b") for d in range(self.bound + 1)]
        elif self.kind == "color":
            dom = ["0", "1"]
        else:
            raise ValueError("lift spaces are enumerated as whole vectors")
        return [dom] * config.n

    def vectors(self, config: Configuration) -> Iterator[list[str]]:
        """Whole certificate vectors of a ``lift`` space."""
        g = config.graph
        for d in range(1, min(self.bound, g.n) + 1):
            if g.n % d:
                continue
            kind = "trees" if self.encoding == "tree" else "connectedGraphs"
            for qg in enumerate_instances(kind, d):
                if self.encoding == "tree":
                    # relabel the quotient so node indices are preorder ranks of its code
                    root = min(range(qg.n), key=lambda v: (max(distances(qg, v).values()), v))
                    code = encode_tree(qg, root)
                    rank = {v: i for i, v in enumerate(tree_preorder(qg, root))}
                    qg = qg.relabel([rank[v] for v in range(qg.n)])
                for labels in lift_labelings(g, qg, self.strict):
                    if self.encoding == "tree":
                        yield [encode_tree_cert(code, i) for i in labels]
                        continue
                    inputs = ["0"] * d
                    for v in reversed(range(g.n)):
                        inputs[labels[v]] = config.inputs[v]
                    quotient = Configuration(qg, tuple(inputs))
                    yield [encode_quotient(quotient, i) for i in labels]

    def find_fooling(
        self,
        ver: LocalVerifier,
        config: Configuration,
        id_strategy: IdStrategy,
        max_steps: int = DEFAULT_MAX_STEPS,
    ) -> tuple[list[str], IdAssignment] | None:
        assignments = list(id_strategy.assignments(config.n))
        if self.kind == "lift":
            for certs in self.vectors(config):
                for ids in assignments:
                    if accepts_all(ver, config, ids, certs):
                        return certs, ids
            return None
        for ids in assignments:
            found = search_domains(ver, config, self.domains(config), [[ids]], max_steps)
            if found is not None:
                return found, ids
        return None


def min_cert_size(
    ver: LocalVerifier,
    config: Configuration,
    id_strategy: IdStrategy | None = None,
    max_bits: int = 3,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> int | None:
    """Smallest k <= max_bits such that one certificate vector of size <= k is
    accepted under every generated id assignment."""
    if config.n > max_nodes:
        raise SearchBudgetExceeded(f"n={config.n} exceeds the node cap {max_nodes}")
    id_strategy = id_strategy or IdStrategy()
    group = list(id_strategy.assignments(config.n))
    for k in range(max_bits + 1):
        domains = [bitstrings(k)] * config.n
        if search_domains(ver, config, domains, [group], max_steps) is not None:
            return k
    return None


def soundness_search(
    ver: LocalVerifier,
    config: Configuration,
    space: CertSpace,
    id_strategy: IdStrategy | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> list[str] | None:
    """A certificate vector accepted under some id assignment, or None."""
    if config.n > max_nodes:
        raise SearchBudgetExceeded(f"n={config.n} exceeds the node cap {max_nodes}")
    found = space.find_fooling(ver, config, id_strategy or IdStrategy(), max_steps)
    return None if found is None else found[0]
