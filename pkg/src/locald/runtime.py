"""LOCAL-model execution: flooding, view-based evaluation, and the quantifiers
behind "decides" and "verifies".
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Callable, Iterable, Iterator, Sequence

from .codes import to_hex
from .formats import config_to_json
from .graphs import Configuration, IdAssignment, RadiusView, ball
from .languages import Language, member

__all__ = [
    "CertificateLengthMismatch",
    "LocalAlgorithm",
    "LocalVerifier",
    "Verdict",
    "ComplianceReport",
    "IdStrategy",
    "flood_views",
    "run_decider",
    "run_verifier",
    "check_decides",
    "check_verifies",
]

Decide = Callable[[RadiusView], bool]


class CertificateLengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LocalAlgorithm:
    radius: int
    decide: Decide
    name: str = "anonymous"


@dataclass(frozen=True)
class LocalVerifier:
    """A local algorithm that also reads certificates.

    ``prover`` is the matching certificate generator, when there is one.  It
    receives only the configuration.
    """

    radius: int
    decide: Decide
    name: str = "anonymous"
    prover: Callable[[Configuration], Sequence[str]] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Verdict:
    per_node: tuple[bool, ...]

    @property
    def accepted(self) -> bool:
        return all(self.per_node)

    @property
    def rejecting(self) -> list[int]:
        return [v for v, ok in enumerate(self.per_node) if not ok]


@dataclass(frozen=True)
class IdStrategy:
    """How the universal quantifier over identifier assignments is approximated.

    ``auto`` takes every permutation of ``1..n`` up to ``exhaustive_max`` nodes
    and ``k`` seeded injective maps into ``1..n**degree`` beyond that.
    """

    kind: str = "auto"
    k: int = 20
    seed: int = 0
    degree: int = 2
    exhaustive_max: int = 5

    def __post_init__(self):
        if self.kind not in ("auto", "all", "sampled"):
            raise ValueError(f"unknown id strategy {self.kind!r}")

    def assignments(self, n: int) -> Iterator[IdAssignment]:
        bound = max(1, n**self.degree)
        if self.kind == "all" or (self.kind == "auto" and n <= self.exhaustive_max):
            for perm in permutations(range(1, n + 1)):
                yield IdAssignment(perm, bound)
            return
        rng = random.Random(f"locald-ids:{self.seed}:{n}")
        for _ in range(self.k):
            yield IdAssignment(tuple(rng.sample(range(1, bound + 1), n)), bound)

    def describe(self) -> str:
        if self.kind == "all":
            return "all permutations"
        if self.kind == "sampled":
            return f"{self.k} sampled (seed {self.seed})"
        return f"all permutations for n<={self.exhaustive_max}, else {self.k} sampled (seed {self.seed})"


def _witness(
    kind: str,
    config: Configuration,
    ids: IdAssignment | None,
    certs: Sequence[str] | None,
    failing: int | None,
) -> dict[str, Any]:
    return {
        "kind": kind,
        "config": config_to_json(config),
        "ids": list(ids.ids) if ids is not None else None,
        "certs": [to_hex(c) for c in certs] if certs is not None else None,
        "failingNode": failing,
    }


@dataclass
class ComplianceReport:
    passed: bool
    instances_checked: int
    completeness_witness: dict | None = None
    soundness_witness: dict | None = None
    runs: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def witness(self) -> dict | None:
        return self.completeness_witness or self.soundness_witness

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "instancesChecked": self.instances_checked,
            "runs": self.runs,
            "witness": self.witness,
            "notes": list(self.notes),
        }


def flood_views(
    config: Configuration,
    ids: IdAssignment,
    certs: Sequence[str] | None,
    t: int,
) -> list[RadiusView]:
    """Run ``t`` synchronous rounds of full-information flooding.

    Each node starts knowing its own identifier, input and certificate.  In
    every round it sends everything it knows to each neighbor; a receiver also
    records the edge to the sender, keyed by identifiers.
    """
    if t < 0:
        raise ValueError("rounds must be non-negative")
    g = config.graph
    cert_of = list(certs) if certs is not None else [""] * g.n
    known_nodes = [{ids.ids[v]: (config.inputs[v], cert_of[v])} for v in range(g.n)]
    known_edges: list[set[tuple[int, int]]] = [set() for _ in range(g.n)]

    for _ in range(t):
        outbox = [(dict(known_nodes[v]), set(known_edges[v])) for v in range(g.n)]
        for v in range(g.n):
            for u in g.adj[v]:
                nodes, edges = outbox[u]
                known_nodes[v].update(nodes)
                known_edges[v] |= edges
                known_edges[v].add(tuple(sorted((ids.ids[v], ids.ids[u]))))

    views = []
    for v in range(g.n):
        me = ids.ids[v]
        nbrs: dict[int, list[int]] = {x: [] for x in known_nodes[v]}
        for a, b in known_edges[v]:
            nbrs[a].append(b)
            nbrs[b].append(a)
        dist = {me: 0}
        queue = deque([me])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        order = sorted(known_nodes[v], key=lambda x: (dist[x], x))
        local = {x: i for i, x in enumerate(order)}
        views.append(
            RadiusView(
                radius=t,
                dist=tuple(dist[x] for x in order),
                adj=tuple(tuple(sorted(local[y] for y in nbrs[x])) for x in order),
                ids=tuple(order),
                inputs=tuple(known_nodes[v][x][0] for x in order),
                certs=tuple(known_nodes[v][x][1] for x in order),
            )
        )
    return views


def run_decider(alg: LocalAlgorithm, config: Configuration, ids: IdAssignment) -> Verdict:
    return Verdict(tuple(bool(alg.decide(ball(config, ids, None, v, alg.radius))) for v in range(config.n)))


def run_verifier(
    ver: LocalVerifier,
    config: Configuration,
    ids: IdAssignment,
    certs: Sequence[str],
) -> Verdict:
    if len(certs) != config.n:
        raise CertificateLengthMismatch(f"{len(certs)} certificates for {config.n} nodes")
    return Verdict(tuple(bool(ver.decide(ball(config, ids, certs, v, ver.radius))) for v in range(config.n)))


def check_decides(
    alg: LocalAlgorithm,
    lang: Language,
    instances: Iterable[Configuration],
    id_strategy: IdStrategy | None = None,
) -> ComplianceReport:
    id_strategy = id_strategy or IdStrategy()
    report = ComplianceReport(passed=True, instances_checked=0, notes=[f"ids: {id_strategy.describe()}"])
    for config in instances:
        report.instances_checked += 1
        expected = member(lang, config)
        for ids in id_strategy.assignments(config.n):
            report.runs += 1
            verdict = run_decider(alg, config, ids)
            if verdict.accepted != expected:
                failing = verdict.rejecting[0] if verdict.rejecting else None
                kind = "false-reject" if expected else "false-accept"
                report.passed = False
                if expected:
                    report.completeness_witness = _witness(kind, config, ids, None, failing)
                else:
                    report.soundness_witness = _witness(kind, config, ids, None, failing)
                return report
    return report


def _fooling(space: Any, ver: LocalVerifier, config: Configuration, id_strategy: IdStrategy):
    """Ask a soundness space for an accepted certificate on a non-member.

    Spaces with a ``find_fooling`` method search themselves; a plain callable
    is treated as a generator of certificate vectors.
    """
    if hasattr(space, "find_fooling"):
        return space.find_fooling(ver, config, id_strategy)
    for certs in space(config):
        for ids in id_strategy.assignments(config.n):
            if run_verifier(ver, config, ids, certs).accepted:
                return list(certs), ids
    return None


def check_verifies(
    ver: LocalVerifier,
    lang: Language,
    instances: Iterable[Configuration],
    cert_gen: Callable[[Configuration], Sequence[str]] | None = None,
    soundness_space: Any = None,
    id_strategy: IdStrategy | None = None,
) -> ComplianceReport:
    """Completeness with ``cert_gen``; soundness against ``soundness_space``.

    ``soundness_space`` may be a single space or a list of them.
    """
    id_strategy = id_strategy or IdStrategy()
    cert_gen = cert_gen or ver.prover
    if cert_gen is None:
        raise ValueError(f"verifier {ver.name} has no prover; pass cert_gen")
    spaces = soundness_space if isinstance(soundness_space, (list, tuple)) else [soundness_space]
    spaces = [s for s in spaces if s is not None]
    report = ComplianceReport(passed=True, instances_checked=0, notes=[f"ids: {id_strategy.describe()}"])
    report.notes += [f"soundness space: {getattr(s, 'describe', lambda: repr(s))()}" for s in spaces]
    for config in instances:
        report.instances_checked += 1
        if member(lang, config):
            certs = list(cert_gen(config))
            for ids in id_strategy.assignments(config.n):
                report.runs += 1
                verdict = run_verifier(ver, config, ids, certs)
                if not verdict.accepted:
                    report.passed = False
                    report.completeness_witness = _witness("completeness", config, ids, certs, verdict.rejecting[0])
                    return report
        else:
            for space in spaces:
                report.runs += 1
                found = _fooling(space, ver, config, id_strategy)
                if found is not None:
                    certs, ids = found
                    report.passed = False
                    report.soundness_witness = _witness("soundness", config, ids, certs, None)
                    return report
    return report
