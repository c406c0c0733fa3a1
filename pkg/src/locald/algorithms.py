"""Concrete deciders and verifiers, plus deliberately weak strawmen that the
fooling attacks are aimed at.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .certificates import make_certificate
from .graphs import Configuration, Graph, RadiusView, distances, find_fpf_automorphism
from .languages import BIPARTITE, EQSIZE, FPF, TREE, Language, member, parse_language
from .lifts import lift_verifier, quotient_cert_decoder, tree_cert_decoder
from .runtime import LocalAlgorithm, LocalVerifier

__all__ = [
    "tree_t_decider",
    "always_accept",
    "tree_verifier",
    "fpf_trees_verifier",
    "eqsize_verifier",
    "bipartite_verifier",
    "strawman_tree_verifier",
    "strawman_tree_certificate",
    "strawman_eqsize_verifier",
    "parse_algorithm",
    "default_language",
    "CATALOG_VERIFIERS",
]


def _view_eccentricities(view: RadiusView) -> list[int]:
    out = []
    for s in range(view.size):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in view.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        out.append(max(dist.values()))
    return out


def tree_t_decider(t: int) -> LocalAlgorithm:
    """Accept iff the (t+1)-view is a tree whose diameter, measured inside the view, is at most 2t."""
    if t < 1:
        raise ValueError("Tree_t needs t >= 1")

    def decide(view: RadiusView) -> bool:
        if view.inputs[0]:
            return False
        if len(view.edges) != view.size - 1:
            return False
        return max(_view_eccentricities(view)) <= 2 * t

    return LocalAlgorithm(radius=t + 1, decide=decide, name=f"decider:tree_t:{t}")


def always_accept(radius: int = 0) -> LocalAlgorithm:
    return LocalAlgorithm(radius=radius, decide=lambda view: True, name="decider:always-accept")


def _parse_distance(cert: str) -> int | None:
    if not cert or any(ch not in "01" for ch in cert) or (len(cert) > 1 and cert[0] == "0"):
        return None
    return int(cert, 2)


def _tree_decide(view: RadiusView) -> bool:
    # A single root is never checked directly.  If every node accepts, orienting
    # each edge toward the smaller label gives every nonzero node exactly one
    # out-edge, so m = n - (#zeros); connectivity then forces one zero and m = n-1.
    if view.inputs[0]:
        return False
    d = _parse_distance(view.certs[0])
    if d is None:
        return False
    nbr = [_parse_distance(view.certs[y]) for y in view.adj[0]]
    if any(x is None for x in nbr):
        return False
    if d == 0:
        return all(x == 1 for x in nbr)
    return nbr.count(d - 1) == 1 and all(x in (d - 1, d + 1) for x in nbr)


def tree_verifier() -> LocalVerifier:
    """Distance-to-root labels.  Reconstructed scheme; the upper bound is cited, not given."""
    lang = Language(TREE)
    return LocalVerifier(1, _tree_decide, "verifier:tree", prover=lambda c: make_certificate(lang, c))


@lru_cache(maxsize=4096)
def _has_fpf(g: Graph) -> bool:
    return find_fpf_automorphism(g) is not None


def fpf_trees_verifier() -> LocalVerifier:
    lang = Language(FPF)
    return lift_verifier(
        1,
        tree_cert_decoder,
        lambda q: _has_fpf(q.graph),
        "verifier:fpf",
        prover=lambda c: make_certificate(lang, c),
    )


def eqsize_verifier() -> LocalVerifier:
    lang = Language(EQSIZE)
    return lift_verifier(
        1,
        quotient_cert_decoder,
        lambda q: member(lang, q),
        "verifier:eqsize",
        prover=lambda c: make_certificate(lang, c),
    )


def _bipartite_decide(view: RadiusView) -> bool:
    own = view.certs[0]
    if own not in ("0", "1"):
        return False
    other = "1" if own == "0" else "0"
    return all(view.certs[y] == other for y in view.adj[0])


def bipartite_verifier() -> LocalVerifier:
    lang = Language(BIPARTITE)
    return LocalVerifier(1, _bipartite_decide, "verifier:bipartite", prover=lambda c: make_certificate(lang, c))


def strawman_tree_certificate(config: Configuration, k: int) -> list[str]:
    """Distance from node 0 modulo 2**k, written with exactly k bits."""
    dist = distances(config.graph, 0)
    return [format(dist[v] % (1 << k), f"0{k}b") if k else "" for v in range(config.n)]


def strawman_tree_verifier(k: int) -> LocalVerifier:
    """Tree verifier squeezed into k-bit certificates: distances mod 2**k.

    It accepts iff every neighbor differs by +-1 (mod 2**k), so it cannot tell
    a long path from a long even cycle.
    """
    mod = 1 << k

    def decide(view: RadiusView) -> bool:
        if view.inputs[0] or any(len(c) != k or any(ch not in "01" for ch in c) for c in view.certs):
            return False
        if k == 0:
            return True
        d = int(view.certs[0], 2)
        return all((int(view.certs[y], 2) - d) % mod in (1, mod - 1) for y in view.adj[0])

    return LocalVerifier(1, decide, f"verifier:strawman-tree:{k}", prover=lambda c: strawman_tree_certificate(c, k))


def strawman_eqsize_verifier(bits: int = 2) -> LocalVerifier:
    """EqSizePartition with a node count truncated to ``bits`` bits.

    Every node carries ``(n/2) mod 2**bits``; a node accepts iff its input is a
    single bit and all neighbors carry its certificate.  The claimed count can
    never be checked locally.
    """
    mod = 1 << bits

    def prover(config: Configuration) -> list[str]:
        return [format((config.n // 2) % mod, f"0{bits}b")] * config.n

    def decide(view: RadiusView) -> bool:
        own = view.certs[0]
        if view.inputs[0] not in ("0", "1") or len(own) != bits:
            return False
        return all(view.certs[y] == own for y in view.adj[0])

    return LocalVerifier(1, decide, f"verifier:strawman-eqsize:{bits}", prover=prover)


CATALOG_VERIFIERS = {
    "verifier:tree": (tree_verifier, TREE),
    "verifier:fpf": (fpf_trees_verifier, FPF),
    "verifier:eqsize": (eqsize_verifier, EQSIZE),
    "verifier:bipartite": (bipartite_verifier, BIPARTITE),
}


def parse_algorithm(name: str) -> LocalAlgorithm | LocalVerifier:
    """Resolve a CLI name such as ``decider:tree_t:1`` or ``verifier:eqsize``."""
    name = name.strip().lower()
    if name.startswith("decider:tree_t:"):
        return tree_t_decider(int(name.rsplit(":", 1)[1]))
    if name == "decider:always-accept":
        return always_accept()
    if name in CATALOG_VERIFIERS:
        return CATALOG_VERIFIERS[name][0]()
    if name.startswith("verifier:strawman-tree:"):
        return strawman_tree_verifier(int(name.rsplit(":", 1)[1]))
    if name.startswith("verifier:strawman-eqsize"):
        parts = name.split(":")
        return strawman_eqsize_verifier(int(parts[2]) if len(parts) > 2 else 2)
    raise ValueError(f"unknown algorithm {name!r}")


def default_language(name: str) -> Language | None:
    """The language an algorithm name is meant for, when it has one."""
    name = name.strip().lower()
    if name.startswith("decider:tree_t:"):
        return parse_language("tree_t:" + name.rsplit(":", 1)[1])
    if name in CATALOG_VERIFIERS:
        return Language(CATALOG_VERIFIERS[name][1])
    if name.startswith("verifier:strawman-tree"):
        return Language(TREE)
    if name.startswith("verifier:strawman-eqsize"):
        return Language(EQSIZE)
    return None
