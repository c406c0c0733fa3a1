"""Certificate generators for the language catalog.

Generators see only the configuration.  No identifier assignment is ever
passed in, so the certificates they produce cannot depend on one.
"""

from __future__ import annotations

from itertools import product

from .codes import CertificateVector, encode_quotient, encode_tree, encode_tree_cert, tree_preorder
from .enumeration import enumerate_instances
from .graphs import Configuration, distances
from .languages import BIPARTITE, EQSIZE, FPF, TREE, TREE_T, Language, member, two_coloring
from .lifts import covering_maps

__all__ = ["NotAMember", "make_certificate", "center", "distance_labels", "tree_lift_certificate", "quotient_certificate"]


class NotAMember(ValueError):
    pass


def center(config: Configuration) -> int:
    """Smallest-index node of minimum eccentricity."""
    g = config.graph
    ecc = [max(distances(g, v).values()) for v in range(g.n)]
    return ecc.index(min(ecc))


def distance_labels(config: Configuration) -> CertificateVector:
    dist = distances(config.graph, center(config))
    return CertificateVector(format(dist[v], "b") for v in range(config.n))


def tree_lift_certificate(config: Configuration) -> CertificateVector:
    """Self-lift of a tree: its own code plus each node's preorder rank."""
    root = center(config)
    code = encode_tree(config.graph, root)
    rank = {v: i for i, v in enumerate(tree_preorder(config.graph, root))}
    return CertificateVector(encode_tree_cert(code, rank[v]) for v in range(config.n))


def _smallest_balanced_quotient(config: Configuration) -> tuple[Configuration, tuple[int, ...]] | None:
    n = config.n
    for d in range(1, n):
        if n % d:
            continue
        for qg in enumerate_instances("connectedGraphs", d):
            for bits in product("01", repeat=d):
                if bits.count("0") != bits.count("1"):
                    continue
                quotient = Configuration(qg, bits)
                for labels in covering_maps(config, quotient):
                    return quotient, labels
    return None


def quotient_certificate(config: Configuration, minimize: bool = True) -> CertificateVector:
    """Lift certificate over the smallest balanced quotient found, else the self-lift."""
    found = _smallest_balanced_quotient(config) if minimize and config.n <= 8 else None
    if found is None:
        quotient, labels = config, tuple(range(config.n))
    else:
        quotient, labels = found
    return CertificateVector(encode_quotient(quotient, i) for i in labels)


def make_certificate(lang: Language, config: Configuration, minimize: bool = True) -> CertificateVector:
    if not member(lang, config):
        raise NotAMember(f"configuration is not in {lang}")
    if lang.tag == TREE_T:
        return CertificateVector(("",) * config.n)
    if lang.tag == TREE:
        return distance_labels(config)
    if lang.tag == FPF:
        return tree_lift_certificate(config)
    if lang.tag == EQSIZE:
        return quotient_certificate(config, minimize)
    if lang.tag == BIPARTITE:
        return CertificateVector(str(c) for c in two_coloring(config))
    raise NotAMember(f"no generator for {lang}")
