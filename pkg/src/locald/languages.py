"""Centralized membership oracles for the distributed languages."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .enumeration import enumerate_instances
from .graphs import Configuration, distances, find_fpf_automorphism, is_tree

__all__ = [
    "TREE_T",
    "TREE",
    "FPF",
    "EQSIZE",
    "BIPARTITE",
    "Language",
    "parse_language",
    "member",
    "positive_instances",
    "negative_instances",
    "two_coloring",
]

TREE_T = "Tree_t"
TREE = "Tree"
FPF = "FPFSymmetryOnTrees"
EQSIZE = "EqSizePartition"
BIPARTITE = "Bipartite"

_CLI_NAMES = {
    "tree": TREE,
    "fpf-sym-trees": FPF,
    "eq-size-partition": EQSIZE,
    "bipartite": BIPARTITE,
}


@dataclass(frozen=True)
class Language:
    tag: str
    t: int | None = None

    def __post_init__(self):
        if self.tag not in (TREE_T, TREE, FPF, EQSIZE, BIPARTITE):
            raise ValueError(f"unknown language {self.tag!r}")
        if self.tag == TREE_T and (self.t is None or self.t < 1):
            raise ValueError("Tree_t needs t >= 1")

    @property
    def cli_name(self) -> str:
        if self.tag == TREE_T:
            return f"tree_t:{self.t}"
        return {v: k for k, v in _CLI_NAMES.items()}[self.tag]

    def __str__(self) -> str:
        return f"Tree_{self.t}" if self.tag == TREE_T else self.tag


def parse_language(name: str) -> Language:
    name = name.strip().lower()
    if name.startswith("tree_t:"):
        return Language(TREE_T, int(name.split(":", 1)[1]))
    if name in _CLI_NAMES:
        return Language(_CLI_NAMES[name])
    raise ValueError(f"unknown language {name!r}; try one of {sorted(_CLI_NAMES)} or tree_t:<t>")


def two_coloring(config: Configuration) -> list[int] | None:
    g = config.graph
    dist = distances(g, 0)
    color = [dist[v] % 2 for v in range(g.n)]
    if any(color[u] == color[v] for u, v in g.edges):
        return None
    return color


def _min_eccentricity(config: Configuration) -> int:
    g = config.graph
    return min(max(distances(g, v).values()) for v in range(g.n))


def member(lang: Language, config: Configuration) -> bool:
    g = config.graph
    if lang.tag in (TREE_T, TREE, FPF):
        if any(config.inputs) or not is_tree(g):
            return False
        if lang.tag == TREE_T:
            return _min_eccentricity(config) <= lang.t
        if lang.tag == FPF:
            return find_fpf_automorphism(g) is not None
        return True
    if lang.tag == EQSIZE:
        if any(s not in ("0", "1") for s in config.inputs):
            return False
        return config.inputs.count("0") == config.inputs.count("1")
    return two_coloring(config) is not None


def _candidates(lang: Language, n: int) -> Iterator[Configuration]:
    if lang.tag in (TREE_T, TREE, FPF):
        for g in enumerate_instances("connectedGraphs", n):
            yield Configuration.plain(g)
    elif lang.tag == EQSIZE:
        for g in enumerate_instances("connectedGraphs", n):
            for bits in product("01", repeat=n):
                yield Configuration(g, bits)
    else:
        for g in enumerate_instances("connectedGraphs", n):
            yield Configuration.plain(g)


def positive_instances(lang: Language, n: int) -> Iterator[Configuration]:
    if lang.tag in (TREE_T, TREE, FPF):
        # members are trees; enumerate those directly
        for g in enumerate_instances("trees", n):
            c = Configuration.plain(g)
            if member(lang, c):
                yield c
        return
    for c in _candidates(lang, n):
        if member(lang, c):
            yield c


def negative_instances(lang: Language, n: int) -> Iterator[Configuration]:
    """Non-members among the same candidate family (empty or 0/1 inputs)."""
    for c in _candidates(lang, n):
        if not member(lang, c):
            yield c
