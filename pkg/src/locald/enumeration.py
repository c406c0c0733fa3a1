"""Small-instance enumerators with exact isomorphism dedup."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graphs import Graph, build_graph, refine_colors

__all__ = ["CapExceeded", "DEFAULT_CAP", "canonical_form", "isomorphic", "enumerate_instances"]

DEFAULT_CAP = 8
KINDS = ("connectedGraphs", "trees", "labeledTrees")


class CapExceeded(ValueError):
    """Requested instance size is above the exhaustive-enumeration cap."""


def _form(g: Graph, order: list[int]) -> str:
    pos = {v: i for i, v in enumerate(order)}
    bits = ["0"] * (g.n * (g.n - 1) // 2)
    for u, v in g.edges:
        i, j = sorted((pos[u], pos[v]))
        bits[j * (j - 1) // 2 + i] = "1"
    return "".join(bits)


def canonical_form(g: Graph) -> str:
    """Minimum upper-triangle adjacency string over an individualization tree.

    Every branch refines an isomorphism-invariant ordered partition, so two
    graphs get equal forms exactly when they are isomorphic.
    """
    best: list[str] = []

    def search(colors: list[int]) -> None:
        colors = refine_colors(g, colors)
        k = max(colors) + 1
        if k == g.n:
            order = sorted(range(g.n), key=lambda v: colors[v])
            form = _form(g, order)
            if not best or form < best[0]:
                best[:] = [form]
            return
        sizes = [colors.count(c) for c in range(k)]
        target = min((c for c in range(k) if sizes[c] > 1), key=lambda c: (sizes[c], c))
        for v in range(g.n):
            if colors[v] != target:
                continue
            nxt = [2 * c + 1 for c in colors]
            nxt[v] = 2 * target
            search(nxt)

    search([0] * g.n)
    return f"{g.n}:{best[0]}"


def isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_form(a) == canonical_form(b)


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (build_graph(1, []),)
    seen: dict[str, Graph] = {}
    for g in _connected(n - 1):
        # a new node attached to any nonempty subset keeps the graph connected,
        # and every connected graph has a non-cut node to peel off
        for r in range(1, n):
            for subset in combinations(range(n - 1), r):
                h = build_graph(n, g.edges + [(u, n - 1) for u in subset])
                seen.setdefault(canonical_form(h), h)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (build_graph(1, []),)
    seen: dict[str, Graph] = {}
    for g in _trees(n - 1):
        for u in range(n - 1):
            h = build_graph(n, g.edges + [(u, n - 1)])
            seen.setdefault(canonical_form(h), h)
    return tuple(seen[k] for k in sorted(seen))


def _labeled_trees(n: int) -> Iterator[Graph]:
    # every (n-1)-edge subset without a cycle is a spanning tree
    pairs = list(combinations(range(n), 2))
    for chosen in combinations(pairs, n - 1):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in chosen:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            yield build_graph(n, chosen)


def enumerate_instances(kind: str, n: int, cap: int = DEFAULT_CAP) -> Iterator[Graph]:
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {KINDS}")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    if n < 1:
        return iter(())
    if kind == "connectedGraphs":
        return iter(_connected(n))
    if kind == "trees":
        return iter(_trees(n))
    return _labeled_trees(n)
