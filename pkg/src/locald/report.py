"""Measured certificate sizes per language, rendered next to the claimed growth rates."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from itertools import product

from .codes import cert_size
from .certificates import make_certificate
from .enumeration import enumerate_instances
from .graphs import Configuration, Graph, build_graph, cycle_graph, path_graph
from .languages import BIPARTITE, EQSIZE, FPF, TREE, Language, member

__all__ = ["Measurement", "CLAIMED", "random_tree", "measure", "measure_all", "render_table"]

CLAIMED = {
    TREE: "Theta(log n)",
    FPF: "Theta(n)",
    EQSIZE: "Theta(n^2)",
    BIPARTITE: "O(1)",
}

DEFAULT_SIZES = {
    TREE: (2, 4, 8, 16, 32, 64),
    FPF: (2, 4, 6, 8, 16, 32, 64),
    EQSIZE: (2, 4, 6, 8),
    BIPARTITE: (2, 3, 4, 5, 6, 7, 8),
}


@dataclass(frozen=True)
class Measurement:
    language: str
    n: int
    max_bits: int
    instances: int


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n <= 2:
        return path_graph(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(n) if degree[v] == 1]
    edges.append((u, v))
    return build_graph(n, edges)


def _mirrored(t: Graph) -> Graph:
    """Two copies of ``t`` joined at node 0: always has a fixed-point-free automorphism."""
    edges = t.edges + [(a + t.n, b + t.n) for a, b in t.edges] + [(0, t.n)]
    return build_graph(2 * t.n, edges)


def _instances(tag: str, n: int, rng: random.Random, samples: int):
    if tag in (TREE, BIPARTITE):
        if n <= 8:
            yield from (Configuration.plain(g) for g in enumerate_instances("trees", n))
        else:
            yield Configuration.plain(path_graph(n))
            for _ in range(samples):
                yield Configuration.plain(random_tree(n, rng))
        if tag == BIPARTITE and n % 2 == 0 and n >= 4:
            yield Configuration.plain(cycle_graph(n))
    elif tag == FPF:
        if n <= 8:
            yield from (Configuration.plain(g) for g in enumerate_instances("trees", n))
        elif n % 2 == 0:
            yield Configuration.plain(_mirrored(path_graph(n // 2)))
            for _ in range(samples):
                yield Configuration.plain(_mirrored(random_tree(n // 2, rng)))
    elif tag == EQSIZE:
        if n <= 6:
            for g in enumerate_instances("connectedGraphs", n):
                for bits in product("01", repeat=n):
                    yield Configuration(g, bits)
        else:
            half = ("0",) * (n // 2) + ("1",) * (n // 2)
            yield Configuration(path_graph(n), half)
            yield Configuration(cycle_graph(n), half)
            for _ in range(samples):
                yield Configuration(random_tree(n, rng), half)


def measure(lang: Language, n: int, seed: int = 0, samples: int = 5) -> Measurement:
    """Largest generated certificate over the members among the instances for n."""
    rng = random.Random(f"locald-table:{seed}:{lang.tag}:{n}")
    best, count = 0, 0
    for config in _instances(lang.tag, n, rng, samples):
        if not member(lang, config):
            continue
        count += 1
        best = max(best, cert_size(make_certificate(lang, config)))
    return Measurement(lang.cli_name, n, best, count)


def measure_all(seed: int = 0, sizes: dict | None = None, samples: int = 5) -> list[Measurement]:
    sizes = sizes or DEFAULT_SIZES
    out = []
    for tag in (TREE, FPF, EQSIZE, BIPARTITE):
        for n in sizes.get(tag, ()):
            out.append(measure(Language(tag), n, seed, samples))
    return out


def render_table(measurements: list[Measurement], fmt: str = "text") -> str:
    """One row per language: max measured bits per n, then the claimed growth rate."""
    ns = sorted({m.n for m in measurements})
    rows: dict[str, dict[int, Measurement]] = {}
    for m in measurements:
        rows.setdefault(m.language, {})[m.n] = m
    claimed = {Language(tag).cli_name: text for tag, text in CLAIMED.items()}
    header = ["language"] + [f"n={n}" for n in ns] + ["claimed"]
    body = []
    for lang, by_n in rows.items():
        cells = [str(by_n[n].max_bits) if n in by_n and by_n[n].instances else "-" for n in ns]
        body.append([lang] + cells + [claimed.get(lang, "?")])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown table format {fmt!r}")
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    lines = [line(header), line(["-" * w for w in widths])] + [line(r) for r in body]
    lines.append("measured = max certificate bits over members; logs base 2; claimed rates are not inferred")
    return "\n".join(lines) + "\n"
