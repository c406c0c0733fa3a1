"""Text and JSON formats for graphs and configurations.

Text format::

    n m
    u v          (m edge lines, 0-based)
    w u 0101     (optional input lines; missing nodes get the empty input)
"""

from __future__ import annotations

import json
from pathlib import Path

from .graphs import Configuration, Graph, build_graph

__all__ = [
    "FormatError",
    "config_to_text",
    "config_from_text",
    "config_to_json",
    "config_from_json",
    "load_config",
    "save_config",
]


class FormatError(ValueError):
    pass


def config_to_text(config: Configuration) -> str:
    g = config.graph
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    lines += [f"w {v} {s}" for v, s in enumerate(config.inputs) if s]
    return "\n".join(lines) + "\n"


def config_from_text(text: str) -> Configuration:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise FormatError("first line must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1 : m + 1]]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"bad graph block: {exc}") from exc
    if len(edges) != m or any(len(r) != 2 for r in rows[1 : m + 1]):
        raise FormatError(f"expected {m} edge lines")
    inputs = [""] * n
    for r in rows[m + 1 :]:
        if r[0] != "w" or len(r) not in (2, 3):
            raise FormatError(f"unexpected line {' '.join(r)!r}")
        inputs[int(r[1])] = r[2] if len(r) == 3 else ""
    return Configuration(build_graph(n, edges), tuple(inputs))


def config_to_json(config: Configuration) -> dict:
    return {
        "n": config.n,
        "edges": [list(e) for e in config.graph.edges],
        "inputs": {str(v): s for v, s in enumerate(config.inputs) if s},
    }


def config_from_json(doc: dict) -> Configuration:
    n = int(doc["n"])
    inputs = [""] * n
    raw = doc.get("inputs", {})
    items = raw.items() if isinstance(raw, dict) else enumerate(raw)
    for v, s in items:
        inputs[int(v)] = s
    return Configuration(build_graph(n, [tuple(e) for e in doc["edges"]]), tuple(inputs))


def load_config(path: str | Path) -> Configuration:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return config_from_json(json.loads(text))
    return config_from_text(text)


def save_config(config: Configuration, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(config_to_json(config), sort_keys=True) + "\n")
    else:
        path.write_text(config_to_text(config))


def graph_to_text(g: Graph) -> str:
    return config_to_text(Configuration.plain(g))
