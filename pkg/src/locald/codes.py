"""Certificate vectors and the bit-level encodings used by lift certificates.

Layouts
-------
prefixed(s)      ``1^m 0 <m-bit binary of len(s)> s``  (self-delimiting)
tree code        DFS over children in canonical (AHU) order, 1 = descend,
                 0 = ascend; ``2(n-1)`` bits for an n-node rooted tree
tree cert        prefixed(bin n') + tree code + label (ceil(log2 n') bits)
quotient cert    prefixed(bin n') + n'^2 adjacency bits (row-major)
                 + input flag (0: all inputs empty, 1: n' prefixed inputs)
                 + label (ceil(log2 n') bits)
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .graphs import Configuration, Graph, GraphError, build_graph, is_tree

__all__ = [
    "MalformedCode",
    "CertificateVector",
    "cert_size",
    "label_width",
    "encode_prefixed",
    "decode_prefixed",
    "encode_tree",
    "decode_tree",
    "rooted_code",
    "tree_preorder",
    "encode_tree_cert",
    "decode_tree_cert",
    "encode_quotient",
    "decode_quotient",
    "to_hex",
]


class MalformedCode(ValueError):
    pass


class CertificateVector(tuple):
    """Per-node certificate bit strings; ``size`` is the longest one."""

    def __new__(cls, certs: Iterable[str] = ()):
        certs = tuple(certs)
        for c in certs:
            if not isinstance(c, str) or any(ch not in "01" for ch in c):
                raise ValueError(f"certificate {c!r} is not a binary string")
        return super().__new__(cls, certs)

    @property
    def size(self) -> int:
        return cert_size(self)


def cert_size(certs: Sequence[str]) -> int:
    return max((len(c) for c in certs), default=0)


def label_width(n: int) -> int:
    """Bits for a label in ``0..n-1``: ceil(log2 n)."""
    return (n - 1).bit_length()


def to_hex(bits: str) -> str:
    """Hex rendering that keeps leading zeros: ``<len>:<hex>``."""
    if not bits:
        return "0:"
    return f"{len(bits)}:{int(bits, 2):0{(len(bits) + 3) // 4}x}"


def encode_prefixed(payload: str) -> str:
    length = format(len(payload), "b")
    return "1" * len(length) + "0" + length + payload


def decode_prefixed(bits: str, pos: int = 0) -> tuple[str, int]:
    """Read one prefixed field at ``pos``; return it and the next position."""
    m = 0
    while pos + m < len(bits) and bits[pos + m] == "1":
        m += 1
    if m == 0 or pos + m >= len(bits):
        raise MalformedCode("missing length header")
    start = pos + m + 1
    if start + m > len(bits):
        raise MalformedCode("truncated length field")
    length = int(bits[start : start + m], 2)
    end = start + m + length
    if end > len(bits):
        raise MalformedCode("truncated payload")
    return bits[start + m : end], end


def _read_count(bits: str, pos: int) -> tuple[int, int]:
    raw, pos = decode_prefixed(bits, pos)
    if not raw or raw[0] != "1":
        raise MalformedCode(f"node count {raw!r} is not a positive binary number")
    return int(raw, 2), pos


def _subcode(t: Graph, v: int, parent: int) -> str:
    return "".join(sorted("1" + _subcode(t, c, v) + "0" for c in t.adj[v] if c != parent))


def rooted_code(t: Graph, root: int) -> str:
    """AHU code of the rooted tree: equal codes exactly for isomorphic rooted trees."""
    return _subcode(t, root, -1)


def encode_tree(t: Graph, root: int) -> str:
    if not is_tree(t):
        raise GraphError("encode_tree needs a tree")
    return rooted_code(t, root)


def tree_preorder(t: Graph, root: int) -> list[int]:
    """Nodes of ``t`` in the order the tree code visits them (decoded indices)."""
    order: list[int] = []

    def visit(v: int, parent: int) -> None:
        order.append(v)
        kids = [c for c in t.adj[v] if c != parent]
        for c in sorted(kids, key=lambda c: "1" + _subcode(t, c, v) + "0"):
            visit(c, v)

    visit(root, -1)
    return order


@lru_cache(maxsize=4096)
def decode_tree(code: str) -> Graph:
    """Inverse of :func:`encode_tree`; the root is node 0, nodes in preorder."""
    edges = []
    stack = [0]
    nxt = 1
    for ch in code:
        if ch == "1":
            edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        elif ch == "0":
            if len(stack) == 1:
                raise MalformedCode("ascend above the root")
            stack.pop()
        else:
            raise MalformedCode(f"bad symbol {ch!r} in tree code")
    if len(stack) != 1:
        raise MalformedCode("unbalanced tree code")
    return build_graph(nxt, edges)


def encode_tree_cert(code: str, label: int) -> str:
    n = len(code) // 2 + 1
    if not 0 <= label < n:
        raise ValueError(f"label {label} outside 0..{n - 1}")
    width = label_width(n)
    return encode_prefixed(format(n, "b")) + code + (format(label, f"0{width}b") if width else "")


@lru_cache(maxsize=65536)
def decode_tree_cert(bits: str) -> tuple[str, Graph, int]:
    """Return (tree code, decoded tree, label)."""
    n, pos = _read_count(bits, 0)
    code = bits[pos : pos + 2 * (n - 1)]
    if len(code) != 2 * (n - 1):
        raise MalformedCode("truncated tree code")
    tree = decode_tree(code)
    pos += len(code)
    width = label_width(n)
    raw = bits[pos:]
    if len(raw) != width:
        raise MalformedCode(f"expected {width} label bits, found {len(raw)}")
    label = int(raw, 2) if width else 0
    if label >= n:
        raise MalformedCode(f"label {label} outside 0..{n - 1}")
    return code, tree, label


def encode_quotient(gq: Configuration, label: int) -> str:
    n = gq.n
    if not 0 <= label < n:
        raise ValueError(f"label {label} outside 0..{n - 1}")
    g = gq.graph
    adjacency = "".join("1" if g.has_edge(u, v) else "0" for u in range(n) for v in range(n))
    if any(gq.inputs):
        block = "1" + "".join(encode_prefixed(s) for s in gq.inputs)
    else:
        block = "0"
    width = label_width(n)
    return encode_prefixed(format(n, "b")) + adjacency + block + (format(label, f"0{width}b") if width else "")


@lru_cache(maxsize=65536)
def decode_quotient(bits: str) -> tuple[Configuration, int]:
    n, pos = _read_count(bits, 0)
    matrix = bits[pos : pos + n * n]
    if len(matrix) != n * n:
        raise MalformedCode("truncated adjacency matrix")
    pos += n * n
    edges = []
    for u in range(n):
        if matrix[u * n + u] != "0":
            raise MalformedCode(f"self-loop at quotient node {u}")
        for v in range(u + 1, n):
            if matrix[u * n + v] != matrix[v * n + u]:
                raise MalformedCode(f"asymmetric adjacency at ({u}, {v})")
            if matrix[u * n + v] == "1":
                edges.append((u, v))
    if pos >= len(bits):
        raise MalformedCode("missing input block")
    flag = bits[pos]
    pos += 1
    if flag == "0":
        inputs = ("",) * n
    else:
        found = []
        for _ in range(n):
            s, pos = decode_prefixed(bits, pos)
            found.append(s)
        inputs = tuple(found)
    width = label_width(n)
    raw = bits[pos:]
    if len(raw) != width:
        raise MalformedCode(f"expected {width} label bits, found {len(raw)}")
    label = int(raw, 2) if width else 0
    if label >= n:
        raise MalformedCode(f"label {label} outside 0..{n - 1}")
    try:
        graph = build_graph(n, edges)
    except GraphError as exc:
        raise MalformedCode(f"quotient is not a connected simple graph: {exc}") from exc
    return Configuration(graph, inputs), label
