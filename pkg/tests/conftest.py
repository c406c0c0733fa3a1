import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from locald.graphs import Configuration, Graph, build_graph

settings.register_profile(
    "locald",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("locald")


@st.composite
def connected_graphs(draw, min_n=1, max_n=7, trees_only=False):
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    if not trees_only:
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in edges and draw(st.booleans()) and draw(st.booleans()):
                    edges.add((u, v))
    perm = draw(st.permutations(range(n)))
    return build_graph(n, [(perm[u], perm[v]) for u, v in edges])


@st.composite
def configurations(draw, min_n=1, max_n=7, alphabet=("", "0", "1", "01", "10")):
    g = draw(connected_graphs(min_n, max_n))
    inputs = tuple(draw(st.sampled_from(alphabet)) for _ in range(g.n))
    return Configuration(g, inputs)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def nxg():
    return to_nx


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(capsys):
    def report(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
