import pytest
from hypothesis import given

from conftest import configurations, connected_graphs
from locald.graphs import Configuration, complete_graph, cycle_graph, is_automorphism, find_fpf_automorphism, path_graph, star_graph
from locald.languages import (
    BIPARTITE,
    EQSIZE,
    FPF,
    TREE,
    TREE_T,
    Language,
    member,
    negative_instances,
    parse_language,
    positive_instances,
)

plain = Configuration.plain


def test_examples():
    assert member(Language(TREE_T, 1), plain(path_graph(3)))
    assert not member(Language(FPF), plain(path_graph(3)))
    assert member(Language(FPF), plain(path_graph(2)))
    assert member(Language(EQSIZE), Configuration(path_graph(2), ("0", "1")))
    for w in [("0", "1", "0"), ("1", "1", "0"), ("0", "0", "0")]:
        assert not member(Language(EQSIZE), Configuration(path_graph(3), w))


def test_input_alphabets():
    assert not member(Language(EQSIZE), Configuration(path_graph(2), ("0", "11")))
    assert not member(Language(TREE), Configuration(path_graph(2), ("", "1")))
    assert member(Language(BIPARTITE), Configuration(cycle_graph(4), ("1", "", "", "")))
    assert not member(Language(BIPARTITE), plain(complete_graph(3)))


def test_parse():
    assert parse_language("tree_t:2") == Language(TREE_T, 2)
    assert parse_language("fpf-sym-trees") == Language(FPF)
    assert parse_language("eq-size-partition").cli_name == "eq-size-partition"
    for bad in ("tree_t:0", "clique"):
        with pytest.raises(ValueError):
            parse_language(bad)


def test_instance_streams():
    assert [c.n for c in positive_instances(Language(TREE_T, 1), 3)] == [3]
    fpf4 = list(positive_instances(Language(FPF), 4))
    assert len(fpf4) == 1 and max(fpf4[0].graph.degree(v) for v in range(4)) == 2
    k2 = list(positive_instances(Language(EQSIZE), 2))
    assert Configuration(path_graph(2), ("0", "1")) in k2 and len(k2) == 2
    assert plain(star_graph(3)) in negative_instances(Language(FPF), 4)


@given(connected_graphs(max_n=6))
def test_tree_is_union_and_monotone(g):
    c = plain(g)
    ts = [member(Language(TREE_T, t), c) for t in range(1, g.n + 1)]
    assert member(Language(TREE), c) == any(ts)
    assert all(not a or b for a, b in zip(ts, ts[1:]))


@given(configurations(max_n=7, alphabet=("0", "1")))
def test_eqsize_needs_even(config):
    if member(Language(EQSIZE), config):
        assert config.n % 2 == 0


@given(connected_graphs(max_n=7, trees_only=True))
def test_fpf_witness(g):
    c = plain(g)
    if member(Language(FPF), c):
        w = find_fpf_automorphism(g)
        assert is_automorphism(g, w.mapping) and not w.fixed_points()
