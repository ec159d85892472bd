import math

import pytest

from hyperchrom.hypergraph import (
    Coloring,
    Hypergraph,
    build_hypergraph,
    chromatic_number,
    clique_number,
    complete_hypergraph,
    format_hypergraph,
    independence_number,
    induced,
    is_complete_partite,
    is_proper,
    kneser,
    local_chromatic_number,
    local_palette,
    neighborhood,
    parse_hypergraph,
    PartiteFamily,
    usual_kneser,
)


def cycle(n):
    return build_hypergraph(n, [[i, i % n + 1] for i in range(1, n + 1)])


def test_build_normalizes_and_detects_uniformity():
    H = build_hypergraph(4, [[2, 1], [3, 4], [1, 2]])
    assert H.n == 4
    assert H.uniformity == 2
    assert len(H.edges) == 2  # duplicate edge collapsed


def test_complete_hypergraph_counts():
    H = complete_hypergraph(5, 2)
    assert len(H.edges) == 10
    assert complete_hypergraph(6, 3).uniformity == 3
    assert len(complete_hypergraph(6, 3).edges) == 20


def test_kneser_of_k52_is_petersen():
    P = kneser(complete_hypergraph(5, 2), 2)
    assert P.n == 10
    assert len(P.edges) == 15
    assert all(P.degree(v) == 3 for v in P.vertices)
    assert P.provenance[0] == "kneser"


def test_usual_kneser_r3():
    K = usual_kneser(7, 2, 3)
    assert K.n == 21
    assert K.uniformity == 3
    # triples of pairwise disjoint 2-subsets of [7]
    assert len(K.edges) == 105


def test_parse_format_roundtrip():
    H = kneser(complete_hypergraph(5, 2), 2)
    assert parse_hypergraph(format_hypergraph(H)).edges == H.edges


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_hypergraph("q 3\n")


def test_chromatic_small_graphs():
    K4 = kneser(complete_hypergraph(4, 1), 2)
    assert chromatic_number(K4).value == 4
    assert chromatic_number(cycle(5)).value == 3
    assert chromatic_number(cycle(6)).value == 2


def test_chromatic_petersen():
    P = kneser(complete_hypergraph(5, 2), 2)
    res = chromatic_number(P)
    assert res.value == 3
    assert res.exact
    assert is_proper(P, res.coloring)


def test_chromatic_hypergraph_two_colorable():
    # one 3-edge is 2-colorable
    H = Hypergraph(3, (frozenset({1, 2, 3}),), uniformity=3)
    assert chromatic_number(H).value == 2


def test_chromatic_singleton_edge_infinite():
    H = Hypergraph(2, (frozenset({1}),), uniformity=1)
    assert chromatic_number(H).value == math.inf


def test_is_proper():
    P = kneser(complete_hypergraph(5, 2), 2)
    assert not is_proper(P, Coloring((1,) * 10, palette_size=1))


def test_local_chromatic_oracles():
    K4 = kneser(complete_hypergraph(4, 1), 2)
    assert local_chromatic_number(K4) == 4
    assert local_chromatic_number(cycle(5)) == 3
    assert local_chromatic_number(cycle(6)) == 2


def test_local_palette_matches_definition_on_graph():
    C5 = cycle(5)
    c = Coloring((1, 2, 1, 2, 3), palette_size=3)
    assert is_proper(C5, c)
    # vertex 5 sees colors {3, 1, 2} in its closed neighborhood
    assert local_palette(C5, c) == 3


def test_neighborhood():
    H = Hypergraph(4, (frozenset({1, 2, 3}), frozenset({2, 3, 4})), uniformity=3)
    assert neighborhood(H, frozenset({2, 3})) == frozenset({1, 4})


def test_clique_independence():
    K4 = kneser(complete_hypergraph(4, 1), 2)
    P = kneser(complete_hypergraph(5, 2), 2)
    assert clique_number(K4) == 4
    assert clique_number(P) == 2
    assert independence_number(P) == 4
    assert independence_number(cycle(5)) == 2


def test_induced():
    P = kneser(complete_hypergraph(5, 2), 2)
    sub, relabel = induced(P, [1, 2, 3])
    assert sub.n == 3
    assert relabel[3] == 3


def test_is_complete_partite():
    K4 = kneser(complete_hypergraph(4, 1), 2)
    fam = PartiteFamily((frozenset({1, 2}), frozenset({3, 4})))
    assert is_complete_partite(K4, fam, 2)
    C4 = cycle(4)
    assert not is_complete_partite(
        C4, PartiteFamily((frozenset({1, 2}), frozenset({3, 4}))), 2
    )
