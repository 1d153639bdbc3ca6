import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from polygraph.graph_core import (
    GraphError,
    are_isomorphic,
    cartesian_product,
    circulant,
    circulant_is_connected,
    complete,
    connected_circulants,
    contains_induced,
    cycle,
    embedding_faces,
    from_edge_list,
    from_graph6,
    from_json,
    induced_cycles,
    is_planar,
    kuratowski_kind,
    make_graph,
    marc_antonio,
    named_graph,
    petersen,
    star_clique,
    vertex_connectivity,
)

import oracles
from strategies import circulant_params, graphs


def test_circulant_edges():
    G = circulant(8, [1, 2, 4])
    assert G.n == 8 and G.regular_degree() == 5
    assert G.has_edge(0, 4) and G.has_edge(3, 7) and not G.has_edge(0, 3)


def test_circulant_rejects_bad_jumps():
    with pytest.raises(GraphError):
        circulant(6, [4])
    with pytest.raises(GraphError):
        circulant(6, [0])


@given(circulant_params())
def test_circulant_connected_iff_gcd(params):
    n, S = params
    G = circulant(n, S)
    assert G.is_connected() == (math.gcd(n, *S) == 1)
    assert circulant_is_connected(n, S) == G.is_connected()


@given(circulant_params())
def test_circulant_degree(params):
    n, S = params
    expected = len({s % n for s in S} | {-s % n for s in S})
    assert circulant(n, S).regular_degree() == expected


def test_connected_circulant_counts():
    # one graph per isomorphism class; counts per n read off brute-force isomorphism classes
    rows = connected_circulants(8)
    by_n = {}
    for n, S, G in rows:
        by_n.setdefault(n, []).append(G)
    for n, gs in by_n.items():
        for a, b in itertools.combinations(gs, 2):
            assert are_isomorphic(a, b) is None
        every = [circulant(n, S) for k in range(1, n // 2 + 1)
                 for S in itertools.combinations(range(1, n // 2 + 1), k)]
        every = [G for G in every if G.is_connected()]
        for G in every:
            assert any(are_isomorphic(G, H) for H in gs)
    assert {n: len(v) for n, v in by_n.items()} == {2: 1, 3: 1, 4: 2, 5: 2, 6: 5, 7: 3, 8: 8}


@given(graphs(max_n=5), graphs(max_n=4))
def test_product_degree_law(G, H):
    P = cartesian_product(G, H)
    assert P.n == G.n * H.n
    assert P.m == G.m * H.n + H.m * G.n
    assert oracles.degree_law_holds(G, H, P)


@given(graphs(min_n=2, max_n=7, connected=True), st.data())
def test_star_clique_counts(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    d = G.degree(v)
    S = star_clique(G, v)
    assert S.n == G.n + d - 1
    assert S.m == G.m + d * (d - 1) // 2
    clique = [v] + list(range(G.n, S.n))
    assert all(S.has_edge(a, b) for a, b in itertools.combinations(clique, 2))


@given(graphs(min_n=2, max_n=7))
def test_connectivity_against_subset_removal(G):
    assert vertex_connectivity(G).kappa == oracles.kappa(G)


@given(graphs(min_n=2, max_n=7))
def test_connectivity_cut_is_separator(G):
    res = vertex_connectivity(G)
    if res.cut:
        assert len(res.cut) == res.kappa
        assert len(G.components(res.cut)) > 1


@given(graphs(max_n=7))
def test_induced_cycles_match_brute_force(G):
    cyc = induced_cycles(G, 6)
    for c in cyc:
        assert oracles.is_chordless_cycle(G, c)
    assert {frozenset(c) for c in cyc} == oracles.induced_cycle_sets(G, 6)
    assert len(cyc) == len({frozenset(c) for c in cyc})


@given(graphs(max_n=8, connected=True))
def test_planarity_certificates(G):
    res = is_planar(G)
    assert res.planar == nx.check_planarity(G.to_networkx())[0]
    if res.planar:
        faces = embedding_faces(G, res.rotation)
        if G.m >= 1:
            assert G.n - G.m + len(faces) == 2
    else:
        assert res.kind in ("K5", "K3,3")
        assert kuratowski_kind(G, res.kuratowski) == res.kind


def test_nonplanar_named():
    assert is_planar(petersen()).kind in ("K5", "K3,3")
    assert is_planar(complete(5)).kind == "K5"
    assert is_planar(named_graph("complete_bipartite", 3, 3)).kind == "K3,3"


def test_kuratowski_rejects_garbage():
    G = complete(5)
    assert kuratowski_kind(G, [(0, 1), (1, 2), (0, 2)]) is None


def test_isomorphism_and_induced():
    G = circulant(6, [1, 2])
    assert are_isomorphic(G, named_graph("octahedron")) is not None
    assert are_isomorphic(G, cycle(6)) is None
    m = contains_induced(petersen(), cycle(5))
    assert m is not None
    H, _ = petersen().induced(m.values())
    assert H.regular_degree() == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_marc_antonio_shape(n):
    G = marc_antonio(n)
    assert G.n == 2 * (2 * n + 3)
    assert G.regular_degree() == 4
    assert G.is_connected()


def test_named_errors():
    with pytest.raises(GraphError):
        named_graph("nope")
    with pytest.raises(GraphError):
        named_graph("cycle")


def test_parsers_round_trip():
    G = petersen()
    assert from_json(G.to_json()).adj == G.adj
    assert from_edge_list(G.to_edge_list()).adj == G.adj
    assert from_graph6(G.to_graph6()).adj == G.adj


def test_edge_list_header_checked():
    with pytest.raises(GraphError):
        from_edge_list("3 2\n0 1\n")


def test_make_graph_rejects_loops():
    with pytest.raises(GraphError):
        make_graph(2, [(0, 0)])
