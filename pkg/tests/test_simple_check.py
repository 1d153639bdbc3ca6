import itertools

import pytest
from hypothesis import given, strategies as st

from polygraph import simple_check as sc
from polygraph.obstructions import steinitz_decide
from polygraph.graph_core import (
    GraphError,
    are_isomorphic,
    cartesian_product,
    circulant,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    marc_antonio,
    named_graph,
    petersen,
)
from polygraph.geometry import cube, face_lattice, polygon, product_polytope, simplex, skeleton_graph

import oracles
from strategies import graphs


def _brute_candidates(G, cap):
    out = set()
    for k in range(4, cap + 1):
        for S in itertools.combinations(range(G.n), k):
            H, _ = G.induced(S)
            if steinitz_decide(H):
                out.add(frozenset(S))
    return out


@pytest.mark.parametrize("S", [[1, 2, 4], [1, 3, 4], [1, 2, 3], [1, 2]])
def test_candidates_match_brute_force(S):
    G = circulant(8, S)
    cands = sc.enumerate_candidate_facets(G, 8)
    assert {c.vertices for c in cands} == _brute_candidates(G, 8)


def test_candidate_counts():
    assert len(sc.enumerate_candidate_facets(circulant(8, [1, 3, 4]), 8)) == 4
    assert len(sc.enumerate_candidate_facets(circulant(8, [1, 2, 4]), 8)) == 34
    assert all(c.size == 4 for c in sc.enumerate_candidate_facets(circulant(8, [1, 3, 4]), 8))


@given(graphs(min_n=4, max_n=7, connected=True))
def test_candidates_property(G):
    assert {c.vertices for c in sc.enumerate_candidate_facets(G, G.n)} == _brute_candidates(G, G.n)


def test_candidate_budget():
    with pytest.raises(sc.BudgetExceeded):
        sc.enumerate_candidate_facets(hypercube(4), 16, budget=10)


def test_required_2faces_k23_conflict():
    r = sc.required_2faces(complete_bipartite(2, 3), 3, strict=False)
    assert r.conflict["kind"] == "share_two_edges"


def test_required_2faces_regularity():
    with pytest.raises(GraphError):
        sc.required_2faces(complete_bipartite(2, 3), 3)


def test_required_2faces_are_faces_of_cube():
    r = sc.required_2faces(hypercube(3), 3)
    assert r.ok and len(r.cycles) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_marc_antonio_conflict(n):
    r = sc.required_2faces(marc_antonio(n), 4)
    if not r.ok:
        assert r.conflict["kind"] in ("share_two_edges", "share_three_vertices", "share_nonadjacent_pair")


def test_simple_obstructions():
    assert sc.simple_obstructions(hypercube(4), 4) is None
    bad = sc.simple_obstructions(cartesian_product(petersen(), petersen()), 6)
    assert bad["id"] == "share_three_vertices"
    assert sc.simple_obstructions(cartesian_product(complete(2), named_graph("complete_bipartite", 3, 3)), 4)


def _facets_of(P):
    return {frozenset(f.vertices) for f in P.facets}


@pytest.mark.parametrize("P", [cube(4), simplex(4), product_polytope(polygon(3), polygon(3)),
                               product_polytope(polygon(4), polygon(5))],
                         ids=["cube4", "simplex4", "tri_x_tri", "sq_x_pent"])
@pytest.mark.parametrize("mode", ["facet4", "simple"])
def test_search_finds_true_facets(P, mode):
    G = skeleton_graph(P)
    res = sc.facet_complex_search(G, 4, mode=mode)
    assert res.status == "REALIZABLE-COMPLEX"
    assert {frozenset(f) for f in res.complex.facets()} == _facets_of(P)


@pytest.mark.parametrize("S", [[1, 2, 4], [1, 3, 4]])
def test_gamma8_refuted_and_replayed(S):
    G = circulant(8, S)
    res = sc.facet_complex_search(G, 4)
    assert res.status == "REFUTED" and res.mode == "facet4"
    assert sc.replay_transcript(G, res, 4) == (True, "ok")
    res5 = sc.facet_complex_search(G, 5, mode="simple")
    assert res5.status == "REFUTED"
    assert sc.replay_transcript(G, res5, 5, mode="simple")[0]


def test_transcript_tamper_detected():
    G = circulant(8, [1, 2, 4])
    res = sc.facet_complex_search(G, 4)
    lines = list(res.transcript)
    assert sc.replay_transcript(G, lines[:-1], 4)[0] is False or len(lines) == 1
    forged = [dict(l) for l in lines]
    forged[0] = {**forged[0], "node": 999}
    assert not sc.replay_transcript(G, forged, 4)[0]
    assert sc.replay_transcript(G, [], 4) == (False, "empty transcript")


def test_transcript_is_deterministic():
    G = circulant(8, [1, 2, 4])
    a = sc.facet_complex_search(G, 4)
    b = sc.facet_complex_search(G, 4)
    assert a.transcript_hash == b.transcript_hash
    assert sc.transcript_jsonl(a) == sc.transcript_jsonl(b)


def test_marc_antonio_three_refuted():
    G = marc_antonio(3)
    res = sc.facet_complex_search(G, 4, mode="simple")
    assert res.status == "REFUTED"
    assert sc.replay_transcript(G, res, 4, mode="simple")[0]


def test_search_budget_unknown():
    res = sc.facet_complex_search(marc_antonio(3), 4, budget=2, mode="simple")
    assert res.status == "UNKNOWN"


def test_search_mode_errors():
    with pytest.raises(GraphError):
        sc.facet_complex_search(circulant(8, [1, 2, 4]), 4, mode="simple")
    with pytest.raises(GraphError):
        sc.facet_complex_search(circulant(8, [1, 2, 4]), 6, mode="facet4")


FACTOR_CASES = [
    (cartesian_product(cycle(5), complete(2)), 2),
    (hypercube(4), 4),
    (cartesian_product(petersen(), petersen()), 2),
    (cartesian_product(complete(2), circulant(8, [1, 4])), 2),
    (cartesian_product(cycle(3), cartesian_product(cycle(4), cycle(5))), 4),  # C4 = K2 x K2
]


@pytest.mark.parametrize("G,k", FACTOR_CASES)
def test_factorization_multiplies_back(G, k):
    fs = sc.factorize(G)
    assert len(fs) == k
    assert are_isomorphic(sc.multiply(fs), G)


@pytest.mark.parametrize("G", [petersen(), circulant(8, [1, 2, 4]), complete(5), cycle(7)])
def test_primes_stay_prime(G):
    assert sc.factorize(G) == [G]


@given(graphs(min_n=2, max_n=4, connected=True), graphs(min_n=2, max_n=4, connected=True))
def test_factorization_property(G, H):
    P = cartesian_product(G, H)
    fs = sc.factorize(P)
    assert len(fs) >= 2
    assert are_isomorphic(sc.multiply(fs), P)


def test_product_factor_rule():
    G = cartesian_product(complete(2), complete_bipartite(3, 3))
    out = sc.product_factor_check(G)
    assert out.excluded and out.d == 4
    assert "theorem" in out.certificate
    assert not sc.product_factor_check(hypercube(4)).excluded
    with pytest.raises(GraphError):
        sc.product_factor_check(hypercube(3), (complete(2), cycle(5)))
