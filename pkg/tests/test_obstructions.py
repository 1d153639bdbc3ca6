import itertools
import random

import pytest
from hypothesis import given, strategies as st

from polygraph import obstructions as ob
from polygraph.graph_core import (
    are_isomorphic,
    cartesian_product,
    circulant,
    complete,
    cycle,
    hypercube,
    klee_stacked,
    marc_antonio,
    named_graph,
    petersen,
    star_clique,
)
from polygraph.geometry import cyclic

import oracles
from strategies import graphs


@given(graphs(min_n=2, max_n=7), st.integers(1, 5))
def test_balinski_matches_brute_kappa(G, d):
    res = ob.balinski_check(G, d)
    expected = G.n >= d + 1 and oracles.kappa(G) >= d
    assert res.passed == expected


@given(graphs(min_n=3, max_n=7, connected=True), st.integers(2, 4), st.data())
def test_psp_matches_path_oracle(G, d, data):
    v = data.draw(st.integers(0, G.n - 1))
    status, out = ob.psp_at(G, d, v)
    assert status in ("pass", "fail")
    assert (status == "pass") == oracles.psp_at(G, d, v)
    if status == "pass":
        assert ob.valid_psp_witness(G, out, d)


@pytest.mark.parametrize("n,S,d,ok", [(8, [1, 2, 4], 5, False), (7, [1, 2], 4, False), (8, [1, 2, 3], 6, False),
                                     (8, [1, 2], 3, True), (6, [1, 2], 4, False), (6, [1, 2], 3, True)])
def test_psp_known_cases(n, S, d, ok):
    assert ob.psp_check(circulant(n, S), d).passed == ok


def test_psp_random_order_still_valid():
    G = hypercube(4)
    res = ob.psp_check(G, 4, 0, rng=random.Random(7))
    assert res.passed and ob.valid_psp_witness(G, res.certificate["witnesses"][0], 4)


def test_psp_budget_gives_unknown():
    res = ob.psp_check(circulant(8, [1, 2, 4]), 5, budget_nodes=1)
    assert res.status == "unknown"


def test_cyclic_facet_count_formula():
    for m in range(5, 13):
        assert ob.cyclic_facet_count(4, m) == m * (m - 3) // 2


@pytest.mark.parametrize("d,n", [(d, n) for d in range(2, 6) for n in range(d + 1, 10)])
def test_gale_count_equals_hull(d, n):
    assert ob.cyclic_facet_count(d, n) == len(cyclic(d, n).facets)


def _separation_oracle(G, d, cap):
    for k in range(d + 1, cap + 1):
        bound = ob.cyclic_facet_count(d, k)
        for S in itertools.combinations(range(G.n), k):
            if len(G.components(S)) > bound:
                return False
    return True


@given(graphs(min_n=5, max_n=8, connected=True), st.integers(2, 3))
def test_separation_matches_exhaustive(G, d):
    cap = min(G.n, 6)
    res = ob.separation_check(G, d, cap)
    assert not res.certificate.get("unchecked")
    assert res.passed == _separation_oracle(G, d, cap)


def test_klee_separation_fails_in_dimension_three():
    G = klee_stacked(4, 6)
    res = ob.separation_check(G, 3, 8)
    assert res.failed
    S = res.certificate["separator"]
    assert len(G.components(S)) == res.certificate["components"] == 9
    assert res.certificate["bound"] == 8


def test_separation_cap_too_large():
    with pytest.raises(ValueError):
        ob.separation_check(cycle(5), 2, 9)


def test_steinitz():
    assert ob.steinitz_decide(hypercube(3))
    assert ob.steinitz_decide(complete(5)).reason == "nonplanar"
    assert ob.steinitz_decide(cycle(6)).reason == "not_3_connected"
    assert ob.steinitz_decide(complete(3)).reason == "too_few_vertices"


def test_whitney_faces_of_cube():
    faces = ob.whitney_2faces(hypercube(3))
    assert len(faces) == 6 and all(len(f) == 4 for f in faces)
    for f in faces:
        assert oracles.is_chordless_cycle(hypercube(3), f)


def test_reversible_cliques():
    oct_ = named_graph("octahedron")
    S = star_clique(oct_, 0)
    [(K, C)] = ob.reverse_star_clique(S)
    assert K == (0, 6, 7, 8)
    assert are_isomorphic(C, oct_)
    assert ob.reversible_cliques(complete(4)) == []


@pytest.mark.parametrize("n", [3, 4])
def test_star_clique_chain_replays(n):
    G = named_graph("davidsstar_starred", n)
    chain = ob.star_clique_chain(G)
    assert chain is not None
    assert ob.replay_star_clique_chain(G, chain)
    assert are_isomorphic(chain.base, named_graph("davidsstar", n))


def test_verdict_certificate_rules():
    with pytest.raises(ValueError):
        ob.DimensionVerdict(4, ob.Status.EXCLUDED, "R1")
    with pytest.raises(ValueError):
        ob.DimensionVerdict(4, ob.Status.UNKNOWN, "open", {"x": 1})


RANGES = [
    (complete(2), [1]),
    (cycle(5), [2]),
    (hypercube(3), [3]),
    (complete(6), [4, 5]),
    (hypercube(4), [4]),
    (circulant(7, [1, 2]), []),
    (circulant(8, [1, 2, 3]), [4, 5]),
    (klee_stacked(4, 6), [4]),
    (petersen(), []),
    (cartesian_product(cycle(3), cycle(3)), [4]),
]


@pytest.mark.parametrize("G,expected", RANGES, ids=[str(g) for g, _ in RANGES])
def test_ranges_and_reverification(G, expected):
    rep = ob.polytopality_range(G)
    assert rep.exact and rep.confirmed == expected
    assert all(ok for _, ok, _ in ob.verify_report(G, rep))


def test_report_json_is_stable():
    G = circulant(8, [1, 2, 4])
    a = ob.polytopality_range(G).to_json()
    b = ob.polytopality_range(G).to_json()
    assert a == b
    assert a["confirmed"] == [] and a["open"] == []


def test_tampered_certificate_is_rejected():
    G = circulant(7, [1, 2])
    rep = ob.polytopality_range(G)
    v = rep.verdict(4)
    bad = ob.DimensionVerdict(4, ob.Status.EXCLUDED, "R4-balinski", {"kind": "cut", "kappa": 1, "cut": [0]})
    assert ob.verify_verdict(G, v)[0]
    assert not ob.verify_verdict(G, bad)[0]
