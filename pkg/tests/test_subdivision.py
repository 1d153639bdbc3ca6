import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from polygraph.graph_core import are_isomorphic, cartesian_product, cycle, named_graph, path, star_clique
from polygraph.geometry import (
    GeometryError,
    Lifting,
    PointConfig,
    affine_dim,
    cells_intersect_properly,
    convex_hull_facets,
    domino_product,
    egyptian_lifting,
    expected_lifted_graph,
    face_lattice,
    hull_audit,
    lattices_isomorphic,
    lifted_product,
    polygon,
    prism_octahedron_realizations,
    regular_subdivision,
    segment,
    segment_times_glued_triangles,
    segment_times_star_clique_octahedron,
    skeleton_graph,
    star_clique_octahedron_lifting,
    subdivision_graph,
    triangle_times_path,
    verify_graph,
)

import oracles


def _hull_vertices(points, idx):
    P = convex_hull_facets(PointConfig.of([points[i] for i in idx]))
    keep = set(P.points)
    return frozenset(i for i in idx if points[i] in keep)


SQUARE = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]


@given(st.lists(st.integers(0, 6), min_size=5, max_size=5))
def test_subdivision_matches_brute_force(heights):
    L = Lifting.of(SQUARE, heights)
    lifted = [p + (h,) for p, h in zip(SQUARE, heights)]
    assume(affine_dim([tuple(Fraction(x) for x in p) for p in lifted]) == 3)
    S = regular_subdivision(L)
    expected = {_hull_vertices(SQUARE, c) for c in oracles.upper_cells_2d(SQUARE, heights)
                if affine_dim([tuple(Fraction(x) for x in SQUARE[i]) for i in c]) == 2}
    assert {_hull_vertices(SQUARE, c) for c in S.cells} == expected
    assert cells_intersect_properly(S)


def test_flat_lifting_is_one_cell():
    S = regular_subdivision(Lifting.of([(0, 0), (1, 0), (1, 1), (0, 1)], [1, 1, 1, 1]))
    assert len(S.cells) == 1
    assert are_isomorphic(subdivision_graph(S), cycle(4))


def test_segment_subdivision():
    S = regular_subdivision(Lifting.of([(0,), (2,), (1,)], [1, 1, 2]))
    assert S.cells == ((0, 2), (1, 2))
    assert are_isomorphic(subdivision_graph(S), path(2))


def test_star_clique_octahedron_subdivision():
    S = regular_subdivision(star_clique_octahedron_lifting())
    assert len(S.cells) == 3
    assert cells_intersect_properly(S)
    assert are_isomorphic(subdivision_graph(S), star_clique(named_graph("octahedron"), 0))


def test_witness_triangle_times_path():
    R, G = triangle_times_path()
    assert verify_graph(R, G).ok
    assert are_isomorphic(G, cartesian_product(cycle(3), path(2)))


def test_witness_segment_times_glued_triangles():
    R, G = segment_times_glued_triangles()
    assert verify_graph(R, G).ok
    assert R.dim == 3


def test_witness_star_clique_octahedron():
    R, G = segment_times_star_clique_octahedron()
    assert R.dim == 4 and verify_graph(R, G).ok
    assert are_isomorphic(G, cartesian_product(named_graph("complete", 2),
                                               star_clique(named_graph("octahedron"), 0)))


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1)])
def test_domino_products(p, q):
    R, G = domino_product(p, q)
    assert R.dim == 4 and verify_graph(R, G).ok
    assert are_isomorphic(G, cartesian_product(named_graph("domino", p), named_graph("domino", q)))


def test_prism_over_octahedron_realizations():
    reps = prism_octahedron_realizations()
    assert len(reps) >= 4
    target = cartesian_product(named_graph("complete", 2), named_graph("octahedron"))
    for R in reps:
        assert hull_audit(R) and verify_graph(R, target).ok
    for A, B in itertools.combinations(reps, 2):
        assert not lattices_isomorphic(A, B)
    assert sorted(face_lattice(R).f_vector for R in reps)[0] == (12, 30, 28, 10)


def test_lifted_product_rejects_nonpositive_heights():
    with pytest.raises(GeometryError):
        lifted_product(polygon(3), Lifting.of([(0,), (1,)], [0, 1]))


def test_lifted_product_rejects_interior_point_over_segment():
    with pytest.raises(GeometryError):
        lifted_product(segment(), Lifting.of([(0,), (2,), (1,)], [1, 1, 2]))


def test_lifted_product_needs_one_lifting_per_vertex():
    L = egyptian_lifting(None)
    with pytest.raises(GeometryError):
        lifted_product(segment(), [L])


@given(st.lists(st.integers(1, 5), min_size=3, max_size=3))
def test_triangle_over_subdivided_segment(h):
    """Whenever every lifted point is a vertex, the graph is the predicted fibred product."""
    L = Lifting.of([(0,), (3,), (1,)], [h[0], h[1], h[2]])
    try:
        R = lifted_product(polygon(3), L)
    except GeometryError:
        return
    assert verify_graph(R, expected_lifted_graph(polygon(3), [L] * 3)).ok


def test_per_vertex_liftings():
    flat = egyptian_lifting(None)
    bent = egyptian_lifting(2)
    R = lifted_product(segment(), [flat, bent])
    G = expected_lifted_graph(segment(), [flat, bent])
    assert verify_graph(R, G).ok
    assert face_lattice(R).f_vector == (12, 30, 29, 11)
