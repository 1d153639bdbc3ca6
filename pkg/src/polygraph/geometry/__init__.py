from .hull import (
    DEFAULT_HULL_CAP,
    FaceLattice,
    Facet,
    GeometryError,
    GraphCheck,
    Hyperplane,
    PointConfig,
    Polytope,
    affine_dim,
    convex_hull_facets,
    face_lattice,
    fmt_rat,
    hull_audit,
    lattices_isomorphic,
    polytope_from_json,
    skeleton_graph,
    verify_graph,
)
from .constructions import (
    antiprism,
    centroid,
    circle_point,
    cross_polytope,
    cube,
    cyclic,
    davidsstar,
    davidsstar_minkowski,
    join_polytope,
    minkowski_sum,
    named_polytope,
    octahedron,
    polygon,
    prism,
    product_polytope,
    pyramid,
    segment,
    simplex,
    stack_facets,
    stacked_cyclic,
    truncate_vertex,
)
from .subdivision import (
    Lifting,
    SubdivisionComplex,
    cells_intersect_properly,
    domino_product,
    egyptian_lifting,
    expected_lifted_graph,
    lifted_product,
    prism_octahedron_realizations,
    regular_subdivision,
    segment_times_glued_triangles,
    segment_times_star_clique_octahedron,
    star_clique_octahedron_lifting,
    subdivision_graph,
    triangle_times_path,
)
from .realize import dual_graph, polar, realize_3polytope, tutte_embedding
