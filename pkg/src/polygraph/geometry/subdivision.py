"""Regular subdivisions from liftings, and lifted products built on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..graph_core import Graph, make_graph
from .constructions import centroid, cross_polytope, polygon, segment
from .hull import (
    DEFAULT_HULL_CAP,
    GeometryError,
    Point,
    Polytope,
    PointConfig,
    affine_dim,
    as_point,
    convex_hull_facets,
    skeleton_graph,
)

F = Fraction


@dataclass(frozen=True)
class Lifting:
    """Heights for a point set: the vertices of a polytope, optionally followed by extra points."""
    points: tuple[Point, ...]
    heights: tuple[Fraction, ...]

    @classmethod
    def of(cls, points: Sequence[Sequence], heights: Sequence) -> "Lifting":
        if len(points) != len(heights):
            raise GeometryError("one height per point required")
        return cls(tuple(as_point(p) for p in points), tuple(F(h) for h in heights))

    @classmethod
    def on(cls, Q: Polytope, heights: Sequence, extra: Sequence[Sequence] = (), extra_heights: Sequence = ()) -> "Lifting":
        return cls.of(list(Q.points) + list(extra), list(heights) + list(extra_heights))

    def shifted(self, c) -> "Lifting":
        return Lifting(self.points, tuple(h + F(c) for h in self.heights))


@dataclass(frozen=True)
class SubdivisionComplex:
    """Cells index into ``lifting.points``; ``graph`` is on all those points (unused ones isolated)."""
    lifting: Lifting
    cells: tuple[tuple[int, ...], ...]
    graph: Graph

    @property
    def used(self) -> list[int]:
        return sorted({i for c in self.cells for i in c})


def regular_subdivision(omega: Lifting) -> SubdivisionComplex:
    """Project the upper facets of the lifted point set."""
    pts = list(omega.points)
    n = len(pts)
    e = affine_dim(pts)
    if e < 1:
        raise GeometryError("point set is degenerate")
    lifted = [tuple(p) + (h,) for p, h in zip(pts, omega.heights)]
    if affine_dim(lifted) == e:
        # flat lifting: one cell, the whole polytope
        Q = convex_hull_facets(PointConfig.of(pts), cap=max(DEFAULT_HULL_CAP, n))
        index = {p: i for i, p in enumerate(pts)}
        cell = tuple(sorted(index[p] for p in Q.points))
        S = skeleton_graph(Q)
        edges = [(cell[u], cell[v]) for u, v in S.edges]
        return SubdivisionComplex(omega, (cell,), make_graph(n, edges))
    if affine_dim(lifted) != e + 1:
        raise GeometryError("lifted points not full-dimensional in their span")
    if len(pts[0]) != e:
        raise GeometryError("point set must be full-dimensional in its ambient space")
    H = convex_hull_facets(PointConfig.of(lifted), cap=max(DEFAULT_HULL_CAP, n))
    index = {p: i for i, p in enumerate(lifted)}
    cells = []
    for f in H.facets:
        if f.plane.normal[-1] > 0:
            cells.append(tuple(sorted(index[H.points[v]] for v in f.vertices)))
    cells.sort()
    edges = set()
    for c in cells:
        C = convex_hull_facets(PointConfig.of([pts[i] for i in c]))
        local = {p: i for i, p in enumerate(pts)}
        for u, v in skeleton_graph(C).edges:
            a, b = local[C.points[u]], local[C.points[v]]
            edges.add((min(a, b), max(a, b)))
    return SubdivisionComplex(omega, tuple(cells), make_graph(n, sorted(edges)))


def subdivision_graph(S: SubdivisionComplex) -> Graph:
    """Graph on the used points only, renumbered in order."""
    g, _ = S.graph.induced(S.used)
    return g


def cells_intersect_properly(S: SubdivisionComplex) -> bool:
    """Any two cells meet in a common face of both (vertex-set check)."""
    pts = S.lifting.points
    polys = [convex_hull_facets(PointConfig.of([pts[i] for i in c])) for c in S.cells]
    for a in range(len(S.cells)):
        for b in range(a + 1, len(S.cells)):
            common = set(S.cells[a]) & set(S.cells[b])
            if not common:
                continue
            for k in (a, b):
                P = polys[k]
                loc = {p: i for i, p in enumerate(P.points)}
                mask = sum(1 << loc[pts[i]] for i in common)
                if P.closure(mask) != mask:
                    return False
    return True


def lifted_product(P: Polytope, liftings: Lifting | Mapping[int, Lifting] | Sequence[Lifting],
                   cap: int = 128) -> Polytope:
    """conv{(w_v(q) p, q)} with P translated so that its centroid is the origin.

    ``liftings`` is one lifting for every vertex of P, or a per-vertex family sharing one
    point set.  Vertex (v, j) gets index v * |points| + j.
    """
    if isinstance(liftings, Lifting):
        fam = [liftings] * P.n
    elif isinstance(liftings, Mapping):
        fam = [liftings[v] for v in range(P.n)]
    else:
        fam = list(liftings)
    if len(fam) != P.n:
        raise GeometryError("need one lifting per vertex of P")
    qpts = fam[0].points
    for L in fam:
        if L.points != qpts:
            raise GeometryError("all liftings must share the same point set")
        if any(h <= 0 for h in L.heights):
            raise GeometryError("lifting heights must be positive")
    Qhull = convex_hull_facets(PointConfig.of(qpts), cap=max(DEFAULT_HULL_CAP, len(qpts)))
    if len(Qhull.points) < len(qpts) and P.dim == 1:
        raise GeometryError("extra (non-vertex) points need dim P > 1")
    c = centroid(P.points)
    base = [tuple(a - b for a, b in zip(p, c)) for p in P.points]
    pts = []
    for v, p in enumerate(base):
        for q, h in zip(qpts, fam[v].heights):
            pts.append(tuple(h * x for x in p) + tuple(q))
    R = convex_hull_facets(PointConfig.of(pts), cap=cap, name=f"lifted({P.name})")
    if R.n != len(pts):
        raise GeometryError(f"{len(pts) - R.n} lifted point(s) are not vertices; the lifting misses the upper envelope")
    return R


def expected_lifted_graph(P: Polytope, liftings: Sequence[Lifting]) -> Graph:
    """G x H with each fibre {v} x H replaced by {v} x H_v (same point set throughout)."""
    G = skeleton_graph(P)
    subs = [regular_subdivision(L).graph for L in liftings]
    k = subs[0].n
    edges = []
    for v in range(G.n):
        edges += [(v * k + a, v * k + b) for a, b in subs[v].edges]
    for u, v in G.edges:
        edges += [(u * k + j, v * k + j) for j in range(k)]
    return make_graph(G.n * k, edges)


# ---------------------------------------------------------------------------
# concrete witnesses
# ---------------------------------------------------------------------------

def triangle_times_path() -> tuple[Polytope, Graph]:
    """Triangle times the segment [0, 2] subdivided at its midpoint."""
    L = Lifting.of([(0,), (2,), (1,)], [1, 1, 2])
    R = lifted_product(polygon(3), L)
    return R, expected_lifted_graph(polygon(3), [L] * 3)


def segment_times_glued_triangles() -> tuple[Polytope, Graph]:
    """Segment times the unit square split along its diagonal (0,0)-(1,1)."""
    L = Lifting.of([(0, 0), (1, 0), (1, 1), (0, 1)], [2, 1, 2, 1])
    R = lifted_product(segment(), L)
    return R, expected_lifted_graph(segment(), [L] * 2)


def egyptian_lifting(axis: int | None) -> Lifting:
    """Octahedron lifting: constant, or 0 on the square orthogonal to ``axis`` and -1 on its apices.

    Heights are shifted by +2 to make them positive; constants do not change the subdivision.
    """
    Q = cross_polytope(3)
    if axis is None:
        return Lifting.on(Q, [2] * 6)
    hs = [-1 if i // 2 == axis else 0 for i in range(6)]
    return Lifting.on(Q, hs).shifted(2)


def prism_octahedron_realizations() -> list[Polytope]:
    """Four lifted products of a segment with the octahedron, all with graph K2 x octahedron."""
    I = segment()
    choices = [
        (None, None),
        (None, 2),
        (2, 2),
        (2, 1),
    ]
    out = []
    for a, b in choices:
        R = lifted_product(I, [egyptian_lifting(a), egyptian_lifting(b)])
        tag = "/".join("const" if x is None else f"pyr{x}" for x in (a, b))
        out.append(Polytope(R.points, R.dim, R.facets, R.stripped, f"prism_octahedron[{tag}]", R.labels))
    return out


def star_clique_octahedron_lifting() -> Lifting:
    """A 3-polytope with a regular subdivision whose graph is the octahedron with one vertex
    replaced by a 4-clique.

    The apex +e3 of the octahedron is cut at depth 1/3 towards +-e1 and 1/2 towards +-e2,
    so the four cut points span a tetrahedron T.  The lifting -|x| has three cells: T and
    the two halves x >= 0 and x <= 0 of the rest, which meet in a pentagon.
    """
    apex = (F(0), F(0), F(1))
    keep = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, -1)]
    depth = [F(1, 3), F(1, 3), F(1, 2), F(1, 2)]
    cut = []
    for t, w in zip(depth, keep[:4]):
        cut.append(tuple(a + t * (F(b) - a) for a, b in zip(apex, w)))
    pts = [tuple(F(x) for x in p) for p in keep] + cut
    return Lifting.of(pts, [-abs(p[0]) for p in pts])


def segment_times_star_clique_octahedron() -> tuple[Polytope, Graph]:
    L = star_clique_octahedron_lifting().shifted(2)
    R = lifted_product(segment(), L)
    return R, expected_lifted_graph(segment(), [L] * 2)


def domino_lens_lifting(p: int, q: int) -> Lifting:
    """Grid points (i, j) for 0 <= i <= p, 0 <= j <= q on two layers of a lens-shaped 3-polytope.

    Layer 0 sits on the paraboloid z = i^2 + j^2 and layer 1 on z = c - (i^2 + j^2), so all
    points are in convex position; the concave lifting -(i^2 + j^2) subdivides the lens
    into the prisms over the unit grid squares, whose graph is P_p x P_q x K2.
    Point (i, j, y) has index (i * (q + 1) + j) * 2 + y.
    """
    c = 2 * (p * p + q * q) + 1
    pts, hs = [], []
    for i in range(p + 1):
        for j in range(q + 1):
            r = i * i + j * j
            for y in (0, 1):
                pts.append((i, j, r if y == 0 else c - r))
                hs.append(-r)
    return Lifting.of(pts, hs)


def domino_product(p: int, q: int) -> tuple[Polytope, Graph]:
    """4-polytope with graph D_p x D_q: segment times the lens subdivision D_p x P_q."""
    L = domino_lens_lifting(p, q)
    L = L.shifted(1 - min(L.heights))
    R = lifted_product(segment(), L)
    return R, expected_lifted_graph(segment(), [L] * 2)


