"""Witness polytopes: named families, products, joins, sums, pyramids, truncations."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from ..graph_core import Graph, star_clique
from .hull import (
    DEFAULT_HULL_CAP,
    GeometryError,
    Polytope,
    PointConfig,
    affine_dim,
    convex_hull_facets,
    skeleton_graph,
)

F = Fraction


def circle_point(theta: float, max_den: int = 10**4) -> tuple[Fraction, Fraction]:
    """A rational point exactly on the unit circle close to angle ``theta``."""
    theta = (theta + math.pi) % (2 * math.pi) - math.pi
    if abs(abs(theta) - math.pi) < 1e-12:
        return F(-1), F(0)
    t = F(math.tan(theta / 2)).limit_denominator(max_den)
    return (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)


def _hull(points, name: str, cap: int = DEFAULT_HULL_CAP) -> Polytope:
    return convex_hull_facets(PointConfig.of(points), cap=cap, name=name)


def segment(a: int = -1, b: int = 1) -> Polytope:
    return _hull([(a,), (b,)], "segment")


def simplex(d: int) -> Polytope:
    pts = [[0] * d] + [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    return _hull(pts, f"simplex({d})")


def cube(d: int) -> Polytope:
    return _hull(list(itertools.product((0, 1), repeat=d)), f"cube({d})")


def cross_polytope(d: int) -> Polytope:
    """Vertex 2i is +e_i and 2i+1 is -e_i."""
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append([s if j == i else 0 for j in range(d)])
    return _hull(pts, f"cross_polytope({d})")


def cyclic(d: int, n: int) -> Polytope:
    """Points (t, t^2, ..., t^d) on the moment curve for t = 1..n."""
    if n <= d:
        raise GeometryError("cyclic polytope needs n > d")
    return _hull([[t**k for k in range(1, d + 1)] for t in range(1, n + 1)], f"cyclic({d},{n})")


def polygon(m: int) -> Polytope:
    """Near-regular m-gon with vertices exactly on the unit circle, in cyclic order."""
    if m < 3:
        raise GeometryError("polygon needs m >= 3")
    return _hull([circle_point(2 * math.pi * k / m) for k in range(m)], f"polygon({m})")


def octahedron() -> Polytope:
    return cross_polytope(3)


def prism(m: int) -> Polytope:
    return product_polytope(polygon(m), segment(0, 1))


def antiprism(m: int) -> Polytope:
    """Vertex 2k on the bottom m-gon, 2k+1 on the rotated top m-gon; skeleton is circulant(2m;1,2)."""
    pts = []
    for k in range(m):
        x, y = circle_point(2 * math.pi * k / m)
        pts.append((x, y, 0))
        x, y = circle_point(2 * math.pi * k / m + math.pi / m)
        pts.append((x, y, 1))
    return _hull(pts, f"antiprism({m})")


def product_polytope(P: Polytope, Q: Polytope) -> Polytope:
    """Vertex (a, b) gets index a * |Q| + b, matching ``cartesian_product``."""
    pts = [tuple(p) + tuple(q) for p in P.points for q in Q.points]
    return _hull(pts, f"({P.name} x {Q.name})", cap=max(DEFAULT_HULL_CAP, len(pts)))


def join_polytope(P: Polytope, Q: Polytope) -> Polytope:
    """P at height 0 and Q at height 1 in complementary coordinate blocks."""
    dp, dq = P.ambient, Q.ambient
    pts = [tuple(p) + (F(0),) * dq + (F(0),) for p in P.points]
    pts += [(F(0),) * dp + tuple(q) + (F(1),) for q in Q.points]
    return _hull(pts, f"join({P.name},{Q.name})")


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient != Q.ambient:
        raise GeometryError("Minkowski summands live in different spaces")
    sums = sorted({tuple(a + b for a, b in zip(p, q)) for p in P.points for q in Q.points})
    return _hull(sums, f"({P.name} + {Q.name})", cap=max(DEFAULT_HULL_CAP, len(sums)))


def centroid(points: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    n = len(points)
    return tuple(sum(c, F(0)) / n for c in zip(*points))


def pyramid(P: Polytope, apex_height: Fraction | int = 1) -> Polytope:
    apex = centroid(P.points) + (F(apex_height),)
    pts = [tuple(p) + (F(0),) for p in P.points] + [apex]
    return _hull(pts, f"pyramid({P.name})")


def translate(P: Polytope, shift: Sequence[Fraction]) -> Polytope:
    pts = [tuple(a - b for a, b in zip(p, shift)) for p in P.points]
    return _hull(pts, P.name, cap=max(DEFAULT_HULL_CAP, len(pts)))


def truncate_vertex(P: Polytope, v: int, t: Fraction = F(1, 3), max_halvings: int = 30) -> Polytope:
    """Cut off simple vertex ``v``; new vertex i sits on the edge to the i-th smallest neighbour.

    Vertex numbering follows ``star_clique``: the first cut point takes index ``v``
    and the remaining ones are appended.
    """
    G = skeleton_graph(P)
    nbrs = sorted(G.adj[v])
    if len(nbrs) != P.dim:
        raise GeometryError(f"vertex {v} is not simple ({len(nbrs)} edges in dimension {P.dim})")
    t = F(t)
    if not 0 < t < 1:
        raise GeometryError("truncation parameter must lie in (0, 1)")
    pv = P.points[v]
    for _ in range(max_halvings):
        cut = [tuple(a + t * (b - a) for a, b in zip(pv, P.points[w])) for w in nbrs]
        pts = list(P.points)
        pts[v] = cut[0]
        pts.extend(cut[1:])
        R = _hull(pts, f"truncate({P.name},{v})", cap=max(DEFAULT_HULL_CAP, len(pts)))
        if R.n == len(pts) and len(R.facets) == len(P.facets) + 1:
            return R
        t /= 2
    raise GeometryError("could not find an admissible truncation depth")


def stack_facets(P: Polytope, facets: Sequence[int] | None = None, t: Fraction = F(1, 4),
                 max_halvings: int = 30) -> Polytope:
    """Place a new vertex slightly beyond each listed facet (all facets by default)."""
    idx = list(range(len(P.facets))) if facets is None else list(facets)
    t = F(t)
    for _ in range(max_halvings):
        pts = list(P.points)
        for j in idx:
            f = P.facets[j]
            c = centroid([P.points[i] for i in sorted(f.vertices)])
            nrm = f.plane.normal
            scale = t / sum((x * x for x in nrm), F(0))
            pts.append(tuple(a + scale * b for a, b in zip(c, nrm)))
        R = _hull(pts, f"stacked({P.name})", cap=max(DEFAULT_HULL_CAP, len(pts)))
        if R.n == len(pts) and _stacking_ok(P, R, idx):
            return R
        t /= 2
    raise GeometryError("could not stack on the requested facets")


def _stacking_ok(P: Polytope, R: Polytope, idx: Sequence[int]) -> bool:
    S = skeleton_graph(R)
    base = skeleton_graph(P)
    for u, w in base.edges:
        if not S.has_edge(u, w):
            return False
    for k, j in enumerate(idx):
        s = P.n + k
        if set(S.adj[s]) != set(P.facets[j].vertices):
            return False
    return True


def stacked_cyclic(d: int, n: int) -> tuple[Polytope, Graph]:
    """Stack a vertex on every facet of the cyclic polytope C_d(n)."""
    base = cyclic(d, n)
    R = stack_facets(base)
    R = Polytope(R.points, R.dim, R.facets, R.stripped, f"klee_stacked({d},{n})", R.labels)
    return R, skeleton_graph(R)


def davidsstar(n: int, max_den: int = 10**4) -> tuple[Polytope, Graph]:
    """The lifted double 2n-gon and its starred graph.

    Vertices 0..2n-1 form the equator 2n-gon; 2n..4n-1 are the inner points lifted
    alternately to heights +1 (even k) and -1 (odd k).  Equator points are sums of the
    two neighbouring inner points, which keeps every trapezoid face exactly planar.
    """
    if n < 3:
        raise GeometryError("davidsstar needs n >= 3")
    inner = [tuple(F(c, 2) for c in circle_point((2 * k + 1) * math.pi / (2 * n), max_den)) for k in range(2 * n)]
    equator = []
    for k in range(2 * n):
        a, b = inner[k - 1], inner[k]
        equator.append((a[0] + b[0], a[1] + b[1], F(0)))
    lifted = [(x, y, F(1 if k % 2 == 0 else -1)) for k, (x, y) in enumerate(inner)]
    P = _hull(equator + lifted, f"davidsstar({n})")
    if P.n != 4 * n:
        raise GeometryError("davidsstar hull lost vertices")
    G = skeleton_graph(P)
    star = G
    for v in range(2 * n):
        star = star_clique(star, v)
    return P, star.relabeled(f"davidsstar*({n})")


def davidsstar_minkowski(n: int, max_den: int = 10**4) -> Polytope:
    """Minkowski sum of the two inner pyramids (even points with apex up, odd with apex down)."""
    inner = [tuple(F(c, 2) for c in circle_point((2 * k + 1) * math.pi / (2 * n), max_den)) for k in range(2 * n)]
    up = _hull([(x, y, F(0)) for x, y in inner[1::2]] + [(F(0), F(0), F(1))], "pyramid_up")
    down = _hull([(x, y, F(0)) for x, y in inner[0::2]] + [(F(0), F(0), F(-1))], "pyramid_down")
    return minkowski_sum(up, down)


def named_polytope(name: str, *params: int) -> Polytope:
    table = {
        "segment": lambda: segment(),
        "simplex": simplex,
        "cube": cube,
        "cross_polytope": cross_polytope,
        "cyclic": cyclic,
        "polygon": polygon,
        "prism": prism,
        "antiprism": antiprism,
        "octahedron": octahedron,
        "pyramid": lambda m: pyramid(polygon(m)),
        "davidsstar": lambda n: davidsstar(n)[0],
        "klee_stacked": lambda d, n: stacked_cyclic(d, n)[0],
    }
    if name not in table:
        raise GeometryError(f"unknown polytope {name!r}")
    try:
        return table[name](*params)
    except TypeError as exc:
        raise GeometryError(f"bad parameters for {name}: {params}") from exc


def is_full_dimensional(P: Polytope) -> bool:
    return affine_dim(list(P.points)) == P.ambient
