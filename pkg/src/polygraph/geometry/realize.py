"""Exact 3-polytopes for planar 3-connected graphs: Tutte embedding plus Maxwell-Cremona lifting."""
from __future__ import annotations

from collections import deque
from fractions import Fraction

from ..graph_core import Graph, embedding_faces, is_planar, make_graph, vertex_connectivity
from .constructions import centroid
from .hull import GeometryError, Polytope, PointConfig, convex_hull_facets, skeleton_graph, solve, verify_graph

F = Fraction


def _faces(G: Graph) -> list[list[int]]:
    pl = is_planar(G)
    if not pl.planar:
        raise GeometryError("graph is not planar")
    return embedding_faces(G, pl.rotation)


def tutte_embedding(G: Graph, outer: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Barycentric embedding with ``outer`` pinned to a convex polygon (a triangle here)."""
    if len(outer) != 3:
        raise GeometryError("outer face must be a triangle")
    corners = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    pos: dict[int, tuple[Fraction, Fraction]] = dict(zip(outer, corners))
    inner = [v for v in range(G.n) if v not in pos]
    idx = {v: i for i, v in enumerate(inner)}
    k = len(inner)
    out = [None] * G.n
    for v, p in pos.items():
        out[v] = p
    if k:
        for coord in (0, 1):
            a = [[F(0)] * k for _ in range(k)]
            b = [F(0)] * k
            for v in inner:
                i = idx[v]
                a[i][i] = F(G.degree(v))
                for w in G.adj[v]:
                    if w in idx:
                        a[i][idx[w]] -= 1
                    else:
                        b[i] += pos[w][coord]
            x = solve(a, b)
            for v in inner:
                if coord == 0:
                    out[v] = (x[idx[v]],)
                else:
                    out[v] = out[v] + (x[idx[v]],)
    return out


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _outer_stresses(G: Graph, pos, outer: list[int]) -> dict[tuple[int, int], Fraction]:
    """Stresses on the outer triangle that balance the unit interior stresses."""
    w: dict[tuple[int, int], Fraction] = {}
    for a in outer:
        b, c = [x for x in outer if x != a]
        fx = sum((pos[v][0] - pos[a][0] for v in G.adj[a] if v not in outer), F(0))
        fy = sum((pos[v][1] - pos[a][1] for v in G.adj[a] if v not in outer), F(0))
        m = [[pos[b][0] - pos[a][0], pos[c][0] - pos[a][0]], [pos[b][1] - pos[a][1], pos[c][1] - pos[a][1]]]
        wb, wc = solve(m, [-fx, -fy])
        for x, val in ((b, wb), (c, wc)):
            key = (min(a, x), max(a, x))
            if key in w and w[key] != val:
                raise GeometryError("outer stresses are inconsistent")
            w[key] = val
    return w


def maxwell_cremona(G: Graph, faces: list[list[int]], pos, outer_face: int) -> list[Fraction]:
    """Vertex heights of the lifting with outer face at height 0 and unit interior stresses."""
    outer = faces[outer_face]
    stress = _outer_stresses(G, pos, outer)
    owner: dict[tuple[int, int], int] = {}
    for fi, f in enumerate(faces):
        for i in range(len(f)):
            owner[(f[i], f[(i + 1) % len(f)])] = fi
    planes: dict[int, tuple[Fraction, Fraction, Fraction]] = {outer_face: (F(0), F(0), F(0))}
    queue = deque([outer_face])
    while queue:
        fi = queue.popleft()
        f = faces[fi]
        A, B, C = planes[fi]
        for k in range(len(f)):
            i, j = f[k], f[(k + 1) % len(f)]
            g = owner[(j, i)]
            om = stress.get((min(i, j), max(i, j)), F(1))
            dx, dy = pos[j][0] - pos[i][0], pos[j][1] - pos[i][1]
            # plane_f - plane_g = om * cross(p_j - p_i, x - p_i)
            dA, dB = -om * dy, om * dx
            dC = om * (dy * pos[i][0] - dx * pos[i][1])
            cand = (A - dA, B - dB, C - dC)
            if g in planes:
                if planes[g] != cand:
                    raise GeometryError("lifting is not consistent around a vertex")
            else:
                planes[g] = cand
                queue.append(g)
    z = [None] * G.n
    for fi, f in enumerate(faces):
        A, B, C = planes[fi]
        for v in f:
            h = A * pos[v][0] + B * pos[v][1] + C
            if z[v] is not None and z[v] != h:
                raise GeometryError("faces disagree on a vertex height")
            z[v] = h
    return z


def _realize_with_triangle(G: Graph, faces: list[list[int]]) -> Polytope:
    tri = min((i for i, f in enumerate(faces) if len(f) == 3), key=lambda i: sorted(faces[i]))
    pos = tutte_embedding(G, faces[tri])
    z = maxwell_cremona(G, faces, pos, tri)
    for sign in (1, -1):
        pts = [(p[0], p[1], sign * h) for p, h in zip(pos, z)]
        P = convex_hull_facets(PointConfig.of(pts), cap=max(64, G.n))
        if P.n == G.n and P.points == tuple(pts) and skeleton_graph(P).adj == G.adj:
            return P
    raise GeometryError("lifted embedding is not convex")


def polar(P: Polytope) -> Polytope:
    """Polar of P about its vertex centroid; vertex i of the result is facet i of P."""
    c = centroid(P.points)
    pts = []
    for f in P.facets:
        b = f.plane.offset - f.plane.value(c)
        pts.append(tuple(a / b for a in f.plane.normal))
    return convex_hull_facets(PointConfig.of(pts), cap=max(64, len(pts)), name=f"polar({P.name})")


def dual_graph(G: Graph, faces: list[list[int]]) -> Graph:
    owner: dict[tuple[int, int], int] = {}
    for fi, f in enumerate(faces):
        for i in range(len(f)):
            owner[(f[i], f[(i + 1) % len(f)])] = fi
    edges = {tuple(sorted((owner[(u, v)], owner[(v, u)]))) for u, v in G.edges}
    return make_graph(len(faces), sorted(edges))


def realize_3polytope(G: Graph, name: str = "") -> Polytope:
    """A 3-polytope whose skeleton is exactly G (vertex i of the result is vertex i of G).

    G must be planar and 3-connected.  Without a triangular face the dual graph is
    realized instead and the polar is relabelled onto G.
    """
    if G.n < 4 or vertex_connectivity(G).kappa < 3:
        raise GeometryError("graph is not 3-connected")
    faces = _faces(G)
    if any(len(f) == 3 for f in faces):
        P = _realize_with_triangle(G, faces)
    else:
        D = dual_graph(G, faces)
        Q = _realize_with_triangle(D, _faces(D))
        R = polar(Q)
        chk = verify_graph(R, G)
        if not chk.ok:
            raise GeometryError("polar skeleton does not match: " + chk.reason)
        inv = {g: r for r, g in chk.bijection.items()}
        pts = [R.points[inv[v]] for v in range(G.n)]
        P = convex_hull_facets(PointConfig.of(pts), cap=max(64, G.n))
    return Polytope(P.points, P.dim, P.facets, P.stripped, name or G.label or "realized", P.labels)
