"""Exact rational convex hulls by hyperplane enumeration, face lattices, skeletons."""
from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from ..graph_core import Graph, are_isomorphic, make_graph

Rat = Fraction
Point = tuple[Fraction, ...]

DEFAULT_HULL_CAP = 64


class GeometryError(ValueError):
    pass


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise GeometryError("floating point coordinates are not accepted")
    return Fraction(x)


def as_point(p: Iterable) -> Point:
    return tuple(rat(x) for x in p)


def fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------

def _det_int(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _normal_int(rows: list[list[int]]) -> list[int]:
    """Generator of the kernel of a (k-1) x k integer matrix by cofactors; zero if rank-deficient."""
    k = len(rows) + 1
    if k == 1:
        return [1]
    if k == 2:
        return [-rows[0][1], rows[0][0]]
    if k == 3:
        (a, b, c), (d, e, f) = rows
        return [b * f - c * e, c * d - a * f, a * e - b * d]
    out = []
    for j in range(k):
        minor = [r[:j] + r[j + 1:] for r in rows]
        out.append((-1) ** j * _det_int(minor))
    return out


def rank(vectors: Sequence[Sequence[Fraction]]) -> tuple[int, list[int]]:
    """Rank and pivot columns of a rational matrix (rows = vectors)."""
    m = [list(v) for v in vectors]
    if not m:
        return 0, []
    cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return r, pivots


def affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])[0]


def solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(a)
    m = [list(map(rat, row)) + [rat(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise GeometryError("singular system")
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """Inequality ``normal . x <= offset``."""
    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self) -> None:
        if not any(self.normal):
            raise GeometryError("zero normal")

    def value(self, p: Point) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, p)), Fraction(0))

    def to_json(self) -> dict:
        return {"normal": [fmt_rat(x) for x in self.normal], "offset": fmt_rat(self.offset)}


@dataclass(frozen=True)
class Facet:
    vertices: frozenset[int]
    plane: Hyperplane


@dataclass(frozen=True)
class PointConfig:
    points: tuple[Point, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not self.points:
            raise GeometryError("empty point configuration")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            raise GeometryError("points of mixed dimension")
        if len(set(self.points)) != len(self.points):
            raise GeometryError("duplicate points")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @classmethod
    def of(cls, points: Iterable[Iterable], labels: Iterable[str] | None = None) -> "PointConfig":
        return cls(tuple(as_point(p) for p in points), tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class Polytope:
    """V-polytope with exact facets.  ``points`` are exactly the vertices."""
    points: tuple[Point, ...]
    dim: int
    facets: tuple[Facet, ...]
    stripped: tuple[Point, ...] = ()
    name: str = ""
    labels: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ambient(self) -> int:
        return len(self.points[0])

    @property
    def n(self) -> int:
        return len(self.points)

    def vertex_facets(self) -> list[int]:
        """Bitmask of incident facets per vertex."""
        if "vf" not in self._cache:
            masks = [0] * self.n
            for j, f in enumerate(self.facets):
                for v in f.vertices:
                    masks[v] |= 1 << j
            self._cache["vf"] = masks
        return self._cache["vf"]

    def facet_masks(self) -> list[int]:
        if "fm" not in self._cache:
            self._cache["fm"] = [sum(1 << v for v in f.vertices) for f in self.facets]
        return self._cache["fm"]

    def closure(self, vertex_mask: int) -> int:
        """Smallest face containing the given vertices (as a vertex bitmask)."""
        full = (1 << self.n) - 1
        fm = self.facet_masks()
        out = full
        for j, m in enumerate(fm):
            if vertex_mask & ~m == 0:
                out &= m
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "points": [[fmt_rat(x) for x in p] for p in self.points],
            "facets": [
                {"vertices": sorted(f.vertices), **f.plane.to_json()} for f in self.facets
            ],
            "stripped": [[fmt_rat(x) for x in p] for p in self.stripped],
        }

    def content_hash(self) -> str:
        pts = json.dumps([[fmt_rat(x) for x in p] for p in self.points], separators=(",", ":"))
        return hashlib.sha256(pts.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# hull
# ---------------------------------------------------------------------------

def _to_int_rows(points: Sequence[Point]) -> tuple[list[list[int]], int]:
    den = 1
    for p in points:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [[int(x * den) for x in p] for p in points], den


def convex_hull_facets(cfg: PointConfig | Sequence[Sequence], cap: int = DEFAULT_HULL_CAP, name: str = "") -> Polytope:
    """Facets of conv(cfg) by enumerating hyperplanes through affinely independent point subsets.

    Lower-dimensional input is handled inside its affine hull: the returned hyperplanes
    are relative (they only constrain points of the affine hull).  Non-vertex input points
    are removed and reported in ``stripped``.
    """
    if not isinstance(cfg, PointConfig):
        cfg = PointConfig.of(cfg)
    pts = list(cfg.points)
    if len(pts) > cap:
        raise GeometryError(f"{len(pts)} points exceed hull cap {cap}")
    if len(pts) < 2:
        raise GeometryError("hull needs at least two distinct points")
    p0 = pts[0]
    k, pivots = rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])
    proj = [tuple(p[c] for c in pivots) for p in pts]
    ipts, den = _to_int_rows(proj)
    n = len(pts)
    full = (1 << n) - 1
    found: list[tuple[int, list[int], int]] = []  # (mask, normal, offset) in int coords
    masks: list[int] = []
    if k == 1:
        vals = [p[0] for p in ipts]
        lo, hi = min(vals), max(vals)
        found.append((sum(1 << i for i, v in enumerate(vals) if v == lo), [-1], -lo))
        found.append((sum(1 << i for i, v in enumerate(vals) if v == hi), [1], hi))
    else:
        for combo in itertools.combinations(range(n), k):
            cm = 0
            for i in combo:
                cm |= 1 << i
            if any(cm & ~m == 0 for m in masks):
                continue
            base = ipts[combo[0]]
            rows = [[a - b for a, b in zip(ipts[i], base)] for i in combo[1:]]
            nrm = _normal_int(rows)
            if not any(nrm):
                continue
            off = sum(a * b for a, b in zip(nrm, base))
            pos = neg = False
            on = 0
            for i, q in enumerate(ipts):
                v = sum(a * b for a, b in zip(nrm, q)) - off
                if v > 0:
                    pos = True
                elif v < 0:
                    neg = True
                else:
                    on |= 1 << i
                if pos and neg:
                    break
            if pos and neg:
                continue
            if pos:
                nrm = [-a for a in nrm]
                off = -off
            g = math.gcd(*nrm, off) or 1
            nrm = [a // g for a in nrm]
            off //= g
            found.append((on, nrm, off))
            masks.append(on)
    # vertices: points that are the intersection of their incident facets
    vertex_ids = []
    for i in range(n):
        inter = full
        hit = False
        for m, _, _ in found:
            if m >> i & 1:
                inter &= m
                hit = True
        if hit and inter == 1 << i:
            vertex_ids.append(i)
    pos = {v: j for j, v in enumerate(vertex_ids)}
    amb = len(pts[0])
    facets = []
    for m, nrm, off in found:
        normal = [Fraction(0)] * amb
        for c, a in zip(pivots, nrm):
            normal[c] = Fraction(a)
        plane = Hyperplane(tuple(normal), Fraction(off, den))
        verts = frozenset(pos[i] for i in range(n) if m >> i & 1 and i in pos)
        facets.append(Facet(verts, plane))
    facets.sort(key=lambda f: sorted(f.vertices))
    labels = None
    if cfg.labels is not None:
        labels = tuple(cfg.labels[i] for i in vertex_ids)
    stripped = tuple(pts[i] for i in range(n) if i not in pos)
    return Polytope(tuple(pts[i] for i in vertex_ids), k, tuple(facets), stripped, name, labels)


def hull_audit(P: Polytope) -> bool:
    """Every facet plane weakly separates all vertices with equality exactly on its vertex set."""
    for f in P.facets:
        for i, p in enumerate(P.points):
            v = f.plane.value(p)
            if v > f.plane.offset:
                return False
            if (v == f.plane.offset) != (i in f.vertices):
                return False
    return True


# ---------------------------------------------------------------------------
# combinatorics of a hull
# ---------------------------------------------------------------------------

def skeleton_graph(P: Polytope) -> Graph:
    if "skeleton" in P._cache:
        return P._cache["skeleton"]
    n = P.n
    edges = []
    if P.dim == 1:
        edges = [(0, 1)]
    elif P.dim >= 2:
        for u in range(n):
            for v in range(u + 1, n):
                if P.closure((1 << u) | (1 << v)) == (1 << u) | (1 << v):
                    edges.append((u, v))
    g = make_graph(n, edges, f"skeleton({P.name})" if P.name else "skeleton")
    P._cache["skeleton"] = g
    return g


@dataclass(frozen=True)
class FaceLattice:
    """Proper nonempty faces grouped by dimension, as sorted vertex tuples."""
    dim: int
    faces: tuple[tuple[tuple[int, ...], ...], ...]  # faces[k] = all k-faces

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.faces)

    def to_json(self) -> dict:
        return {"dim": self.dim, "levels": [[list(f) for f in level] for level in self.faces]}


def face_lattice(P: Polytope) -> FaceLattice:
    if "lattice" in P._cache:
        return P._cache["lattice"]
    fm = P.facet_masks()
    full = (1 << P.n) - 1
    faces = set(fm)
    frontier = set(fm)
    while frontier:
        new = set()
        for a in frontier:
            for b in fm:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    faces.discard(full)
    levels: list[list[tuple[int, ...]]] = [[] for _ in range(P.dim)]
    for m in faces:
        verts = tuple(i for i in range(P.n) if m >> i & 1)
        d = affine_dim([P.points[i] for i in verts])
        levels[d].append(verts)
    lat = FaceLattice(P.dim, tuple(tuple(sorted(lv)) for lv in levels))
    P._cache["lattice"] = lat
    return lat


def lattices_isomorphic(P: Polytope, Q: Polytope) -> bool:
    """Combinatorial equivalence via vertex-facet incidence graph isomorphism."""
    if P.dim != Q.dim or P.n != Q.n or len(P.facets) != len(Q.facets):
        return False
    if face_lattice(P).f_vector != face_lattice(Q).f_vector:
        return False

    def inc(R: Polytope) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(("v", i) for i in range(R.n))
        for j, f in enumerate(R.facets):
            g.add_node(("f", j))
            g.add_edges_from((("v", i), ("f", j)) for i in f.vertices)
        nx.set_node_attributes(g, {x: x[0] for x in g.nodes}, "kind")
        return g

    nm = nx.algorithms.isomorphism.categorical_node_match("kind", None)
    return nx.is_isomorphic(inc(P), inc(Q), node_match=nm)


@dataclass(frozen=True)
class GraphCheck:
    ok: bool
    bijection: dict[int, int] | None
    reason: str = ""


def verify_graph(P: Polytope, G: Graph) -> GraphCheck:
    """Bijection skeleton(P) -> G, or the first distinguishing invariant."""
    S = skeleton_graph(P)
    if S.n != G.n:
        return GraphCheck(False, None, f"vertex count {S.n} != {G.n}")
    if S.m != G.m:
        return GraphCheck(False, None, f"edge count {S.m} != {G.m}")
    if sorted(S.degrees()) != sorted(G.degrees()):
        return GraphCheck(False, None, "degree sequences differ")
    iso = are_isomorphic(S, G)
    if iso is None:
        return GraphCheck(False, None, "not isomorphic")
    return GraphCheck(True, iso)


def polytope_from_json(data: dict) -> Polytope:
    return convex_hull_facets(PointConfig.of(data["points"]), cap=max(DEFAULT_HULL_CAP, len(data["points"])),
                              name=data.get("name", ""))
