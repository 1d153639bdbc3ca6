"""Slow, obviously-correct reference implementations used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx

from polygraph.graph_core import Graph


def kappa(G: Graph) -> int:
    """Vertex connectivity by trying every removal set in increasing size."""
    for k in range(G.n):
        for S in itertools.combinations(range(G.n), k):
            if G.n - k <= 1:
                return k
            if len(G.components(S)) > 1:
                return k
    return G.n - 1


def is_chordless_cycle(G: Graph, c) -> bool:
    k = len(c)
    if len(set(c)) != k or k < 3:
        return False
    for i in range(k):
        if not G.has_edge(c[i], c[(i + 1) % k]):
            return False
    ring = {frozenset((c[i], c[(i + 1) % k])) for i in range(k)}
    return all(not G.has_edge(a, b) or frozenset((a, b)) in ring for a, b in itertools.combinations(c, 2))


def induced_cycle_sets(G: Graph, max_len: int) -> set[frozenset[int]]:
    """Vertex sets of induced cycles: a k-set induces a cycle iff it is 2-regular and connected."""
    out = set()
    for k in range(3, max_len + 1):
        for S in itertools.combinations(range(G.n), k):
            H, _ = G.induced(S)
            if H.regular_degree() == 2 and H.is_connected():
                out.add(frozenset(S))
    return out


def psp_at(G: Graph, d: int, v: int) -> bool:
    """Principal subdivision property at v, by trying every family of simple paths."""
    g = G.to_networkx()
    for B in itertools.combinations(sorted(G.adj[v]), d):
        pairs = list(itertools.combinations(B, 2))
        options = []
        for a, b in pairs:
            paths = [p for p in nx.all_simple_paths(g, a, b) if v not in p]
            options.append(paths)
        if _disjoint_choice(options, 0, set(B), [], v, g):
            return True
    return False


def _disjoint_choice(options, i, branch, used, v, g) -> bool:
    if i == len(options):
        return True
    for p in options[i]:
        inner = set(p[1:-1])
        if inner & branch or any(inner & u for u in used):
            continue
        used.append(inner)
        if _disjoint_choice(options, i + 1, branch, used, v, g):
            return True
        used.pop()
    return False


def facets_brute(points) -> int:
    """Number of facets of a full-dimensional point configuration, by checking every d-subset."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    d = len(pts[0])
    found = set()
    for S in itertools.combinations(range(len(pts)), d):
        rows = [[pts[j][k] - pts[S[0]][k] for k in range(d)] for j in S[1:]]
        normal = _kernel_vector(rows, d)
        if normal is None:
            continue
        off = sum(a * b for a, b in zip(normal, pts[S[0]]))
        vals = [sum(a * b for a, b in zip(normal, p)) - off for p in pts]
        if all(x <= 0 for x in vals) or all(x >= 0 for x in vals):
            found.add(frozenset(i for i, x in enumerate(vals) if x == 0))
    return len(found)


def _kernel_vector(rows, d):
    """A nonzero vector orthogonal to the d-1 rows, or None if they are dependent."""
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if r < d - 1:
        return None
    free = next(c for c in range(d) if c not in piv)
    x = [Fraction(0)] * d
    x[free] = Fraction(1)
    for i, c in enumerate(piv):
        x[c] = -m[i][free] / m[i][c]
    return x


def moment_curve(d: int, n: int):
    return [tuple(Fraction(t) ** k for k in range(1, d + 1)) for t in range(n)]


def degree_law_holds(G: Graph, H: Graph, P: Graph) -> bool:
    return all(P.degree(v * H.n + w) == G.degree(v) + H.degree(w) for v in range(G.n) for w in range(H.n))


def upper_cells_2d(points, heights) -> set[frozenset[int]]:
    """Cells of the regular subdivision of planar points: tight sets of upper supporting planes."""
    lifted = [(Fraction(p[0]), Fraction(p[1]), Fraction(h)) for p, h in zip(points, heights)]
    cells = set()
    for a, b, c in itertools.combinations(range(len(lifted)), 3):
        A, B, C = lifted[a], lifted[b], lifted[c]
        u = [B[k] - A[k] for k in range(3)]
        v = [C[k] - A[k] for k in range(3)]
        nrm = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        if nrm[2] == 0:
            continue
        if nrm[2] < 0:
            nrm = [-x for x in nrm]
        off = sum(x * y for x, y in zip(nrm, A))
        vals = [sum(x * y for x, y in zip(nrm, p)) - off for p in lifted]
        if all(x <= 0 for x in vals):
            cells.add(frozenset(i for i, x in enumerate(vals) if x == 0))
    return cells
