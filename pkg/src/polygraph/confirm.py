"""Catalog of constructions used to confirm dimensions; every hit is checked by skeleton isomorphism."""
from __future__ import annotations

import itertools
from typing import Iterable

from networkx.algorithms import isomorphism as nxiso
import networkx as nx

from .graph_core import Graph, is_complete, is_cycle_graph
from .geometry import (
    GeometryError,
    Polytope,
    cross_polytope,
    cyclic,
    join_polytope,
    polygon,
    product_polytope,
    realize_3polytope,
    segment,
    simplex,
    stack_facets,
    verify_graph,
)


def polygon_for(G: Graph) -> Polytope:
    P = polygon(G.n)
    if not verify_graph(P, G).ok:
        raise GeometryError("graph is not a cycle")
    return P


def realize_3(G: Graph) -> Polytope:
    return realize_3polytope(G)


def _is_cocktail_party(G: Graph) -> bool:
    """K_{2m} minus a perfect matching."""
    if G.n % 2 or G.n < 6:
        return False
    return all(G.degree(v) == G.n - 2 for v in range(G.n))


def _joined_crosses(m: int, k: int) -> Polytope | None:
    """Join of k cross-polytopes of dimensions >= 2 summing to m; dimension m + k - 1."""
    if k < 1 or 2 * k > m:
        return None
    sizes = [2] * (k - 1) + [m - 2 * (k - 1)]
    P = cross_polytope(sizes[0])
    for s in sizes[1:]:
        P = join_polytope(P, cross_polytope(s))
    return P


def _stacked(G: Graph, d: int, hull_cap: int) -> Polytope | None:
    """G as a neighbourly polytope with vertices stacked on some of its facets."""
    T = [v for v in range(G.n) if G.degree(v) == d
         and all(G.has_edge(a, b) for a, b in itertools.combinations(G.adj[v], 2))]
    T = [v for v in T if not any(w in T for w in G.adj[v])]
    if not T:
        return None
    base_vs = [v for v in range(G.n) if v not in T]
    nb = len(base_vs)
    B, _ = G.induced(base_vs)
    if not is_complete(B) or nb < d + 1 or (d < 4 and nb > d + 1) or G.n > hull_cap:
        return None
    base = simplex(d) if nb == d + 1 else cyclic(d, nb)
    if len(T) > len(base.facets):
        return None
    big = nx.Graph()
    for i in range(base.n):
        big.add_node(("v", i), kind="v")
    for j, f in enumerate(base.facets):
        big.add_node(("f", j), kind="f")
        for i in f.vertices:
            big.add_edge(("v", i), ("f", j))
    small = nx.Graph()
    for v in base_vs:
        small.add_node(("v", v), kind="v")
    for t in T:
        small.add_node(("f", t), kind="f")
        for v in G.adj[t]:
            small.add_edge(("v", v), ("f", t))
    gm = nxiso.GraphMatcher(big, small, node_match=nxiso.categorical_node_match("kind", None))
    for mapping in gm.subgraph_isomorphisms_iter():
        facets = sorted(k[1] for k, s in mapping.items() if k[0] == "f")
        try:
            R = stack_facets(base, facets)
        except GeometryError:
            return None
        return R
    return None


def _direct(G: Graph, dims: Iterable[int], hull_cap: int) -> dict[int, Polytope]:
    """Constructions that apply to G as a whole (no factorization)."""
    from .obstructions import steinitz_decide

    dims = set(dims)
    out: dict[int, Polytope] = {}
    if 1 in dims and G.n == 2 and G.m == 1:
        out[1] = segment()
    if 2 in dims and is_cycle_graph(G):
        out[2] = polygon(G.n)
    if 3 in dims and steinitz_decide(G):
        out[3] = realize_3polytope(G)
    if is_complete(G) and G.n <= hull_cap:
        for d in dims:
            if d == G.n - 1 and d >= 1:
                out.setdefault(d, simplex(d))
            elif 4 <= d <= G.n - 2:
                out.setdefault(d, cyclic(d, G.n))
    if _is_cocktail_party(G) and G.n <= hull_cap:
        m = G.n // 2
        for d in dims:
            k = d - m + 1
            P = cross_polytope(m) if k == 1 else _joined_crosses(m, k)
            if P is not None:
                out.setdefault(d, P)
    for d in dims:
        if d >= 3 and d not in out:
            P = _stacked(G, d, hull_cap)
            if P is not None:
                out[d] = P
    return {d: P for d, P in out.items() if verify_graph(P, G).ok}


def catalog_realizations(G: Graph, dims: Iterable[int], hull_cap: int = 64) -> dict[int, Polytope]:
    """Verified polytopes with graph G for as many of ``dims`` as the catalog reaches.

    Besides the direct constructions, products of realizations of the prime
    Cartesian factors are tried.
    """
    from .simple_check import factorize

    dims = sorted(set(dims))
    out = _direct(G, dims, hull_cap)
    missing = [d for d in dims if d not in out]
    if not missing or G.n > hull_cap:
        return out
    factors = factorize(G)
    if len(factors) < 2:
        return out
    options = []
    for F in factors:
        opts = catalog_realizations(F, range(1, F.min_degree() + 1), hull_cap)
        if not opts:
            return out
        options.append(sorted(opts.items()))
    for combo in itertools.product(*options):
        d = sum(k for k, _ in combo)
        if d not in missing or d in out:
            continue
        P = combo[0][1]
        for _, Q in combo[1:]:
            P = product_polytope(P, Q)
        if verify_graph(P, G).ok:
            out[d] = P
    return out
