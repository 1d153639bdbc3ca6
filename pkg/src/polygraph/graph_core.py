"""Immutable simple graphs, named families, and structural algorithms.

Vertices are always ``0..n-1``.  Every operation returns a new :class:`Graph`.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

log = logging.getLogger(__name__)

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...] = field(repr=False)
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        for u, nb in enumerate(self.adj):
            if u in nb:
                raise GraphError(f"self-loop at {u}")
            for v in nb:
                if not 0 <= v < self.n or u not in self.adj[v]:
                    raise GraphError(f"asymmetric adjacency at {(u, v)}")

    # -- basic queries -------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def regular_degree(self) -> int | None:
        ds = set(self.degrees())
        return ds.pop() if len(ds) == 1 else None

    def relabeled(self, label: str) -> "Graph":
        return Graph(self.n, self.adj, label)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (renumbered in sorted order) and the index map back."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u in vs for v in self.adj[u] if v in pos and u < v]
        return make_graph(len(vs), edges), vs

    def remove(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        gone = set(removed)
        seen = set(gone)
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            seen.add(s)
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "label": self.label}

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode().strip()

    def __str__(self) -> str:
        return self.label or f"Graph(n={self.n}, m={self.m})"


def make_graph(n: int, edges: Iterable[Sequence[int]], label: str = "") -> Graph:
    if n < 0:
        raise GraphError("negative vertex count")
    adj: list[set[int]] = [set() for _ in range(n)]
    dup = 0
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop {(u, v)}")
        if v in adj[u]:
            dup += 1
        adj[u].add(v)
        adj[v].add(u)
    if dup:
        log.warning("make_graph: dropped %d duplicate edge(s)", dup)
    return Graph(n, tuple(frozenset(a) for a in adj), label)


def _simple(edges: Iterable[Sequence[int]]) -> list[Edge]:
    return sorted({(min(u, v), max(u, v)) for u, v in edges})


def from_json(data: dict) -> Graph:
    return make_graph(data["n"], data["edges"], data.get("label", ""))


def from_edge_list(text: str, label: str = "") -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise GraphError("empty edge list")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    return make_graph(n, edges, label)


def from_graph6(text: str, label: str = "") -> Graph:
    g = nx.from_graph6_bytes(text.strip().encode())
    return from_networkx(g, label)


def from_networkx(g: nx.Graph, label: str = "") -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return make_graph(len(nodes), [(pos[u], pos[v]) for u, v in g.edges()], label)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def circulant(n: int, S: Iterable[int]) -> Graph:
    S = sorted(set(S))
    if n < 2:
        raise GraphError("circulant needs n >= 2")
    if not S:
        raise GraphError("empty difference set")
    for s in S:
        if not 1 <= s <= n // 2:
            raise GraphError(f"difference {s} outside 1..{n // 2}")
    edges = _simple((i, (i + s) % n) for i in range(n) for s in S)
    return make_graph(n, edges, f"circulant({n};{','.join(map(str, S))})")


def circulant_is_connected(n: int, S: Iterable[int]) -> bool:
    return reduce(math.gcd, list(S), n) == 1


def connected_circulants(max_n: int, min_n: int = 2) -> list[tuple[int, tuple[int, ...], Graph]]:
    """One connected circulant per isomorphism class, as (n, S, graph) sorted by n, size of S, S."""
    out = []
    for n in range(min_n, max_n + 1):
        reps: list[Graph] = []
        half = list(range(1, n // 2 + 1))
        for k in range(1, len(half) + 1):
            for S in itertools.combinations(half, k):
                if not circulant_is_connected(n, S):
                    continue
                G = circulant(n, S)
                if any(are_isomorphic(G, H) is not None for H in reps):
                    continue
                reps.append(G)
                out.append((n, S, G))
    return out


def complete(n: int) -> Graph:
    return make_graph(n, itertools.combinations(range(n), 2), f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], f"K{a},{b}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def path(length: int) -> Graph:
    """Path with ``length`` edges (``length + 1`` vertices)."""
    return make_graph(length + 1, [(i, i + 1) for i in range(length)], f"P{length}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner, "petersen")


def marc_antonio(n: int) -> Graph:
    """Vertex (x, y) of Z_{2n+3} x Z_2 has index 2x + y."""
    if n < 1:
        raise GraphError("marc_antonio needs n >= 1")
    k = 2 * n + 3

    def idx(x: int, y: int) -> int:
        return 2 * (x % k) + (y % 2)

    edges = []
    for x in range(k):
        for y in (0, 1):
            for nx_, ny in ((x + y + 1, y), (x + y, y + 1), (x - y - 1, y), (x + y - 1, y + 1)):
                edges.append((idx(x, y), idx(nx_, ny)))
    g = make_graph(2 * k, _simple(edges), f"marc_antonio({n})")
    if g.regular_degree() != 4:
        raise GraphError(f"marc_antonio({n}): adjacency rule is not 4-regular, degrees {sorted(set(g.degrees()))}")
    return g


def hypercube(d: int) -> Graph:
    g = complete(1) if d == 0 else complete(2)
    for _ in range(d - 1):
        g = cartesian_product(g, complete(2))
    return g.relabeled(f"Q{d}")


def octahedron() -> Graph:
    return circulant(6, [1, 2]).relabeled("octahedron")


def domino(p: int) -> Graph:
    return cartesian_product(path(p), complete(2)).relabeled(f"domino({p})")


def klee_stacked(d: int, n: int) -> Graph:
    from .geometry import stacked_cyclic
    return stacked_cyclic(d, n)[1].relabeled(f"klee_stacked({d},{n})")


def davidsstar_graph(n: int, starred: bool = False) -> Graph:
    from .geometry import davidsstar
    poly, star = davidsstar(n)
    g = star if starred else skeleton(poly)
    return g.relabeled(f"davidsstar{'*' if starred else ''}({n})")


def skeleton(poly) -> Graph:
    from .geometry import skeleton_graph
    return skeleton_graph(poly)


NAMED = {
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "petersen": (petersen, 0),
    "domino": (domino, 1),
    "marc_antonio": (marc_antonio, 1),
    "klee_stacked": (klee_stacked, 2),
    "hypercube": (hypercube, 1),
    "octahedron": (octahedron, 0),
    "davidsstar": (davidsstar_graph, 1),
    "davidsstar_starred": (lambda n: davidsstar_graph(n, True), 1),
}


def named_graph(name: str, *params: int) -> Graph:
    try:
        fn, arity = NAMED[name]
    except KeyError:
        raise GraphError(f"unknown graph family {name!r}") from None
    if len(params) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(params)}")
    try:
        return fn(*params)
    except (TypeError, IndexError) as exc:
        raise GraphError(f"invalid parameters for {name}: {params}") from exc


def cartesian_product(G: Graph, H: Graph) -> Graph:
    if G.n == 0 or H.n == 0:
        raise GraphError("cartesian product of an empty graph")
    h = H.n
    edges = [(a * h + b, a * h + d) for a in range(G.n) for b, d in H.edges]
    edges += [(a * h + b, c * h + b) for a, c in G.edges for b in range(h)]
    label = f"({G.label or 'G'} x {H.label or 'H'})"
    return make_graph(G.n * h, edges, label)


def star_clique(G: Graph, v: int) -> Graph:
    """Replace ``v`` by a clique; clique vertex ``i`` takes the ``i``-th smallest neighbour.

    The first clique vertex keeps index ``v``; the others are appended at the end.
    """
    nbrs = sorted(G.adj[v])
    d = len(nbrs)
    if d == 0:
        raise GraphError(f"star_clique at isolated vertex {v}")
    clique = [v] + list(range(G.n, G.n + d - 1))
    edges = [e for e in G.edges if v not in e]
    edges += [(clique[i], w) for i, w in enumerate(nbrs)]
    edges += list(itertools.combinations(clique, 2))
    return make_graph(G.n + d - 1, edges, f"star_clique({G.label or 'G'},{v})")


def contract(G: Graph, group: Iterable[int]) -> Graph:
    """Merge ``group`` into its smallest vertex; remaining vertices are renumbered in order."""
    group = sorted(set(group))
    keep = group[0]
    gone = set(group[1:])
    order = [u for u in range(G.n) if u not in gone]
    pos = {u: i for i, u in enumerate(order)}
    rep = lambda u: pos[keep] if u in gone or u == keep else pos[u]  # noqa: E731
    edges = {tuple(sorted((rep(u), rep(w)))) for u, w in G.edges}
    return make_graph(len(order), [e for e in edges if e[0] != e[1]], G.label)


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphMetrics:
    kappa: int
    delta: int
    regular_degree: int | None
    cut: tuple[int, ...] | None = None


def _local_vertex_connectivity(G: Graph, s: int, t: int, limit: int | None = None) -> tuple[int, set[int]]:
    """Max number of internally disjoint s-t paths (s, t nonadjacent), plus a minimum separator.

    Unit-capacity max-flow on the vertex-split digraph: vertex u becomes u_in=2u, u_out=2u+1.
    """
    cap: dict[tuple[int, int], int] = {}
    out: dict[int, list[int]] = {}

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out.setdefault(a, []).append(b)
            out.setdefault(b, []).append(a)
            cap[(b, a)] = cap.get((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = G.n + 1
    for u in range(G.n):
        arc(2 * u, 2 * u + 1, big if u in (s, t) else 1)
    for u, w in G.edges:
        arc(2 * u + 1, 2 * w, big)
        arc(2 * w + 1, 2 * u, big)
    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while limit is None or flow < limit:
        parent = {src: src}
        queue = deque([src])
        while queue and snk not in parent:
            a = queue.popleft()
            for b in out.get(a, ()):
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            break
        b = snk
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    # min cut: vertices whose in-node is reachable but out-node is not
    reach = {src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for b in out.get(a, ()):
            if b not in reach and cap[(a, b)] > 0:
                reach.add(b)
                queue.append(b)
    cut = {u for u in range(G.n) if 2 * u in reach and 2 * u + 1 not in reach}
    return flow, cut


def vertex_connectivity(G: Graph) -> GraphMetrics:
    """Vertex connectivity by Even's algorithm over local max-flows."""
    if G.n < 2:
        raise GraphError("vertex connectivity needs at least 2 vertices")
    delta = G.min_degree()
    reg = G.regular_degree()
    comps = G.components()
    if len(comps) > 1:
        return GraphMetrics(0, delta, reg, ())
    best, best_cut = G.n - 1, None
    i = 0
    while i <= best and i < G.n:
        for j in range(i + 1, G.n):
            if G.has_edge(i, j):
                continue
            k, cut = _local_vertex_connectivity(G, i, j, best)
            if k < best:
                best, best_cut = k, cut
        i += 1
    if best_cut is None and best < G.n - 1:
        best_cut = set()
    return GraphMetrics(best, delta, reg, tuple(sorted(best_cut)) if best_cut is not None else None)


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: dict[int, list[int]] | None = None
    kuratowski: list[Edge] | None = None
    kind: str | None = None  # "K5" or "K3,3"

    def __bool__(self) -> bool:
        return self.planar


def is_planar(G: Graph) -> PlanarityResult:
    planar, cert = nx.check_planarity(G.to_networkx(), counterexample=True)
    if planar:
        rot = {v: list(cert.neighbors_cw_order(v)) for v in range(G.n)}
        return PlanarityResult(True, rotation=rot)
    edges = sorted(tuple(sorted(e)) for e in cert.edges())
    kind = kuratowski_kind(G, edges)
    return PlanarityResult(False, kuratowski=edges, kind=kind)


def kuratowski_kind(G: Graph, edges: Sequence[Edge]) -> str | None:
    """Return "K5" or "K3,3" if ``edges`` form a subdivision of it inside ``G``; else None."""
    if not all(G.has_edge(u, v) for u, v in edges):
        return None
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if any(len(a) < 2 for a in adj.values()):
        return None
    branch = sorted(v for v, a in adj.items() if len(a) >= 3)
    bset = set(branch)
    links: set[tuple[int, int]] = set()
    used_edges: set[tuple[int, int]] = set()
    for b in branch:
        for w in adj[b]:
            prev, cur = b, w
            walk = [tuple(sorted((b, w)))]
            while cur not in bset:
                nxt = [x for x in adj[cur] if x != prev]
                if len(nxt) != 1:
                    return None
                prev, cur = cur, nxt[0]
                walk.append(tuple(sorted((prev, cur))))
            if cur == b:
                return None
            pair = tuple(sorted((b, cur)))
            if pair in links and b < cur:
                return None  # parallel branch paths
            links.add(pair)
            used_edges.update(walk)
    if len(used_edges) != len(edges):
        return None
    degs = [len(adj[b]) for b in branch]
    if len(branch) == 5 and all(d == 4 for d in degs) and len(links) == 10:
        return "K5"
    if len(branch) == 6 and all(d == 3 for d in degs) and len(links) == 9:
        side = {branch[0]: 0}
        stack = [branch[0]]
        while stack:
            u = stack.pop()
            for a, b in links:
                if u in (a, b):
                    w = b if u == a else a
                    if w not in side:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return None
        if sorted(side.values()).count(0) == 3:
            return "K3,3"
    return None


def embedding_faces(G: Graph, rotation: dict[int, list[int]]) -> list[list[int]]:
    """Faces of a rotation system, each as a vertex cycle."""
    emb = nx.PlanarEmbedding()
    for v in range(G.n):
        emb.add_node(v)
        prev = None
        for w in rotation[v]:
            if prev is None:
                emb.add_half_edge(v, w)
            else:
                emb.add_half_edge(v, w, ccw=prev)
            prev = w
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, v in sorted((u, v) for u in range(G.n) for v in rotation[u]):
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.append(list(face))
    return faces


# ---------------------------------------------------------------------------
# cycles, induced subgraphs, isomorphism
# ---------------------------------------------------------------------------

def induced_cycles(G: Graph, max_len: int, min_len: int = 3) -> list[tuple[int, ...]]:
    """All chordless cycles with ``min_len <= length <= max_len``.

    Canonical rotation: smallest vertex first, smaller of its two cycle neighbours second.
    """
    out: list[tuple[int, ...]] = []
    adj = G.adj

    def extend(path: list[int], on: set[int]) -> None:
        last = path[-1]
        s = path[0]
        for w in sorted(adj[last]):
            if w <= s or w in on:
                continue
            # chord check: w may touch only `last`, and `s` when closing
            touches = [p for p in path[1:-1] if p in adj[w]]
            if touches:
                continue
            closes = s in adj[w]
            L = len(path) + 1
            if closes:
                if L >= min_len and L <= max_len and path[1] < w:
                    out.append(tuple(path + [w]))
                continue
            if L < max_len:
                path.append(w)
                on.add(w)
                extend(path, on)
                path.pop()
                on.discard(w)

    for s in range(G.n):
        for a in sorted(adj[s]):
            if a > s:
                extend([s, a], {s, a})
    # triangles: a path s,a with w adjacent to both, handled above (touches empty, closes)
    return sorted(out, key=lambda c: (len(c), c))


def cycle_edges(c: Sequence[int]) -> set[tuple[int, int]]:
    return {tuple(sorted((c[i], c[(i + 1) % len(c)]))) for i in range(len(c))}


def are_isomorphic(G: Graph, H: Graph) -> dict[int, int] | None:
    """A bijection V(G) -> V(H) preserving adjacency, or None."""
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return None
    if _triangle_profile(G) != _triangle_profile(H):
        return None
    gm = nxiso.GraphMatcher(G.to_networkx(), H.to_networkx())
    for mapping in gm.isomorphisms_iter():
        return {int(k): int(v) for k, v in sorted(mapping.items())}
    return None


def _triangle_profile(G: Graph) -> list[int]:
    tri = [0] * G.n
    for u, v in G.edges:
        for w in G.adj[u] & G.adj[v]:
            tri[w] += 1
    return sorted(t // 1 for t in tri)


def contains_induced(G: Graph, pattern: Graph) -> dict[int, int] | None:
    """Injective map V(pattern) -> V(G) realizing ``pattern`` as an induced subgraph."""
    if pattern.n > G.n:
        return None
    if pattern.n == 0:
        return {}
    gm = nxiso.GraphMatcher(G.to_networkx(), pattern.to_networkx())
    for mapping in gm.subgraph_isomorphisms_iter():
        return {int(p): int(g) for g, p in sorted(mapping.items(), key=lambda kv: kv[1])}
    return None


def is_cycle_graph(G: Graph) -> bool:
    return G.n >= 3 and G.regular_degree() == 2 and G.is_connected()


def is_complete(G: Graph) -> bool:
    return G.m == G.n * (G.n - 1) // 2


def bipartition(G: Graph) -> tuple[list[int], list[int]] | None:
    side: dict[int, int] = {}
    for s in range(G.n):
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    a = [v for v in range(G.n) if side[v] == 0]
    b = [v for v in range(G.n) if side[v] == 1]
    return a, b


def complete_bipartite_parts(G: Graph) -> tuple[list[int], list[int]] | None:
    """The two sides if ``G`` is a complete bipartite graph, else None."""
    if not G.is_connected():
        return None
    parts = bipartition(G)
    if parts is None:
        return None
    a, b = parts
    if G.m != len(a) * len(b):
        return None
    return a, b


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":"))
