"""Necessary conditions for d-polytopality, exact low-dimensional decisions, and the range report."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Any, Iterable, Sequence

import networkx as nx

from .graph_core import (
    Graph,
    GraphError,
    are_isomorphic,
    contract,
    embedding_faces,
    is_planar,
    kuratowski_kind,
    star_clique,
    vertex_connectivity,
)


class Status(str, Enum):
    EXCLUDED = "EXCLUDED"
    CONFIRMED = "CONFIRMED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single necessary-condition check.

    ``status`` is "pass", "fail" or "unknown" (budget ran out before a decision).
    """
    name: str
    status: str
    certificate: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def __bool__(self) -> bool:
        return self.passed


# ---------------------------------------------------------------------------
# Balinski
# ---------------------------------------------------------------------------

def balinski_check(G: Graph, d: int) -> CheckResult:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if G.n < d + 1:
        return CheckResult("balinski", "fail", {"kind": "vertex_deficit", "n": G.n, "needed": d + 1})
    if G.n == 1:
        return CheckResult("balinski", "fail", {"kind": "vertex_deficit", "n": 1, "needed": 2})
    met = vertex_connectivity(G)
    if met.kappa >= d:
        return CheckResult("balinski", "pass", {"kappa": met.kappa})
    return CheckResult("balinski", "fail", {"kind": "cut", "kappa": met.kappa, "cut": list(met.cut or ())})


# ---------------------------------------------------------------------------
# principal subdivision property
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PSPWitness:
    """Principal subdivision of K_{d+1} at ``vertex``: ``paths[k]`` joins ``pairs[k]``."""
    vertex: int
    branches: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    paths: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "branches": list(self.branches),
                "paths": [list(p) for p in self.paths]}


def valid_psp_witness(G: Graph, w: PSPWitness, d: int) -> bool:
    """Independent audit of a witness."""
    B = set(w.branches)
    if len(B) != d or not B <= G.adj[w.vertex] or w.vertex in B:
        return False
    if sorted(w.pairs) != sorted(itertools.combinations(sorted(B), 2)):
        return False
    used: set[int] = set()
    for (a, b), p in zip(w.pairs, w.paths):
        if p[0] != a or p[-1] != b or len(set(p)) != len(p):
            return False
        if any(not G.has_edge(x, y) for x, y in zip(p, p[1:])):
            return False
        inner = set(p[1:-1])
        if inner & (used | B | {w.vertex}):
            return False
        used |= inner
    return True


class _Budget(Exception):
    pass


class _PSPSearch:
    def __init__(self, G: Graph, v: int, nodes: int):
        self.G = G
        self.v = v
        self.limit = nodes
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Budget

    def _dist(self, target: int, blocked: set[int]) -> dict[int, int]:
        dist = {target: 0}
        queue = deque([target])
        while queue:
            u = queue.popleft()
            for w in self.G.adj[u]:
                if w not in dist and w not in blocked:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def paths(self, a: int, b: int, blocked: set[int]):
        """Simple a-b paths avoiding ``blocked`` internally, roughly shortest first."""
        if self.G.has_edge(a, b):
            yield (a, b)
            return
        dist = self._dist(b, blocked)
        if not any(u in dist for u in self.G.adj[a]):
            return
        path = [a]
        on_path = {a}

        def rec(u: int):
            self.tick()
            nbrs = sorted((w for w in self.G.adj[u] if w == b or (w in dist and w not in on_path)),
                          key=lambda w: (dist[w], w))
            for w in nbrs:
                if w == b:
                    yield tuple(path) + (b,)
                    continue
                # w must still reach b without revisiting the path
                reach = self._dist(b, blocked | on_path | {w})
                if not any(x in reach for x in self.G.adj[w]):
                    continue
                path.append(w)
                on_path.add(w)
                yield from rec(w)
                path.pop()
                on_path.discard(w)

        yield from rec(a)

    def subset(self, B: Sequence[int]) -> PSPWitness | None:
        pairs = list(itertools.combinations(sorted(B), 2))
        pairs.sort(key=lambda p: (not self.G.has_edge(*p), p))
        chosen: list[tuple[int, ...]] = []
        base_block = set(B) | {self.v}

        def rec(k: int, used: set[int]) -> bool:
            self.tick()
            if k == len(pairs):
                return True
            a, b = pairs[k]
            for p in self.paths(a, b, base_block | used):
                chosen.append(p)
                if rec(k + 1, used | set(p[1:-1])):
                    return True
                chosen.pop()
            return False

        if rec(0, set()):
            return PSPWitness(self.v, tuple(sorted(B)), tuple(pairs), tuple(chosen))
        return None


def psp_at(G: Graph, d: int, v: int, budget_nodes: int = 10**6,
           rng: random.Random | None = None) -> tuple[str, PSPWitness | dict]:
    """("pass", witness) | ("fail", record) | ("unknown", record) for one vertex."""
    nbrs = sorted(G.adj[v])
    if len(nbrs) < d:
        return "fail", {"vertex": v, "reason": "degree", "degree": len(nbrs), "exhausted": True, "nodes": 0}
    subsets = list(itertools.combinations(nbrs, d))
    if rng is not None:
        rng.shuffle(subsets)
    search = _PSPSearch(G, v, budget_nodes)
    try:
        for B in subsets:
            if rng is not None:
                B = list(B)
                rng.shuffle(B)
            w = search.subset(B)
            if w is not None:
                return "pass", w
    except _Budget:
        return "unknown", {"vertex": v, "reason": "budget", "exhausted": False, "nodes": search.nodes}
    return "fail", {"vertex": v, "reason": "exhausted", "exhausted": True, "nodes": search.nodes,
                    "subsets": len(subsets)}


def psp_check(G: Graph, d: int, v: int | None = None, budget_nodes: int = 10**6,
              rng: random.Random | None = None) -> CheckResult:
    """d-PSP at ``v``, or at every vertex (stopping at the first failure)."""
    if d < 2:
        raise ValueError("PSP needs d >= 2")
    witnesses = {}
    unknown = None
    for u in ([v] if v is not None else range(G.n)):
        status, out = psp_at(G, d, u, budget_nodes, rng)
        if status == "fail":
            return CheckResult("psp", "fail", {"d": d, **out})
        if status == "unknown":
            unknown = unknown or out
            continue
        witnesses[u] = out
    if unknown is not None:
        return CheckResult("psp", "unknown", {"d": d, **unknown})
    return CheckResult("psp", "pass", {"d": d, "witnesses": witnesses})


# ---------------------------------------------------------------------------
# separation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclic_facet_count(d: int, n: int) -> int:
    """Number of facets of C_d(n) by Gale's evenness condition."""
    if d < 2 or n <= d:
        raise ValueError("need n > d >= 2")
    count = 0
    for S in itertools.combinations(range(n), d):
        s = set(S)
        ok = True
        for i in range(1, n - 1):
            if i in s and (i - 1) not in s:
                # start of an interior block
                j = i
                while j in s:
                    j += 1
                if j < n and (j - i) % 2:
                    ok = False
                    break
        if ok:
            count += 1
    return count


def separation_check(G: Graph, d: int, cap: int = 8, subset_limit: int = 2_000_000) -> CheckResult:
    """Removing k vertices (d < k <= cap) never leaves more than f_{d-1}(C_d(k)) components.

    Sizes that cannot violate the bound (k * maxdeg / kappa <= bound) are skipped; sizes
    whose subset count exceeds ``subset_limit`` are reported as unchecked.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if cap > G.n:
        raise ValueError("separation cap exceeds the number of vertices")
    cert: dict[str, Any] = {"d": d, "cap": cap, "checked": [], "skipped": [], "unchecked": []}
    if d == 1:
        return CheckResult("separation", "pass", cert)
    kappa = vertex_connectivity(G).kappa if G.n > 1 else 0
    maxdeg = max(G.degrees(), default=0)
    for k in range(d + 1, cap + 1):
        bound = cyclic_facet_count(d, k)
        if kappa > 0 and min(G.n - k, (k * maxdeg) // kappa) <= bound:
            cert["skipped"].append(k)
            continue
        if comb(G.n, k) > subset_limit:
            cert["unchecked"].append(k)
            continue
        for S in itertools.combinations(range(G.n), k):
            c = len(G.components(S))
            if c > bound:
                return CheckResult("separation", "fail",
                                   {"d": d, "cap": cap, "separator": list(S), "components": c, "bound": bound})
        cert["checked"].append(k)
    return CheckResult("separation", "pass", cert)


# ---------------------------------------------------------------------------
# dimension 3
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SteinitzResult:
    yes: bool
    reason: str
    rotation: dict[int, list[int]] | None = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.yes


def steinitz_decide(G: Graph) -> SteinitzResult:
    """3-polytopal iff planar and 3-connected."""
    if G.n < 4:
        return SteinitzResult(False, "too_few_vertices", certificate={"n": G.n})
    pl = is_planar(G)
    if not pl.planar:
        return SteinitzResult(False, "nonplanar",
                              certificate={"kuratowski": [list(e) for e in pl.kuratowski], "kind": pl.kind})
    met = vertex_connectivity(G)
    if met.kappa < 3:
        return SteinitzResult(False, "not_3_connected", pl.rotation,
                              {"kappa": met.kappa, "cut": list(met.cut or ())})
    return SteinitzResult(True, "planar_3_connected", pl.rotation, {"kappa": met.kappa})


def whitney_2faces(G: Graph) -> list[tuple[int, ...]]:
    """2-faces of the 3-polytope realizing G, as canonically rotated vertex cycles."""
    st = steinitz_decide(G)
    if not st:
        raise GraphError(f"graph is not 3-polytopal ({st.reason})")
    out = []
    for f in embedding_faces(G, st.rotation):
        i = f.index(min(f))
        c = f[i:] + f[:i]
        if c[1] > c[-1]:
            c = [c[0]] + c[1:][::-1]
        out.append(tuple(c))
    return sorted(out, key=lambda c: (len(c), c))


# ---------------------------------------------------------------------------
# star-clique reversal
# ---------------------------------------------------------------------------

def reversible_cliques(G: Graph, size: int | None = None) -> list[tuple[int, ...]]:
    """Cliques K (|K| >= 3) whose vertices each have exactly one neighbour outside K, all distinct."""
    found = set()
    for u in range(G.n):
        k = G.degree(u)
        if k < 3 or (size is not None and k != size):
            continue
        for w in G.adj[u]:
            K = (G.adj[u] - {w}) | {u}
            if any(G.degree(x) != k for x in K):
                continue
            if any(not (K - {x}) <= G.adj[x] for x in K):
                continue
            outside = [next(iter(G.adj[x] - K)) for x in K]
            if len(set(outside)) != len(outside) or set(outside) & K:
                continue
            found.add(tuple(sorted(K)))
    return sorted(found)


def reverse_star_clique(G: Graph, size: int | None = None) -> list[tuple[tuple[int, ...], Graph]]:
    """Every reversible clique with its contraction (a graph whose star-clique gives back G)."""
    return [(K, contract(G, K)) for K in reversible_cliques(G, size)]


@dataclass(frozen=True)
class StarCliqueChain:
    """Contraction steps from G down to ``base``, which is 4-regular and 3-polytopal."""
    steps: tuple[tuple[int, ...], ...]
    base: Graph

    def to_json(self) -> dict:
        return {"steps": [list(s) for s in self.steps], "base": self.base.to_json()}


def star_clique_chain(G: Graph, max_states: int = 2000) -> StarCliqueChain | None:
    """Search contractions of K4's (inverse star-clique at degree-4 vertices) for a
    4-regular 3-polytopal graph."""
    start = (G, ())
    queue = deque([start])
    seen = 0
    while queue and seen < max_states:
        H, steps = queue.popleft()
        seen += 1
        if steps and H.regular_degree() == 4 and steinitz_decide(H):
            return StarCliqueChain(steps, H)
        for K, C in reverse_star_clique(H, size=4):
            queue.append((C, steps + (K,)))
            break  # contractions of disjoint cliques commute; one order suffices
    return None


def replay_star_clique_chain(G: Graph, chain: StarCliqueChain) -> bool:
    """Re-expand the chain from its base and compare with G."""
    H = G
    for K in chain.steps:
        if K not in reversible_cliques(H, size=4):
            return False
        C = contract(H, K)
        back = star_clique(C, K[0])
        if are_isomorphic(back, H) is None:
            return False
        H = C
    return H.adj == chain.base.adj and H.regular_degree() == 4 and bool(steinitz_decide(H))


# ---------------------------------------------------------------------------
# verdicts and the range report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionVerdict:
    d: int
    status: Status
    reason: str
    certificate: dict | None = None
    supporting: tuple[dict, ...] = ()
    witness: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.status is Status.UNKNOWN:
            if self.certificate is not None:
                raise ValueError("UNKNOWN verdicts carry no certificate")
        elif self.certificate is None:
            raise ValueError(f"{self.status.value} verdict needs a certificate")

    def to_json(self) -> dict:
        out = {"d": self.d, "status": self.status.value, "reason": self.reason, "certificate": self.certificate}
        if self.supporting:
            out["supporting"] = list(self.supporting)
        return out


@dataclass(frozen=True)
class ObstructionReport:
    graph: Graph
    verdicts: tuple[DimensionVerdict, ...]

    @property
    def delta(self) -> int:
        return self.graph.min_degree()

    def verdict(self, d: int) -> DimensionVerdict | None:
        return next((v for v in self.verdicts if v.d == d), None)

    @property
    def confirmed(self) -> list[int]:
        return [v.d for v in self.verdicts if v.status is Status.CONFIRMED]

    @property
    def not_excluded(self) -> list[int]:
        return [v.d for v in self.verdicts if v.status is not Status.EXCLUDED]

    @property
    def unknown(self) -> list[int]:
        return [v.d for v in self.verdicts if v.status is Status.UNKNOWN]

    @property
    def exact(self) -> bool:
        return not self.unknown

    def to_json(self) -> dict:
        return {"graph": {**self.graph.to_json(), "graph6": self.graph.to_graph6() if self.graph.n else ""},
                "verdicts": [v.to_json() for v in self.verdicts],
                "confirmed": self.confirmed, "open": self.not_excluded}

    def range_string(self) -> str:
        if self.exact:
            return "{" + ",".join(map(str, self.confirmed)) + "}" if self.confirmed else "{}"
        return "{" + ",".join(map(str, self.confirmed)) + "} <= range <= {" + ",".join(map(str, self.not_excluded)) + "}"


@dataclass(frozen=True)
class RangeBudget:
    nodes: int = 10**7
    psp_nodes: int = 10**6
    sep_cap: int = 8
    hull_cap: int = 64
    candidate_nodes: int = 10**6
    chain_states: int = 2000


def _polytope_cert(P, how: str) -> dict:
    return {"construction": how, "polytope": P.name, "hash": P.content_hash(), "dim": P.dim,
            "points": [[str(x) for x in p] for p in P.points]}


def _excluded(d: int, rule: str, cert: dict, witness: Any = None) -> DimensionVerdict:
    return DimensionVerdict(d, Status.EXCLUDED, rule, cert, witness=witness)


def polytopality_range(G: Graph, budget: RangeBudget | None = None) -> ObstructionReport:
    """Verdict for every d in 1..min degree, from rules R1-R7 and the facet search."""
    from . import simple_check as sc
    from .confirm import catalog_realizations, polygon_for, realize_3

    budget = budget or RangeBudget()
    delta = G.min_degree() if G.n > 1 else 0
    out: dict[int, DimensionVerdict] = {}

    def todo() -> list[int]:
        return [d for d in range(1, delta + 1) if d not in out]

    # R1, R2: exact in dimensions 1 and 2
    if delta >= 1:
        if G.n == 2 and G.m == 1:
            P = catalog_realizations(G, [1], budget.hull_cap)[1]
            out[1] = DimensionVerdict(1, Status.CONFIRMED, "R1", _polytope_cert(P, "segment"), witness=P)
        else:
            out[1] = _excluded(1, "R1", {"fact": "the only 1-polytopal graph is K2", "n": G.n, "m": G.m})
    if delta >= 2:
        from .graph_core import is_cycle_graph
        if is_cycle_graph(G):
            P = polygon_for(G)
            out[2] = DimensionVerdict(2, Status.CONFIRMED, "R2", _polytope_cert(P, "polygon"), witness=P)
        else:
            out[2] = _excluded(2, "R2", {"fact": "2-polytopal graphs are exactly cycles",
                                         "degrees": sorted(set(G.degrees())),
                                         "components": len(G.components())})
    # R3: Steinitz decides d = 3; planar graphs have no realization with d >= 4
    if delta >= 3:
        st = steinitz_decide(G)
        if st:
            P = realize_3(G)
            out[3] = DimensionVerdict(3, Status.CONFIRMED, "R3", _polytope_cert(P, "tutte_lifting"), witness=P)
            for d in todo():
                if d >= 4:
                    out[d] = _excluded(d, "R3", {"planar": True, "fact": "a d-polytope graph with d >= 4 "
                                                 "contains a subdivision of K5, so it is not planar"})
        else:
            out[3] = _excluded(3, "R3", {"steinitz": st.reason, **st.certificate})
    # R6: structural non-polytopality rules
    rest = todo()
    if rest:
        parts = None
        from .graph_core import complete_bipartite_parts
        kb = complete_bipartite_parts(G)
        if kb and min(len(kb[0]), len(kb[1])) >= 3:
            cert = {"parts": [kb[0], kb[1]], "fact": "K_{m,n} with m, n >= 3 is not polytopal"}
            for d in rest:
                out[d] = _excluded(d, "R6a", cert)
        rest = todo()
        factors = sc.factorize(G) if rest else [G]
        if rest and len(factors) == 2:
            k2 = [F for F in factors if F.n == 2 and F.m == 1]
            other = [F for F in factors if not (F.n == 2 and F.m == 1)] or k2[1:]
            if k2 and other:
                H = other[0]
                kb = complete_bipartite_parts(H)
                if kb and len(kb[0]) == len(kb[1]) >= 3:
                    cert = {"factors": [F.to_json() for F in factors],
                            "fact": "K2 x K_{n,n} is not polytopal for n >= 3"}
                    for d in rest:
                        out[d] = _excluded(d, "R6b", cert)
        rest = todo()
        if rest and any(G.degree(v) == 4 for v in range(G.n)):
            chain = star_clique_chain(G, budget.chain_states)
            if chain is not None:
                cert = {"chain": chain.to_json(),
                        "fact": "star-clique operations applied to a 4-regular 3-polytopal graph "
                                "never produce a polytopal graph"}
                for d in rest:
                    out[d] = _excluded(d, "R6c", cert, witness=chain)
        rest = todo()
        if rest and len(factors) >= 2:
            k2 = [i for i, F in enumerate(factors) if F.n == 2 and F.m == 1]
            if k2:
                others = [F for i, F in enumerate(factors) if i != k2[0]]
                H = sc.multiply(others)
                if H.regular_degree() == 3 and not steinitz_decide(H):
                    cert = {"factors": [F.to_json() for F in factors],
                            "fact": "K2 x H is not polytopal when H is 3-regular and not 3-polytopal"}
                    for d in rest:
                        out[d] = _excluded(d, "R6d", cert)
        rest = todo()
        r = G.regular_degree()
        if r in rest and len(factors) >= 2:
            res = sc.product_factor_check(G, budget=budget.psp_nodes)
            if res.excluded:
                out[r] = _excluded(r, "R6e", res.certificate)
    # R4: Balinski, PSP, separation
    for d in todo():
        b = balinski_check(G, d)
        if b.failed:
            out[d] = _excluded(d, "R4-balinski", b.certificate)
            continue
        if d >= 2:
            p = psp_check(G, d, budget_nodes=budget.psp_nodes)
            if p.failed:
                out[d] = _excluded(d, "R4-psp", p.certificate)
                continue
        s = separation_check(G, d, min(budget.sep_cap, G.n))
        if s.failed:
            out[d] = _excluded(d, "R4-separation", s.certificate)
    # R5: simple mode at d = delta for regular graphs
    r = G.regular_degree()
    if r is not None and r in todo() and r >= 4:
        res = sc.facet_complex_search(G, r, budget=budget.nodes, mode="simple")
        if res.status == "REFUTED":
            out[r] = _excluded(r, "R5-simple", res.to_json(), witness=res)
    # R7: constructive confirmations
    rest = todo()
    if rest:
        for d, P in sorted(catalog_realizations(G, rest, budget.hull_cap).items()):
            out[d] = DimensionVerdict(d, Status.CONFIRMED, "R7", _polytope_cert(P, P.name), witness=P)
    # facet search in dimension 4
    if 4 in todo() and G.regular_degree() != 4:
        res = sc.facet_complex_search(G, 4, budget=budget.nodes, mode="facet4",
                                      candidate_budget=budget.candidate_nodes)
        if res.status == "REFUTED":
            out[4] = _excluded(4, "facet-search", res.to_json(), witness=res)
    for d in todo():
        out[d] = DimensionVerdict(d, Status.UNKNOWN, "open")
    verdicts = []
    for d in range(1, delta + 1):
        v = out[d]
        if v.status is Status.EXCLUDED:
            v = DimensionVerdict(v.d, v.status, v.reason, v.certificate, _supporting(G, d, v.reason, budget),
                                 v.witness)
        verdicts.append(v)
    return ObstructionReport(G, tuple(verdicts))


def _supporting(G: Graph, d: int, primary: str, budget: RangeBudget) -> tuple[dict, ...]:
    """Cheap extra certificates for an exclusion (Balinski and separation failures)."""
    extra = []
    if d >= 2 and G.n > d and not primary.startswith("R4-balinski"):
        b = balinski_check(G, d)
        if b.failed:
            extra.append({"rule": "R4-balinski", **b.certificate})
    if d >= 2 and G.n > d and not primary.startswith("R4-separation"):
        s = separation_check(G, d, min(budget.sep_cap, G.n))
        if s.failed:
            extra.append({"rule": "R4-separation", **s.certificate})
    if d >= 4 and G.regular_degree() == d and primary != "R5-simple":
        from .simple_check import facet_complex_search
        res = facet_complex_search(G, d, budget=budget.nodes, mode="simple")
        if res.status == "REFUTED":
            extra.append({"rule": "R5-simple", **res.to_json()})
    return tuple(extra)


# ---------------------------------------------------------------------------
# independent re-checking of certificates
# ---------------------------------------------------------------------------

def _factors_from(cert: dict) -> list[Graph]:
    from .graph_core import from_json
    return [from_json(f) for f in cert["factors"]]


def verify_verdict(G: Graph, v: DimensionVerdict, budget: RangeBudget | None = None) -> tuple[bool, str]:
    """Re-derive a verdict from its certificate without trusting the code that produced it."""
    from . import simple_check as sc
    from .geometry import polytope_from_json, verify_graph
    from .graph_core import complete_bipartite_parts, from_json, is_cycle_graph

    budget = budget or RangeBudget()
    c = v.certificate or {}
    d = v.d
    if v.status is Status.UNKNOWN:
        return True, "unknown"
    if v.status is Status.CONFIRMED:
        P = v.witness if v.witness is not None else polytope_from_json({"points": c["points"]})
        chk = verify_graph(P, G)
        if P.dim != d:
            return False, "polytope has the wrong dimension"
        return chk.ok, chk.reason or "skeleton isomorphic"
    r = v.reason
    if r == "R1":
        return not (G.n == 2 and G.m == 1), "not K2"
    if r == "R2":
        return not is_cycle_graph(G), "not a cycle"
    if r == "R3" and d == 3:
        why = c.get("steinitz")
        if why == "nonplanar":
            return kuratowski_kind(G, [tuple(e) for e in c["kuratowski"]]) is not None, "Kuratowski subdivision"
        if why == "not_3_connected":
            cut = c["cut"]
            return len(cut) < 3 and (len(G.components(cut)) > 1 or G.n - len(cut) <= 1), "small cut"
        return G.n < 4, "too few vertices"
    if r == "R3":
        return bool(is_planar(G).planar) and d >= 4, "planar"
    if r == "R6a":
        parts = complete_bipartite_parts(G)
        return parts is not None and min(map(len, parts)) >= 3, "complete bipartite"
    if r in ("R6b", "R6d", "R6e"):
        fs = _factors_from(c) if "factors" in c else None
        if r == "R6e":
            F = from_json(c["factor_graph"])
            ok = sc.simply_refuted(F, budget.psp_nodes) is not None and G.regular_degree() == d
            return ok and any(are_isomorphic(F, H) is not None for H in sc.factorize(G)), "refuted factor"
        if are_isomorphic(sc.multiply(fs), G) is None:
            return False, "factors do not multiply to G"
        k2 = [F for F in fs if F.n == 2 and F.m == 1]
        rest = [F for F in fs if not (F.n == 2 and F.m == 1)] or k2[1:]
        H = sc.multiply(rest)
        if r == "R6b":
            parts = complete_bipartite_parts(H)
            return bool(k2) and parts is not None and len(parts[0]) == len(parts[1]) >= 3, "K2 x K_nn"
        return bool(k2) and H.regular_degree() == 3 and not steinitz_decide(H), "K2 x non-polytopal cubic"
    if r == "R6c":
        chain = v.witness
        if chain is None:
            chain = StarCliqueChain(tuple(tuple(s) for s in c["chain"]["steps"]), from_json(c["chain"]["base"]))
        return replay_star_clique_chain(G, chain), "star-clique chain"
    if r == "R4-balinski":
        if c["kind"] == "vertex_deficit":
            return G.n < d + 1, "vertex deficit"
        return len(c["cut"]) < d and len(G.components(c["cut"])) > 1, "cut"
    if r == "R4-psp":
        status, _ = psp_at(G, d, c["vertex"], budget.psp_nodes)
        return status == "fail", "psp exhausted"
    if r == "R4-separation":
        S = c["separator"]
        return len(G.components(S)) > cyclic_facet_count(d, len(S)), "separator"
    if r in ("R5-simple", "facet-search"):
        res = v.witness
        if res is None:
            mode = "simple" if r == "R5-simple" else "facet4"
            res = sc.facet_complex_search(G, d, budget=budget.nodes, mode=mode,
                                          candidate_budget=budget.candidate_nodes)
            if res.transcript_hash != c.get("transcript_sha256"):
                return False, "transcript hash differs"
        ok, msg = sc.replay_transcript(G, res, d, mode="simple" if r == "R5-simple" else "facet4")
        return ok, msg
    return False, f"unknown rule {r}"


def verify_report(G: Graph, report: ObstructionReport, budget: RangeBudget | None = None) -> list[tuple[int, bool, str]]:
    return [(v.d, *verify_verdict(G, v, budget)) for v in report.verdicts]
