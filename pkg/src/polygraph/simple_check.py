"""Simple-polytopality obstructions, facet-complex search, and the product factor rule."""
from __future__ import annotations

import hashlib
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph_core import (
    Graph,
    GraphError,
    are_isomorphic,
    cartesian_product,
    complete_bipartite,
    contains_induced,
    cycle_edges,
    induced_cycles,
    make_graph,
    petersen,
)
from .obstructions import steinitz_decide, whitney_2faces

FACE2 = "FACE2"
FACE3 = "FACE3"

Cycle = tuple[int, ...]


def _canon_cycle(c: Sequence[int]) -> Cycle:
    c = list(c)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[1] > c[-1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


@dataclass(frozen=True)
class CandidateFace:
    """A possible face: an induced chordless cycle or an induced 3-polytopal subgraph."""
    vertices: frozenset[int]
    face_kind: str
    two_faces: tuple[Cycle, ...] = ()
    stats: tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]] = ((), ())

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def has_triangle(self) -> bool:
        return any(len(c) == 3 for c in self.two_faces)

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices), "kind": self.face_kind,
                "two_faces": [list(c) for c in self.two_faces]}


def _face3(G: Graph, vs: Iterable[int]) -> CandidateFace | None:
    """The candidate on ``vs`` if G[vs] is planar and 3-connected."""
    H, back = G.induced(vs)
    if not steinitz_decide(H):
        return None
    faces = tuple(sorted((_canon_cycle([back[x] for x in f]) for f in whitney_2faces(H)),
                         key=lambda c: (len(c), c)))
    vk = Counter(H.degrees())
    pk = Counter(len(f) for f in faces)
    return CandidateFace(frozenset(back), FACE3, faces, (tuple(sorted(vk.items())), tuple(sorted(pk.items()))))


# ---------------------------------------------------------------------------
# induced short cycles
# ---------------------------------------------------------------------------

def _require_regular(G: Graph, d: int) -> None:
    r = G.regular_degree()
    if r is None:
        raise GraphError("graph is not regular")
    if r != d:
        raise GraphError(f"graph is {r}-regular, not {d}-regular")


def _intersection_problem(a: Cycle, b: Cycle, G: Graph) -> str | None:
    """Why two 2-faces cannot coexist, or None if they meet in the empty set, a vertex or an edge."""
    s = set(a) & set(b)
    if len(s) <= 1:
        return None
    if len(s) == 2:
        u, v = sorted(s)
        return None if G.has_edge(u, v) else "share_nonadjacent_pair"
    shared = cycle_edges(a) & cycle_edges(b)
    if len(shared) >= 2:
        return "share_two_edges"
    return "share_three_vertices"


@dataclass(frozen=True)
class Required2Faces:
    cycles: tuple[Cycle, ...]
    conflict: dict | None = None

    @property
    def ok(self) -> bool:
        return self.conflict is None


def required_2faces(G: Graph, d: int, strict: bool = True) -> Required2Faces:
    """Induced 3-, 4- and 5-cycles; each one is a 2-face of any simple realization.

    With ``strict=False`` the regularity precondition is not enforced, which is handy
    for spotting conflicts in small non-regular patterns such as K_{2,3}.
    """
    if strict:
        _require_regular(G, d)
    cycles = tuple(induced_cycles(G, 5))
    for a, b in itertools.combinations(cycles, 2):
        why = _intersection_problem(a, b, G)
        if why:
            return Required2Faces(cycles, {"kind": why, "cycles": [list(a), list(b)],
                                           "shared": sorted(set(a) & set(b))})
    return Required2Faces(cycles)


def simple_obstructions(G: Graph, d: int) -> dict | None:
    """First failing obstruction as {"id", "witness"}; None if all three checks pass.

    (i) a separating induced 3/4/5-cycle; (ii) two induced 4/5-cycles sharing 3 vertices;
    (iii) an induced K_{2,3} or Petersen graph.
    """
    _require_regular(G, d)
    short = induced_cycles(G, 5)
    for c in short:
        if len(G.components(c)) > 1:
            return {"id": "separating_cycle", "witness": list(c)}
    long = [c for c in short if len(c) >= 4]
    for a, b in itertools.combinations(long, 2):
        if len(set(a) & set(b)) >= 3:
            return {"id": "share_three_vertices", "witness": [list(a), list(b)]}
    for name, pat in (("induced_K23", complete_bipartite(2, 3)), ("induced_petersen", petersen())):
        m = contains_induced(G, pat)
        if m is not None:
            return {"id": name, "witness": [m[i] for i in range(pat.n)]}
    return None


# ---------------------------------------------------------------------------
# candidate 3-faces
# ---------------------------------------------------------------------------

class BudgetExceeded(Exception):
    def __init__(self, used: int):
        super().__init__(f"budget of {used} nodes exhausted")
        self.used = used


def _connected_sets(G: Graph, cap: int, budget: int) -> Iterator[frozenset[int]]:
    """Connected vertex sets of size >= 4 and <= cap, each exactly once (ESU enumeration)."""
    used = 0
    for v in range(G.n):
        stack = [(frozenset([v]), frozenset(w for w in G.adj[v] if w > v))]
        while stack:
            used += 1
            if used > budget:
                raise BudgetExceeded(used)
            sub, ext = stack.pop()
            if len(sub) >= 4:
                yield sub
            if len(sub) == cap:
                continue
            ext = sorted(ext, reverse=True)
            while ext:
                w = ext.pop()
                nb = set()
                for x in G.adj[w]:
                    if x > v and x not in sub and all(x not in G.adj[y] and x != y for y in sub):
                        nb.add(x)
                stack.append((sub | {w}, frozenset(ext) | nb))


def enumerate_candidate_facets(G: Graph, size_cap: int, budget: int = 10**6) -> list[CandidateFace]:
    """Induced planar 3-connected subgraphs with at most ``size_cap`` vertices.

    Sorted by size descending, then vertex list.  A triangle-free 3-polytope has at least
    8 vertices, which filters small triangle-free sets before the planarity test.
    """
    if size_cap > G.n:
        raise ValueError("size cap exceeds the number of vertices")
    out = []
    for S in _connected_sets(G, size_cap, budget):
        if any(len(G.adj[x] & S) < 3 for x in S):
            continue
        if len(S) < 8 and not any(G.adj[x] & G.adj[y] & S for x in S for y in G.adj[x] & S):
            continue
        f = _face3(G, S)
        if f is not None:
            out.append(f)
    out.sort(key=lambda f: (-f.size, sorted(f.vertices)))
    return out


# ---------------------------------------------------------------------------
# facet-complex search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FacetComplexCandidate:
    chosen: tuple[CandidateFace, ...]
    incidence: dict

    def facets(self) -> list[frozenset[int]]:
        return [f.vertices for f in self.chosen]


@dataclass
class SearchOutcome:
    """REALIZABLE-COMPLEX | REFUTED | UNKNOWN with the search record."""
    status: str
    mode: str
    d: int
    nodes: int
    transcript: list[dict] = field(default_factory=list)
    complex: FacetComplexCandidate | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def transcript_hash(self) -> str:
        return transcript_digest(self.transcript)

    def to_json(self) -> dict:
        out = {"status": self.status, "mode": self.mode, "d": self.d, "nodes": self.nodes,
               "transcript_sha256": self.transcript_hash, **self.certificate}
        if self.complex is not None:
            out["faces"] = [sorted(f) for f in self.complex.facets()]
        return out


def transcript_digest(lines: Sequence[dict]) -> str:
    h = hashlib.sha256()
    for rec in lines:
        h.update(json.dumps(rec, sort_keys=True, separators=(",", ":")).encode())
        h.update(b"\n")
    return h.hexdigest()


def transcript_jsonl(outcome: SearchOutcome) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in outcome.transcript)


# -- d = 4 mode ----------------------------------------------------------

def _meet_ok(A: CandidateFace, B: CandidateFace, G: Graph) -> bool:
    """Two 3-faces meet in nothing, a vertex, an edge, or a common 2-face."""
    I = A.vertices & B.vertices
    if len(I) <= 1:
        return True
    if len(I) == 2:
        u, v = sorted(I)
        return G.has_edge(u, v)
    fa = {frozenset(c) for c in A.two_faces}
    fb = {frozenset(c) for c in B.two_faces}
    return I in fa and I in fb


def _open_item(G: Graph, chosen: Sequence[CandidateFace]):
    """First 2-face lying in a single chosen facet, else first edge in fewer than 3 facets."""
    count: Counter = Counter()
    for F in chosen:
        for c in F.two_faces:
            count[c] += 1
    single = sorted((c for c, k in count.items() if k == 1), key=lambda c: (len(c), c))
    if single:
        return ("face2", single[0])
    for u, v in G.edges:
        if sum(1 for F in chosen if u in F.vertices and v in F.vertices) < 3:
            return ("edge", (u, v))
    return None


def _contains(F: CandidateFace, item) -> bool:
    kind, x = item
    if kind == "face2":
        return x in F.two_faces
    return x[0] in F.vertices and x[1] in F.vertices


def _violation4(G: Graph, chosen: Sequence[CandidateFace], F: CandidateFace) -> str | None:
    if F in chosen:
        return "DUP"
    for A in chosen:
        if not _meet_ok(A, F, G):
            return "C1"
    count: Counter = Counter()
    for A in chosen:
        for c in A.two_faces:
            count[c] += 1
    if any(count[c] >= 2 for c in F.two_faces):
        return "C2"
    if F.size < 8 and not F.has_triangle:
        return "L8"
    return None


def _search4(G: Graph, cands: list[CandidateFace], budget: int) -> SearchOutcome:
    transcript: list[dict] = []
    nodes = 0
    found: list[CandidateFace] | None = None

    def rec(chosen: list[CandidateFace], node_id: int) -> bool:
        nonlocal nodes, found
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        item = _open_item(G, chosen)
        if item is None:
            found = list(chosen)
            transcript.append({"node": node_id, "action": "complete"})
            return True
        transcript.append({"node": node_id, "open": [item[0], list(item[1])],
                           "chosen": [cands.index(F) for F in chosen]})
        for i, F in enumerate(cands):
            if not _contains(F, item):
                continue
            why = _violation4(G, chosen, F)
            if why:
                transcript.append({"node": node_id, "cand": i, "action": "prune", "constraint": why})
                continue
            child = len(transcript)
            transcript.append({"node": node_id, "cand": i, "action": "descend", "child": child})
            if rec(chosen + [F], child):
                return True
        transcript.append({"node": node_id, "action": "dead"})
        return False

    try:
        ok = rec([], 0)
    except BudgetExceeded:
        return SearchOutcome("UNKNOWN", "facet4", 4, nodes, certificate={"budget_used": nodes})
    if ok:
        inc: dict = {}
        for k, F in enumerate(found):
            for c in F.two_faces:
                inc.setdefault(c, []).append(k)
        return SearchOutcome("REALIZABLE-COMPLEX", "facet4", 4, nodes, transcript,
                             FacetComplexCandidate(tuple(found), inc))
    return SearchOutcome("REFUTED", "facet4", 4, nodes, transcript,
                         certificate={"candidates": len(cands)})


# -- simple mode -------------------------------------------------------------

Angle = tuple[int, int, int]  # (a, v, b) with a < b, both neighbours of v


def _angles_of(c: Cycle) -> list[Angle]:
    k = len(c)
    out = []
    for i in range(k):
        a, v, b = c[i - 1], c[i], c[(i + 1) % k]
        out.append((min(a, b), v, max(a, b)))
    return out


def _cycles_through(G: Graph, angle: Angle, max_len: int) -> list[Cycle]:
    """Induced cycles containing the path a-v-b, sorted by length then vertices."""
    a, v, b = angle
    if G.has_edge(a, b):
        return [_canon_cycle((a, v, b))]
    out = []
    path = [a, v, b]
    on = set(path)
    touch = [0] * G.n  # number of interior path vertices adjacent to each vertex
    for x in G.adj[v]:
        touch[x] += 1

    def rec():
        last = path[-1]
        if len(path) >= max_len:
            return
        for x in G.adj[last]:
            touch[x] += 1
        for y in sorted(G.adj[last]):
            # y may touch only the last vertex, and the first one when it closes the cycle
            if y in on or touch[y] > 1:
                continue
            path.append(y)
            if G.has_edge(y, a):
                out.append(_canon_cycle(path))
            else:
                on.add(y)
                rec()
                on.discard(y)
            path.pop()
        for x in G.adj[last]:
            touch[x] -= 1

    rec()
    return sorted(set(out), key=lambda c: (len(c), c))


def _face_ok(G: Graph, chosen: Sequence[Cycle], c: Cycle, covered: dict) -> str | None:
    if any(x in covered for x in _angles_of(c)):
        return "ANGLE"
    for d in chosen:
        if _intersection_problem(c, d, G):
            return "C1"
    return None


def three_faces(G: Graph, d: int, faces: Sequence[Cycle]) -> tuple[list[frozenset[int]], dict | None]:
    """3-faces spanned by every triple of edges at a vertex, given a complete angle cover.

    Returns the list of 3-faces and the first violated condition, if any (S4).
    """
    by_angle = {}
    for c in faces:
        for x in _angles_of(c):
            by_angle[x] = c
    seen: dict[frozenset, frozenset] = {}
    result = []
    for v in range(G.n):
        for trio in itertools.combinations(sorted(G.adj[v]), 3):
            start = frozenset(frozenset((v, w)) for w in trio)
            if start in seen:
                continue
            edges = set(start)
            fcs: set[Cycle] = set()
            changed = True
            while changed:
                changed = False
                at: dict[int, set[int]] = {}
                for e in edges:
                    x, y = tuple(e)
                    at.setdefault(x, set()).add(y)
                    at.setdefault(y, set()).add(x)
                for x, nb in at.items():
                    if len(nb) > 3:
                        return result, {"id": "S4", "why": "vertex with more than 3 edges in a 3-face",
                                        "vertex": x, "seed": [v, *trio]}
                    for p, q in itertools.combinations(sorted(nb), 2):
                        c = by_angle[(p, x, q)]
                        if c not in fcs:
                            fcs.add(c)
                            for e in cycle_edges(c):
                                fe = frozenset(e)
                                if fe not in edges:
                                    edges.add(fe)
                                    changed = True
            verts = frozenset(x for e in edges for x in e)
            at = Counter(x for e in edges for x in e)
            H, back = G.induced(verts)
            if any(k != 3 for k in at.values()) or H.m != len(edges):
                return result, {"id": "S4", "why": "3-face is not a 3-regular induced subgraph",
                                "vertices": sorted(verts), "seed": [v, *trio]}
            if not steinitz_decide(H):
                return result, {"id": "S4", "why": "3-face is not 3-polytopal", "vertices": sorted(verts),
                                "seed": [v, *trio]}
            whit = {_canon_cycle([back[x] for x in f]) for f in whitney_2faces(H)}
            if whit != fcs:
                return result, {"id": "S4", "why": "3-face has 2-faces other than the chosen ones",
                                "vertices": sorted(verts), "seed": [v, *trio]}
            for x in verts:
                nb = sorted(y for y in G.adj[x] if frozenset((x, y)) in edges)
                seen[frozenset(frozenset((x, y)) for y in nb)] = verts
            if verts not in result:
                result.append(verts)
    for A, B in itertools.combinations(result, 2):
        I = A & B
        if len(I) >= 3 and not any(set(c) == I for c in faces):
            return result, {"id": "S4", "why": "two 3-faces meet improperly", "vertices": [sorted(A), sorted(B)]}
        if len(I) == 2 and not G.has_edge(*sorted(I)):
            return result, {"id": "S4", "why": "two 3-faces meet improperly", "vertices": [sorted(A), sorted(B)]}
    return sorted(result, key=lambda s: (len(s), sorted(s))), None


def _search_simple(G: Graph, d: int, budget: int) -> SearchOutcome:
    req = required_2faces(G, d)
    if not req.ok:
        return SearchOutcome("REFUTED", "simple", d, 0,
                             [{"node": 0, "action": "conflict", "constraint": "S1", **req.conflict}],
                             certificate={"constraint": "S1", "conflict": req.conflict})
    bad = simple_obstructions(G, d)
    if bad is not None:
        return SearchOutcome("REFUTED", "simple", d, 0,
                             [{"node": 0, "action": "obstruction", "constraint": "S2", **bad}],
                             certificate={"constraint": "S2", "obstruction": bad})
    transcript: list[dict] = []
    nodes = 0
    found: tuple[list[Cycle], list[frozenset[int]]] | None = None
    chosen = list(req.cycles)
    covered: dict[Angle, Cycle] = {}
    for c in chosen:
        for x in _angles_of(c):
            covered[x] = c
    all_angles = sorted((min(a, b), v, max(a, b)) for v in range(G.n)
                        for a, b in itertools.combinations(sorted(G.adj[v]), 2))
    transcript.append({"node": 0, "action": "seed", "required": len(chosen)})

    def rec(node_id: int) -> bool:
        nonlocal nodes, found
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        open_angle = next((x for x in all_angles if x not in covered), None)
        if open_angle is None:
            faces3, why = three_faces(G, d, chosen)
            if why:
                transcript.append({"node": node_id, "action": "prune", "constraint": "S4", "detail": why})
                return False
            found = (list(chosen), faces3)
            transcript.append({"node": node_id, "action": "complete"})
            return True
        transcript.append({"node": node_id, "open": list(open_angle),
                           "chosen": sorted(list(c) for c in chosen[len(req.cycles):])})
        for c in _cycles_through(G, open_angle, G.n):
            why = _face_ok(G, chosen, c, covered)
            if why:
                transcript.append({"node": node_id, "cycle": list(c), "action": "prune", "constraint": why})
                continue
            child = len(transcript)
            transcript.append({"node": node_id, "cycle": list(c), "action": "descend", "child": child})
            chosen.append(c)
            for x in _angles_of(c):
                covered[x] = c
            if rec(child):
                return True
            chosen.pop()
            for x in _angles_of(c):
                del covered[x]
        transcript.append({"node": node_id, "action": "dead"})
        return False

    try:
        ok = rec(0)
    except BudgetExceeded:
        return SearchOutcome("UNKNOWN", "simple", d, nodes, certificate={"budget_used": nodes})
    if ok:
        faces2, faces3 = found
        cands = tuple(CandidateFace(frozenset(s), FACE3) for s in faces3)
        inc = {c: [k for k, s in enumerate(faces3) if set(c) <= s] for c in faces2}
        out = SearchOutcome("REALIZABLE-COMPLEX", "simple", d, nodes, transcript,
                            FacetComplexCandidate(cands, inc))
        out.certificate = {"two_faces": [list(c) for c in sorted(faces2, key=lambda c: (len(c), c))]}
        return out
    return SearchOutcome("REFUTED", "simple", d, nodes, transcript, certificate={"constraint": "exhausted"})


def facet_complex_search(G: Graph, d: int, budget: int = 10**7, mode: str = "auto",
                         size_cap: int | None = None, candidate_budget: int = 10**6) -> SearchOutcome:
    """Backtracking search for a face structure compatible with G in dimension d.

    ``mode`` is "facet4" (candidate 3-faces, d = 4), "simple" (angle cover by 2-faces,
    d = regular degree) or "auto" (simple whenever d is the regular degree).
    """
    reg = G.regular_degree()
    if mode == "auto":
        mode = "simple" if reg == d else "facet4"
    if mode == "simple":
        if reg != d:
            raise GraphError("simple mode needs d equal to the regular degree")
        return _search_simple(G, d, budget)
    if mode != "facet4" or d != 4:
        raise GraphError(f"no facet search mode for d={d} on this graph")
    try:
        cands = enumerate_candidate_facets(G, size_cap or G.n, candidate_budget)
    except BudgetExceeded as exc:
        return SearchOutcome("UNKNOWN", "facet4", 4, exc.used, certificate={"budget_used": exc.used,
                                                                          "stage": "candidates"})
    return _search4(G, cands, budget)


# -- replay --------------------------------------------------------------------

def replay_transcript(G: Graph, outcome_or_lines, d: int, mode: str = "auto",
                      size_cap: int | None = None, candidate_budget: int = 10**6) -> tuple[bool, str]:
    """Re-validate a REFUTED transcript step by step against G.

    Every node must name a genuinely open item, consider every candidate containing it,
    justify each pruning by its cited constraint, and descend into the rest.
    """
    lines = outcome_or_lines.transcript if isinstance(outcome_or_lines, SearchOutcome) else list(outcome_or_lines)
    if not lines:
        return False, "empty transcript"
    reg = G.regular_degree()
    if mode == "auto":
        mode = "simple" if reg == d else "facet4"
    try:
        if mode == "simple":
            return _replay_simple(G, d, lines)
        cands = enumerate_candidate_facets(G, size_cap or G.n, candidate_budget)
        return _replay4(G, cands, lines)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        return False, f"malformed transcript: {exc!r}"


def _group(lines: list[dict]) -> dict[int, list[dict]]:
    out: dict[int, list[dict]] = {}
    for r in lines:
        out.setdefault(r["node"], []).append(r)
    return out


def _replay4(G: Graph, cands: list[CandidateFace], lines: list[dict]) -> tuple[bool, str]:
    nodes = _group(lines)
    state = {0: []}
    for node_id in sorted(nodes):
        recs = nodes[node_id]
        if node_id not in state:
            return False, f"node {node_id} has no parent"
        chosen = state[node_id]
        head = recs[0]
        if head.get("action") == "complete":
            return False, "transcript contains a complete complex"
        item = (head["open"][0], tuple(head["open"][1]))
        if head["chosen"] != [cands.index(F) for F in chosen]:
            return False, f"node {node_id}: chosen set mismatch"
        if _open_item(G, chosen) is None or not _is_open(G, chosen, item):
            return False, f"node {node_id}: item is not open"
        expected = [i for i, F in enumerate(cands) if _contains(F, item)]
        seen = []
        for r in recs[1:]:
            if r["action"] == "dead":
                continue
            i = r["cand"]
            seen.append(i)
            if r["action"] == "prune":
                if _violation4(G, chosen, cands[i]) != r["constraint"]:
                    return False, f"node {node_id}: prune of {i} not justified by {r['constraint']}"
            elif r["action"] == "descend":
                if _violation4(G, chosen, cands[i]) is not None:
                    return False, f"node {node_id}: descent into infeasible {i}"
                state[r["child"]] = chosen + [cands[i]]
        if seen != expected:
            return False, f"node {node_id}: candidate coverage mismatch"
        if recs[-1]["action"] != "dead":
            return False, f"node {node_id}: not closed"
    return True, "ok"


def _is_open(G: Graph, chosen: Sequence[CandidateFace], item) -> bool:
    kind, x = item
    if kind == "face2":
        return sum(1 for F in chosen if x in F.two_faces) == 1
    return sum(1 for F in chosen if x[0] in F.vertices and x[1] in F.vertices) < 3


def _replay_simple(G: Graph, d: int, lines: list[dict]) -> tuple[bool, str]:
    head = lines[0]
    if head.get("action") == "conflict":
        a, b = (tuple(c) for c in head["cycles"])
        cyc = set(induced_cycles(G, 5))
        if a not in cyc or b not in cyc or not _intersection_problem(a, b, G):
            return False, "conflict does not hold"
        return True, "ok"
    if head.get("action") == "obstruction":
        return (simple_obstructions(G, d) is not None), "obstruction recomputed"
    req = required_2faces(G, d)
    if not req.ok or head.get("action") != "seed":
        return False, "bad seed"
    nodes = _group(lines[1:])
    nodes.setdefault(0, [])
    state = {0: list(req.cycles)}
    all_angles = sorted((min(a, b), v, max(a, b)) for v in range(G.n)
                        for a, b in itertools.combinations(sorted(G.adj[v]), 2))
    for node_id in sorted(nodes):
        if node_id not in state:
            return False, f"node {node_id} has no parent"
        chosen = state[node_id]
        covered = {x: c for c in chosen for x in _angles_of(c)}
        recs = nodes[node_id]
        if not recs:
            return False, f"node {node_id} has no records"
        if "open" not in recs[0]:
            if recs[0].get("constraint") != "S4":
                return False, f"node {node_id}: unexpected leaf"
            if any(x not in covered for x in all_angles):
                return False, f"node {node_id}: leaf with uncovered angle"
            _, why = three_faces(G, d, chosen)
            if why is None:
                return False, f"node {node_id}: S4 does not hold"
            continue
        angle = tuple(recs[0]["open"])
        if angle in covered or angle not in all_angles:
            return False, f"node {node_id}: angle is not open"
        expected = _cycles_through(G, angle, G.n)
        seen = []
        for r in recs[1:]:
            if r["action"] == "dead":
                continue
            c = tuple(r["cycle"])
            seen.append(c)
            why = _face_ok(G, chosen, c, covered)
            if r["action"] == "prune" and why != r["constraint"]:
                return False, f"node {node_id}: prune not justified"
            if r["action"] == "descend":
                if why is not None:
                    return False, f"node {node_id}: descent into infeasible cycle"
                state[r["child"]] = chosen + [c]
        if seen != expected:
            return False, f"node {node_id}: cycle coverage mismatch"
        if recs[-1]["action"] != "dead":
            return False, f"node {node_id}: not closed"
    return True, "ok"


# ---------------------------------------------------------------------------
# Cartesian factorization and the product rule
# ---------------------------------------------------------------------------

def _square_partners(G: Graph, u: int, v: int, w: int) -> list[int]:
    """Fourth vertices x of chordless squares u-v-x-w."""
    return [x for x in (G.adj[v] & G.adj[w]) if x != u and not G.has_edge(u, x)]


def cartesian_factors(G: Graph, max_classes: int = 8) -> list[tuple[Graph, list[int]]] | None:
    """Prime factors with each vertex's coordinate in every factor, or None if G is prime.

    Edges at a common vertex belong to the same factor unless they span exactly one
    chordless square; opposite edges of chordless squares are in the same factor.
    The result is checked by re-multiplying.
    """
    if G.n < 4 or not G.is_connected():
        return None
    edges = G.edges
    eid = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    key = lambda a, b: eid[(min(a, b), max(a, b))]  # noqa: E731
    for u in range(G.n):
        for v, w in itertools.combinations(sorted(G.adj[u]), 2):
            if G.has_edge(v, w):
                union(key(u, v), key(u, w))
                continue
            xs = _square_partners(G, u, v, w)
            if len(xs) != 1:
                union(key(u, v), key(u, w))
            else:
                x = xs[0]
                union(key(u, v), key(w, x))
                union(key(u, w), key(v, x))
    classes = sorted({find(i) for i in range(len(edges))})
    if len(classes) < 2 or len(classes) > max_classes:
        return None
    label = [find(eid[e]) for e in edges]
    # every factorization coarsens the classes; the finest valid coarsening is the prime one
    for blocks in sorted(_set_partitions(classes), key=lambda b: (-len(b), b)):
        if len(blocks) < 2:
            break
        res = _layers(G, edges, [next(k for k, b in enumerate(blocks) if c in b) for c in label], len(blocks))
        if res is not None:
            return res
    return None


def _set_partitions(items: list) -> list[list[list]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for p in _set_partitions(rest):
        out.append([[first]] + p)
        for i in range(len(p)):
            out.append(p[:i] + [[first] + p[i]] + p[i + 1:])
    return [sorted(sorted(b) for b in p) for p in out]


def _layers(G: Graph, edges: list, block: list[int], k: int) -> list[tuple[Graph, list[int]]] | None:
    """Factor graphs from an edge colouring into k blocks, if G really is their product."""
    factors = []
    coords = []
    for c in range(k):
        H = make_graph(G.n, [e for e, b in zip(edges, block) if b != c])
        where = {}
        for j, comp in enumerate(H.components()):
            for x in comp:
                where[x] = j
        fedges = {tuple(sorted((where[a], where[b]))) for (a, b), bl in zip(edges, block) if bl == c}
        if any(a == b for a, b in fedges):
            return None
        factors.append(make_graph(len(set(where.values())), sorted(fedges)))
        coords.append([where[x] for x in range(G.n)])
    total = 1
    for F in factors:
        total *= F.n
    if total != G.n:
        return None
    if len({tuple(cs[x] for cs in coords) for x in range(G.n)}) != G.n:
        return None
    for a, b in itertools.combinations(range(G.n), 2):
        diff = [j for j in range(k) if coords[j][a] != coords[j][b]]
        adj = len(diff) == 1 and factors[diff[0]].has_edge(coords[diff[0]][a], coords[diff[0]][b])
        if adj != G.has_edge(a, b):
            return None
    return list(zip(factors, coords))


def factorize(G: Graph) -> list[Graph]:
    """Prime factors (a single entry when G is prime)."""
    res = cartesian_factors(G)
    return [G] if res is None else [F for F, _ in res]


def multiply(factors: Sequence[Graph]) -> Graph:
    out = factors[0]
    for F in factors[1:]:
        out = cartesian_product(out, F)
    return out


@dataclass(frozen=True)
class FactorRuleOutcome:
    excluded: bool
    d: int | None
    factors: tuple[Graph, ...]
    certificate: dict = field(default_factory=dict)


def simply_refuted(F: Graph, budget: int = 10**6) -> dict | None:
    """Evidence that the regular graph F is not the graph of a simple polytope of its degree."""
    k = F.regular_degree()
    if k is None:
        return {"why": "factor is not regular"}
    if k <= 2:
        if F.is_connected() and (k == 1 and F.n == 2 or k == 2 and F.n >= 3):
            return None
        return {"why": "not a segment or polygon"}
    if k == 3:
        st = steinitz_decide(F)
        return None if st else {"why": "not 3-polytopal", "steinitz": st.reason, **st.certificate}
    bad = simple_obstructions(F, k)
    if bad is not None:
        return {"why": "simple obstruction", **bad}
    res = facet_complex_search(F, k, budget=budget, mode="simple")
    if res.status == "REFUTED":
        return {"why": "simple facet search refuted", "search": res.to_json()}
    return None


def product_factor_check(G: Graph, factors: tuple[Graph, Graph] | None = None,
                         budget: int = 10**6) -> FactorRuleOutcome:
    """A regular product is simply polytopal only if every factor is simply polytopal in its degree."""
    if factors is not None:
        if are_isomorphic(cartesian_product(*factors), G) is None:
            raise GraphError("given factors do not multiply to the graph")
        parts = tuple(factors)
    else:
        parts = tuple(factorize(G))
    d = G.regular_degree()
    if len(parts) < 2 or d is None:
        return FactorRuleOutcome(False, d, parts)
    for i, F in enumerate(parts):
        ev = simply_refuted(F, budget)
        if ev is not None:
            return FactorRuleOutcome(True, d, parts, {
                "factor": i, "factor_graph": F.to_json(), "evidence": ev,
                "theorem": "a Cartesian product of regular graphs is simply polytopal "
                           "if and only if each factor is"})
    return FactorRuleOutcome(False, d, parts)
