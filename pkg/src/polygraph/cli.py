"""Command line entry point: ``polygraph <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import obstructions as ob
from . import simple_check as sc
from .geometry import (
    GeometryError,
    Polytope,
    cross_polytope,
    egyptian_lifting,
    expected_lifted_graph,
    face_lattice,
    lifted_product,
    named_polytope,
    polygon,
    polytope_from_json,
    prism_octahedron_realizations,
    segment,
    simplex,
    truncate_vertex,
    verify_graph,
)
from .geometry import subdivision as sub
from .graph_core import (
    Graph,
    GraphError,
    cartesian_product,
    circulant,
    connected_circulants,
    dump_json,
    from_edge_list,
    from_graph6,
    from_json,
    named_graph,
    star_clique,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# graph input
# ---------------------------------------------------------------------------

def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def parse_term(term: str) -> Graph:
    parts = term.split(":")
    name, args = parts[0], parts[1:]
    if name == "circulant":
        if len(args) != 2:
            raise UsageError("circulant needs n and a comma-separated jump set, e.g. circulant:8:1,2,4")
        return circulant(int(args[0]), _ints(args[1]))
    if name in ("K", "complete") and len(args) == 1:
        return named_graph("complete", int(args[0]))
    return named_graph(name, *(int(a) for a in args))


def load_graph(spec: str) -> Graph:
    """A file (.json, .g6, edge list) or a spec such as ``circulant:8:1,2,4`` or ``complete:2*petersen``."""
    p = Path(spec)
    if p.is_file():
        text = p.read_text()
        if p.suffix == ".json":
            return from_json(json.loads(text))
        if p.suffix in (".g6", ".graph6"):
            return from_graph6(text, p.stem)
        return from_edge_list(text, p.stem)
    terms = spec.split("*")
    G = parse_term(terms[0])
    for t in terms[1:]:
        G = cartesian_product(G, parse_term(t))
    return G


def _budget(args) -> ob.RangeBudget:
    for name in ("budget_nodes", "sep_cap", "hull_cap"):
        if getattr(args, name) <= 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return ob.RangeBudget(nodes=args.budget_nodes, sep_cap=args.sep_cap, hull_cap=args.hull_cap)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    kind = args.kind
    rest = args.params
    if kind == "circulant":
        if len(rest) != 2:
            raise UsageError("usage: gen circulant N JUMPS")
        G = circulant(int(rest[0]), _ints(rest[1]))
    elif kind == "named":
        if not rest:
            raise UsageError("usage: gen named NAME [PARAMS...]")
        G = named_graph(rest[0], *(int(x) for x in rest[1:]))
    elif kind == "product":
        if len(rest) != 2:
            raise UsageError("usage: gen product SPEC SPEC")
        G = cartesian_product(load_graph(rest[0]), load_graph(rest[1]))
    elif kind == "star-clique":
        if len(rest) != 2:
            raise UsageError("usage: gen star-clique SPEC VERTEX")
        G = star_clique(load_graph(rest[0]), int(rest[1]))
    else:
        raise UsageError(f"unknown generator {kind!r}")
    if args.format == "graph6":
        _emit(args, G.to_graph6())
    elif args.format == "md":
        _emit(args, f"# {G}\n\n- vertices: {G.n}\n- edges: {G.m}\n- graph6: `{G.to_graph6()}`\n")
    else:
        _emit(args, _pretty({"graph6": G.to_graph6(), **G.to_json()}))
    return EXIT_OK


def report_markdown(rep: ob.ObstructionReport) -> str:
    lines = [f"## {rep.graph}", "", f"range: {rep.range_string()}", "", "| d | status | rule |", "|---|---|---|"]
    for v in rep.verdicts:
        lines.append(f"| {v.d} | {v.status.value} | {v.reason} |")
    return "\n".join(lines) + "\n"


def cmd_range(args) -> int:
    G = load_graph(args.graph)
    rep = ob.polytopality_range(G, _budget(args))
    if args.format == "md":
        _emit(args, report_markdown(rep))
    else:
        _emit(args, _pretty(rep.to_json()))
    return EXIT_OK


def cmd_check(args) -> int:
    G = load_graph(args.graph)
    d = args.d
    name = args.check
    if name == "balinski":
        out = ob.balinski_check(G, d).__dict__
    elif name == "psp":
        res = ob.psp_check(G, d, args.vertex, budget_nodes=args.budget_nodes)
        cert = dict(res.certificate)
        if "witnesses" in cert:
            cert["witnesses"] = {str(k): w.to_json() for k, w in sorted(cert["witnesses"].items())}
        out = {"name": "psp", "status": res.status, "certificate": cert}
    elif name == "separation":
        out = ob.separation_check(G, d, min(args.sep_cap, G.n)).__dict__
    elif name == "steinitz":
        st = ob.steinitz_decide(G)
        out = {"name": "steinitz", "status": "pass" if st else "fail", "reason": st.reason,
               "certificate": st.certificate}
        if st:
            out["two_faces"] = [list(c) for c in ob.whitney_2faces(G)]
    elif name == "required-2faces":
        r = sc.required_2faces(G, d)
        out = {"name": name, "status": "pass" if r.ok else "fail", "cycles": [list(c) for c in r.cycles],
               "conflict": r.conflict}
    elif name == "simple":
        bad = sc.simple_obstructions(G, d)
        out = {"name": name, "status": "pass" if bad is None else "fail", "obstruction": bad}
    elif name == "reverse-star-clique":
        out = {"name": name, "cliques": [{"clique": list(K), "contracted": C.to_json()}
                                         for K, C in ob.reverse_star_clique(G)]}
    elif name == "facet-search":
        res = sc.facet_complex_search(G, d, budget=args.budget_nodes, mode=args.mode)
        out = {"name": name, **res.to_json()}
        if args.transcript:
            Path(args.transcript).write_text(sc.transcript_jsonl(res))
    elif name == "factors":
        out = {"name": name, "factors": [F.to_json() for F in sc.factorize(G)]}
    else:
        raise UsageError(f"unknown check {name!r}")
    _emit(args, _pretty(out))
    return EXIT_OK


_P_FACTORS = {
    "segment": lambda: segment(),
    "triangle": lambda: polygon(3),
    "square": lambda: polygon(4),
}

_Q_LIFTINGS = {
    "segment-midpoint": lambda: sub.Lifting.of([(0,), (2,), (1,)], [1, 1, 2]),
    "square-diagonal": lambda: sub.Lifting.of([(0, 0), (1, 0), (1, 1), (0, 1)], [2, 1, 2, 1]),
    "star-clique-octahedron": lambda: sub.star_clique_octahedron_lifting().shifted(2),
    "octahedron": lambda: egyptian_lifting(None),
    "octahedron-pyramids": lambda: egyptian_lifting(2),
}


def _polytope_spec(spec: str) -> Polytope:
    if spec in _P_FACTORS:
        return _P_FACTORS[spec]()
    parts = spec.split(":")
    return named_polytope(parts[0], *(int(x) for x in parts[1:]))


def _polytope_out(P: Polytope, G: Graph | None = None) -> dict:
    out = {"polytope": P.to_json(), "hash": P.content_hash(), "f_vector": list(face_lattice(P).f_vector)}
    if G is not None:
        chk = verify_graph(P, G)
        out["verified"] = chk.ok
        out["expected_graph"] = G.to_json()
    return out


def cmd_construct(args) -> int:
    what = args.what
    if what == "lifted-product":
        if not args.p or not args.q:
            raise UsageError("lifted-product needs --p and --q")
        P = _polytope_spec(args.p)
        if args.q.startswith("domino-lens"):
            bits = args.q.split(":")
            L = sub.domino_lens_lifting(int(bits[1]), int(bits[2]))
            L = L.shifted(1 - min(L.heights))
        elif args.q in _Q_LIFTINGS:
            L = _Q_LIFTINGS[args.q]()
        else:
            raise UsageError(f"unknown subdivision {args.q!r}; choose from {sorted(_Q_LIFTINGS)} or domino-lens:p:q")
        R = lifted_product(P, L)
        out = _polytope_out(R, expected_lifted_graph(P, [L] * P.n))
    elif what == "prism-octahedron":
        out = {"realizations": [_polytope_out(R) for R in prism_octahedron_realizations()]}
    elif what == "truncate":
        if not args.p or args.vertex is None:
            raise UsageError("truncate needs --p and --vertex")
        P = _polytope_spec(args.p)
        from .geometry import skeleton_graph
        out = _polytope_out(truncate_vertex(P, args.vertex), star_clique(skeleton_graph(P), args.vertex))
    elif what == "polytope":
        if not args.p:
            raise UsageError("polytope needs --p")
        out = _polytope_out(_polytope_spec(args.p))
    else:
        raise UsageError(f"unknown construction {what!r}")
    _emit(args, _pretty(out))
    if "verified" in out and not out["verified"]:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    data = json.loads(Path(args.polytope).read_text())
    P = polytope_from_json(data.get("polytope", data))
    G = load_graph(args.graph)
    chk = verify_graph(P, G)
    out = {"ok": chk.ok, "reason": chk.reason,
           "bijection": {str(k): v for k, v in sorted(chk.bijection.items())} if chk.bijection else None}
    _emit(args, _pretty(out))
    return EXIT_OK if chk.ok else EXIT_MISMATCH


def cmd_replay(args) -> int:
    G = load_graph(args.graph)
    lines = [json.loads(ln) for ln in Path(args.transcript).read_text().splitlines() if ln.strip()]
    ok, msg = sc.replay_transcript(G, lines, args.d, mode=args.mode)
    _emit(args, _pretty({"ok": ok, "message": msg, "sha256": sc.transcript_digest(lines)}))
    return EXIT_OK if ok else EXIT_MISMATCH


def _table_row(item):
    n, S, G, budget = item
    rep = ob.polytopality_range(G, budget)
    return {"n": n, "jumps": list(S), "graph6": G.to_graph6(), "range": rep.confirmed,
            "open": rep.not_excluded, "exact": rep.exact,
            "verdicts": [[v.d, v.status.value, v.reason] for v in rep.verdicts]}


def circulant_table(max_n: int, budget: ob.RangeBudget | None = None, workers: int = 1) -> list[dict]:
    budget = budget or ob.RangeBudget()
    items = [(n, S, G, budget) for n, S, G in connected_circulants(max_n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_table_row, items))
    return [_table_row(it) for it in items]


def _threads() -> int:
    raw = os.environ.get("POLYGRAPH_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"POLYGRAPH_THREADS must be an integer, got {raw!r}") from None
    return max(1, k)


def cmd_table(args) -> int:
    rows = circulant_table(args.max_n, _budget(args), _threads())
    if args.format == "md":
        lines = ["| n | jumps | range | rules |", "|---|---|---|---|"]
        for r in rows:
            rng = "{" + ",".join(map(str, r["range"])) + "}" if r["exact"] else f"open {r['open']}"
            rules = " ".join(f"{d}:{rule}" for d, _, rule in r["verdicts"])
            lines.append(f"| {r['n']} | {','.join(map(str, r['jumps']))} | {rng} | {rules} |")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _pretty({"max_n": args.max_n, "rows": rows}))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polygraph", description="Polytopality ranges of graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=10**7)
    common.add_argument("--sep-cap", type=int, default=8)
    common.add_argument("--hull-cap", type=int, default=64)
    common.add_argument("--format", choices=["json", "md", "graph6"], default="json")
    common.add_argument("--out")
    sp = ap.add_subparsers(dest="command", required=True)

    g = sp.add_parser("gen", parents=[common], help="emit a graph")
    g.add_argument("kind", choices=["circulant", "named", "product", "star-clique"])
    g.add_argument("params", nargs="*")
    g.set_defaults(func=cmd_gen)

    r = sp.add_parser("range", parents=[common], help="polytopality range report")
    r.add_argument("graph")
    r.set_defaults(func=cmd_range)

    c = sp.add_parser("check", parents=[common], help="run a single obstruction")
    c.add_argument("check", choices=["balinski", "psp", "separation", "steinitz", "required-2faces", "simple",
                                     "reverse-star-clique", "facet-search", "factors"])
    c.add_argument("graph")
    c.add_argument("--d", type=int, default=4)
    c.add_argument("--vertex", type=int)
    c.add_argument("--mode", choices=["auto", "simple", "facet4"], default="auto")
    c.add_argument("--transcript", help="write the facet-search transcript (JSON lines) here")
    c.set_defaults(func=cmd_check)

    k = sp.add_parser("construct", parents=[common], help="build a witness polytope")
    k.add_argument("what", choices=["lifted-product", "prism-octahedron", "truncate", "polytope"])
    k.add_argument("--p")
    k.add_argument("--q")
    k.add_argument("--vertex", type=int)
    k.set_defaults(func=cmd_construct)

    v = sp.add_parser("verify", parents=[common], help="compare a polytope skeleton with a graph")
    v.add_argument("polytope")
    v.add_argument("graph")
    v.set_defaults(func=cmd_verify)

    p = sp.add_parser("replay", parents=[common], help="re-validate a facet-search transcript")
    p.add_argument("transcript")
    p.add_argument("graph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=["auto", "simple", "facet4"], default="auto")
    p.set_defaults(func=cmd_replay)

    t = sp.add_parser("table", parents=[common], help="ranges of all connected circulants")
    t.add_argument("--max-n", type=int, default=8)
    t.set_defaults(func=cmd_table)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GraphError, GeometryError, ValueError, FileNotFoundError, KeyError) as exc:
        print(f"polygraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
