"""Command-line entry point: ``semwidth <subcommand> [options]``.

Exit status: 0 on success, 1 on a domain error (bad query, infeasible cover,
cap exceeded, ...), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kernels
from .cover import FractionalCover, rational_str, rho_integral, rho_star, transfer_cover
from .cq import Database, dumps, evaluate, parse_query, query_to_json, render_query
from .decomposition import DEFAULT_CAP, TreeDecomposition, f_width, fhw_exact, ghw_exact, restrict_to_core
from .errors import SemwidthError
from .functions import rho_function
from .generators import gen_inflation, gen_parity_grid, gen_random_cq
from .homomorphism import compute_core, find_homomorphism, is_equivalent, mapping_to_json
from .hypergraph import Hypergraph, edge_label, hypergraph_of, image, vertex_map_of
from .semantic import NOTIONS, reformulation_decision, semantic_width, width, width_to_json


class UsageError(Exception):
    pass


def _grid(text):
    try:
        rows, cols = text.lower().split("x")
        return int(rows), int(cols)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _queries(args):
    texts = list(args.q or [])
    for path in args.f or []:
        with open(path, encoding="utf-8") as fh:
            texts.append(fh.read())
    return [parse_query(t) for t in texts]


def _one_query(args):
    qs = _queries(args)
    if len(qs) != 1:
        raise UsageError("exactly one query expected (-q or -f)")
    return qs[0]


def _two_queries(args):
    qs = _queries(args)
    if len(qs) != 2:
        raise UsageError("two queries expected (repeat -q/-f)")
    return qs


def _query_or_grid(args):
    if getattr(args, "grid", None):
        if args.q or args.f:
            raise UsageError("give either a query or --grid, not both")
        return gen_parity_grid(*args.grid)
    return _one_query(args)


def _emit(args, payload, text):
    print(dumps(payload) if args.json else text)


def _describe_width(w):
    lines = [rational_str(w.value) if w.value.denominator != 1 else str(w.value)]
    report = getattr(w, "report", w)
    td = getattr(report, "decomposition", None)
    if td is not None:
        for u in td.nodes:
            c = report.certificates[u]
            val = getattr(c, "value", c)
            lines.append(f"  node {u} {edge_label(td.bags[u])}: {val}")
        for a, b in sorted(td.tree_edges):
            lines.append(f"  edge {a} - {b}")
    return "\n".join(lines)


def cmd_parse(args):
    q = _one_query(args)
    _emit(args, query_to_json(q), render_query(q))


def cmd_core(args):
    q = _one_query(args)
    res = compute_core(q)
    payload = {"core": render_query(res.core), "retraction": mapping_to_json(res.retraction),
               "removed_atoms": len(q.body) - len(res.core.body)}
    _emit(args, payload, render_query(res.core))


def cmd_hom(args):
    q1, q2 = _two_queries(args)
    h = find_homomorphism(q1, q2)
    if h is None:
        _emit(args, {"mapping": None}, "no homomorphism")
        return
    _emit(args, mapping_to_json(h), "\n".join(f"{x} -> {t}" for x, t in sorted(h.items())))


def cmd_equiv(args):
    q1, q2 = _two_queries(args)
    eq = is_equivalent(q1, q2)
    _emit(args, {"equivalent": eq}, "equivalent" if eq else "not equivalent")


def _hypergraph(args):
    if args.hypergraph:
        with open(args.hypergraph, encoding="utf-8") as fh:
            return Hypergraph.from_json(json.load(fh))
    return hypergraph_of(_one_query(args))


def cmd_cover(args):
    h = _hypergraph(args)
    target = None if args.target is None else [v for v in args.target.split(",") if v]
    if args.integral:
        c = rho_integral(h, target)
        text = "\n".join([str(c.count)] + [f"  {edge_label(e)}" for e in c.edges])
        _emit(args, c.to_json(), text)
        return
    pair = rho_star(h, target)
    lines = [str(pair.value)]
    lines += [f"  x{edge_label(e)} = {w}" for e, w in sorted(pair.primal.weights.items(),
                                                             key=lambda kv: sorted(kv[0])) if w]
    lines += [f"  y[{v}] = {w}" for v, w in sorted(pair.dual.weights.items()) if w]
    _emit(args, pair.to_json(), "\n".join(lines))


def cmd_width(args):
    q = _one_query(args)
    w = width(q, args.notion, cap=args.cap, samples=args.samples, seed=args.seed)
    _emit(args, width_to_json(w), f"{args.notion} = {_describe_width(w)}")


def cmd_semwidth(args):
    q = _query_or_grid(args)
    rep = semantic_width(q, args.notion, cap=args.cap, samples=args.samples, seed=args.seed)
    payload = rep.to_json()
    lines = [f"query:    {render_query(q)}",
             f"core:     {render_query(rep.core.core)}",
             f"original: {rep.original_width.value}",
             f"semantic: {rep.value}" + ("" if rep.exactness == "exact" else " (lower bound)")]
    if args.k is not None:
        decision = reformulation_decision(q, args.notion, args.k, cap=args.cap)
        payload["k"] = rational_str(args.k)
        payload["decision"] = decision
        lines.append(f"equivalent query with {args.notion} <= {args.k}: {'yes' if decision else 'no'}")
    _emit(args, payload, "\n".join(lines))


def cmd_restrict(args):
    q = _one_query(args)
    h = hypergraph_of(q)
    res = compute_core(q)
    hc = hypergraph_of(res.core)
    integral = args.notion == "ghw"
    if args.td:
        with open(args.td, encoding="utf-8") as fh:
            td = TreeDecomposition.from_json(json.load(fh))
        before = f_width(h, td, rho_function(h, integral))
    else:
        before = (ghw_exact if integral else fhw_exact)(h, args.cap)
    restricted = restrict_to_core(before.decomposition, hc.vertices)
    after = f_width(hc, restricted, rho_function(hc, integral))
    payload = {"core": render_query(res.core), "original": before.to_json(), "restricted": after.to_json()}
    text = (f"core: {render_query(res.core)}\n"
            f"original width: {_describe_width(before)}\nrestricted width: {_describe_width(after)}")
    _emit(args, payload, text)


def cmd_transfer(args):
    q = _one_query(args)
    res = compute_core(q)
    g = hypergraph_of(q)
    h = hypergraph_of(res.core)
    f = vertex_map_of(res.retraction)
    if args.cover:
        with open(args.cover, encoding="utf-8") as fh:
            x = FractionalCover.from_json(json.load(fh))
        if not x.target:
            x = FractionalCover(g.vertices, x.weights, x.total)
    else:
        x = rho_star(g).primal
    out = transfer_cover(f, g, image(f, g) if args.image else h, x)
    payload = {"core": render_query(res.core), "map": dict(sorted(f.items())),
               "source": x.to_json(), "transferred": out.to_json()}
    lines = [f"core: {render_query(res.core)}", f"source total: {x.total}",
             f"transferred total: {out.total}"]
    lines += [f"  x{edge_label(e)} = {w}" for e, w in sorted(out.weights.items(), key=lambda kv: sorted(kv[0]))]
    _emit(args, payload, "\n".join(lines))


def cmd_gen(args):
    if args.kind == "parity_grid":
        if not args.grid:
            raise UsageError("--grid RxC is required for parity_grid")
        q = gen_parity_grid(*args.grid)
    elif args.kind == "random_cq":
        q = gen_random_cq(args.seed, args.vars, args.atoms, args.arity, args.relations, args.head)
    else:
        q = gen_inflation(_one_query(args), args.steps, args.seed)
    _emit(args, query_to_json(q), render_query(q))


def cmd_eval(args):
    q = _one_query(args)
    with open(args.db, encoding="utf-8") as fh:
        db = Database.from_json(json.load(fh))
    ans = evaluate(q, db)
    rows = sorted(ans.tuples)
    text = "\n".join(["\t".join(ans.attributes) or "()"] + ["\t".join(t) or "()" for t in rows])
    _emit(args, ans.to_json(), text)


def build_parser():
    p = argparse.ArgumentParser(prog="semwidth", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text, queries=True):
        sp = sub.add_parser(name, help=help_text)
        if queries:
            sp.add_argument("-q", action="append", metavar="QUERY", help="inline query text (repeatable)")
            sp.add_argument("-f", action="append", metavar="FILE", help="query file (repeatable)")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=fn)
        return sp

    def widths(sp, default="fhw"):
        sp.add_argument("--notion", choices=NOTIONS, default=default)
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="vertex cap for exact search")
        sp.add_argument("--samples", type=int, default=8, help="functions sampled for lower bounds")
        sp.add_argument("--seed", type=int, default=0)

    add("parse", cmd_parse, "parse and print a query in canonical form")
    add("core", cmd_core, "compute the core of a query")
    add("hom", cmd_hom, "find a homomorphism from the first query to the second")
    add("equiv", cmd_equiv, "decide equivalence of two queries")
    sp = add("cover", cmd_cover, "fractional (or integral) edge cover number")
    sp.add_argument("--hypergraph", metavar="FILE", help="hypergraph JSON instead of a query")
    sp.add_argument("--target", metavar="V1,V2", help="vertices to cover (default: all)")
    sp.add_argument("--integral", action="store_true")
    widths(add("width", cmd_width, "width of the query itself"))
    sp = add("semwidth", cmd_semwidth, "semantic width (width of the core)")
    widths(sp, "rho_star")
    sp.add_argument("--grid", type=_grid, metavar="RxC", help="use a parity grid query")
    sp.add_argument("--k", type=_rational, help="also decide: equivalent query of width <= k?")
    sp = add("restrict", cmd_restrict, "restrict an optimal decomposition of q to its core")
    sp.add_argument("--notion", choices=("ghw", "fhw"), default="fhw")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--td", metavar="FILE", help="decomposition JSON to restrict instead")
    sp = add("transfer", cmd_transfer, "push an edge cover of q onto its core")
    sp.add_argument("--cover", metavar="FILE", help="cover JSON to transfer (default: optimal)")
    sp.add_argument("--image", action="store_true", help="target the image hypergraph f(G)")
    sp = add("gen", cmd_gen, "generate queries")
    sp.add_argument("--kind", choices=("parity_grid", "random_cq", "inflate_core"), default="parity_grid")
    sp.add_argument("--grid", type=_grid, metavar="RxC")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int, default=3)
    sp.add_argument("--vars", type=int, default=5)
    sp.add_argument("--atoms", type=int, default=5)
    sp.add_argument("--arity", type=int, default=2)
    sp.add_argument("--relations", type=int, default=2)
    sp.add_argument("--head", type=int, default=0)
    sp = add("eval", cmd_eval, "evaluate a query over a JSON database")
    sp.add_argument("--db", required=True, metavar="FILE")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"semwidth: error: {exc}", file=sys.stderr)
        return 2
    except (SemwidthError, OSError, ValueError) as exc:
        print(f"semwidth: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
