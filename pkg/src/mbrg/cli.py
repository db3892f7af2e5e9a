"""Command-line front end: ``mbrg <command> ...``.

Exit status: 0 success, 1 a check or verification failed, 2 usage or input
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import MBRGError, ResourceLimit
from .graph import Format, Graph, twin_structure
from .harness import CLAIM_IDS, SuiteConfig, explore, run_suite
from .metric import (SetProperty, check_set_property, find_pairing_resolving,
                     minimum_property_number)
from .product import ProductGraph
from .solver import (DEFAULT_NODE_CAP, DEFAULT_VERTEX_CAP, GameState, Player, Solver,
                     TargetSpec)
from .specs import build, product_spec
from .strategies import OPTIMAL, make_strategy, play_match, verify_strategy

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _ids(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}")


def _node_cap(args) -> int:
    if args.node_cap is not None:
        return args.node_cap
    env = os.environ.get("MBRG_NODE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _target_graph(args) -> Graph | ProductGraph:
    if getattr(args, "graph", None):
        return build(args.graph)
    if getattr(args, "g", None) and getattr(args, "h", None):
        return build(product_spec(args.g, args.h))
    raise MBRGError("give --graph SPEC or both --g and --h")


def _plain(G) -> Graph:
    return G.base if isinstance(G, ProductGraph) else G


def _solver(args, G: Graph) -> Solver:
    return Solver(TargetSpec(G, args.family), node_cap=_node_cap(args),
                  memo_cap=args.memo_cap, vertex_cap=args.vertex_cap)


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True) + "\n")
        return
    rows = obj if isinstance(obj, list) else [obj]
    if fmt == "csv":
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                        for k, v in r.items()})
        out.write(buf.getvalue())
        return
    for r in rows:
        out.write("  ".join(f"{k}={json.dumps(r[k]) if isinstance(r[k], (list, dict)) else r[k]}"
                            for k in sorted(r)) + "\n")


# -- commands -------------------------------------------------------------------------

def cmd_gen(args, out):
    G = _plain(build(args.spec))
    out.write(_serialize(G, args.output) + "\n")
    return EXIT_OK


def _serialize(G: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return G.to_graph6()
    if fmt == "json":
        return G.to_json()
    return G.to_edgelist().rstrip("\n")


def cmd_number(prop: SetProperty):
    def run(args, out):
        G = _plain(build(args.graph))
        size, witness = minimum_property_number(G, prop)
        if args.format == "table":
            out.write(f"{size}\n")
        else:
            _emit({"graph": args.graph, "value": size, "witness": list(witness)}, args.format, out)
        return EXIT_OK
    return run


def cmd_twins(args, out):
    tw = twin_structure(_plain(build(args.graph)))
    _emit({"classes": [list(c) for c in tw.classes],
           "pairs": [[u, v, k.value] for (u, v), k in sorted(tw.pair_kind.items())],
           "has_true_twins": tw.has_true_twins, "has_false_twins": tw.has_false_twins,
           "is_twin_free": tw.is_twin_free}, args.format, out)
    return EXIT_OK


def cmd_check_set(args, out):
    G = _plain(build(args.graph))
    ok = check_set_property(G, args.set, args.property)
    if args.format == "table":
        out.write(f"{str(ok).lower()}\n")
    else:
        _emit({"graph": args.graph, "set": args.set, "property": args.property,
               "holds": ok}, args.format, out)
    return EXIT_OK


def cmd_pairing(args, out):
    p = find_pairing_resolving(_plain(build(args.graph)))
    _emit({"graph": args.graph, "pairing": None if p is None else [list(x) for x in p.pairs],
           "dim_pairing": None if p is None else p.dim_pairing}, args.format, out)
    return EXIT_OK


def cmd_product(args, out):
    P = build(product_spec(args.g, args.h))
    out.write(_serialize(P.base, args.output) + "\n")
    return EXIT_OK


def cmd_solve(args, out):
    G = _plain(_target_graph(args))
    val = _solver(args, G).winner_move_count(Player(args.first))
    _emit({"first": args.first, "winner": val.winner.value, "moves": val.moves},
          args.format, out)
    return EXIT_OK


def cmd_values(args, out):
    G = _plain(_target_graph(args))
    rep = _solver(args, G).game_values(lines=not args.no_lines)
    _emit(rep.to_dict(with_time=args.timing), args.format, out)
    return EXIT_OK


def cmd_best_move(args, out):
    G = _plain(_target_graph(args))
    state = GameState(sum(1 << v for v in args.resolver), sum(1 << v for v in args.spoiler),
                      Player(args.to_move))
    v, val = _solver(args, G).best_move(state)
    _emit({"move": v, "winner": val.winner.value, "moves": val.moves}, args.format, out)
    return EXIT_OK


def cmd_verify_strategy(args, out):
    P = build(product_spec(args.g, args.h)) if args.g else build(args.graph)
    strat = make_strategy(args.name, P)
    res = verify_strategy(TargetSpec(_plain(P), args.family), strat, args.opponent_first,
                          adversary_passes=args.passes, node_cap=_node_cap(args))
    _emit({"strategy": args.name, "role": strat.role.value,
           "opponent_first": args.opponent_first, "wins_always": res.wins_always,
           "counterexample": None if res.counterexample is None
           else [[p, v] for p, v in res.counterexample],
           "preconditions": strat.preconditions, "nodes": res.nodes}, args.format, out)
    return EXIT_OK if res.wins_always else EXIT_FAIL


def cmd_play(args, out):
    P = build(product_spec(args.g, args.h)) if args.g else build(args.graph)
    sides = [OPTIMAL if s == "optimal" else make_strategy(s, P) for s in (args.resolver,
                                                                          args.spoiler)]
    t = play_match(TargetSpec(_plain(P), args.family), sides[0], sides[1], Player(args.first),
                   context=P if isinstance(P, ProductGraph) else None)
    _emit({"moves": [[p, v] for p, v in t.moves], "winner": t.winner.value,
           "resolver_moves": t.resolver_moves, "spoiler_moves": t.spoiler_moves,
           "layer_sets": None if t.layer_sets is None
           else {str(k): v for k, v in t.layer_sets.items()}}, args.format, out)
    return EXIT_OK


def cmd_verify(args, out):
    checks = tuple(args.checks.split(",")) if args.checks else CLAIM_IDS
    cfg = SuiteConfig(checks=checks, include_extended=not args.no_extended,
                      samples=args.samples, seed=args.seed)
    report = run_suite(cfg)
    if args.format == "table":
        out.write(report.to_table() + "\n")
    else:
        out.write(report.to_json(with_time=args.timing) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_explore(args, out):
    rows = explore(args.g, args.h, method=args.method, strategy=args.strategy,
                   false_twins_only=args.false_twins)
    _emit(rows, args.format, out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, fmt: str = "json") -> None:
    p.add_argument("--format", choices=["json", "csv", "table"], default=fmt)
    p.add_argument("--node-cap", type=_positive, default=None,
                   help="search node limit (default: $MBRG_NODE_CAP or %d)" % DEFAULT_NODE_CAP)
    p.add_argument("--memo-cap", type=_positive, default=1 << 26)
    p.add_argument("--vertex-cap", type=_positive, default=DEFAULT_VERTEX_CAP)
    p.add_argument("--threads", type=_positive, default=1,
                   help="accepted for compatibility; search is single-threaded")
    p.add_argument("--family", choices=[s.value for s in SetProperty], default="resolving",
                   help="winning-set family for game commands")


def _graph_args(p, required=False):
    p.add_argument("--graph", help="graph specifier, e.g. path:4 or product:path:2∘path:5")
    p.add_argument("--g", help="first factor of a lexicographic product")
    p.add_argument("--h", help="second factor of a lexicographic product")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbrg", description="Maker-Breaker resolving game on graphs and "
                                 "lexicographic products.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named graph (paths, cycles, complete, stars, "
                                   "complete bipartite)")
    p.add_argument("spec")
    p.add_argument("--output", choices=[f.value for f in Format], default="edgelist")
    _common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dim", help="metric dimension dim(G), the lower bound on Resolver's "
                                   "move count")
    p.add_argument("--graph", required=True)
    _common(p, "table")
    p.set_defaults(func=cmd_number(SetProperty.RESOLVING))

    p = sub.add_parser("lc", help="location number lc(G), used in the layer lower bound "
                                  "n(G)lc(H)")
    p.add_argument("--graph", required=True)
    _common(p, "table")
    p.set_defaults(func=cmd_number(SetProperty.LOCATING))

    p = sub.add_parser("twins", help="twin classes and true/false twin pairs")
    p.add_argument("--graph", required=True)
    _common(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("check-set", help="test a vertex set for resolving, locating, strictly "
                                         "locating, dominating or locating-dominating")
    p.add_argument("--graph", required=True)
    p.add_argument("--set", type=_ids, required=True, help="comma-separated vertex ids")
    p.add_argument("--property", choices=[s.value for s in SetProperty], default="resolving")
    _common(p, "table")
    p.set_defaults(func=cmd_check_set)

    p = sub.add_parser("pairing", help="smallest pairing resolving set (its existence "
                                       "forces a Resolver win)")
    p.add_argument("--graph", required=True)
    _common(p)
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("product", help="build the lexicographic product G o H")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--output", choices=[f.value for f in Format], default="edgelist")
    _common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("solve", help="winner and winner's move count for one start order")
    _graph_args(p)
    p.add_argument("--first", choices=["resolver", "spoiler"], default="resolver")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("values", help="outcome and R_MB, R'_MB, S_MB, S'_MB")
    _graph_args(p)
    p.add_argument("--no-lines", action="store_true", help="skip principal lines")
    p.add_argument("--timing", action="store_true", help="include wall time")
    _common(p)
    p.set_defaults(func=cmd_values)

    p = sub.add_parser("best-move", help="lowest-id optimal move from a position")
    _graph_args(p)
    p.add_argument("--resolver", type=_ids, default=[])
    p.add_argument("--spoiler", type=_ids, default=[])
    p.add_argument("--to-move", choices=["resolver", "spoiler"], default="resolver")
    _common(p)
    p.set_defaults(func=cmd_best_move)

    p = sub.add_parser("verify-strategy", help="check a scripted layer strategy against "
                                               "every opponent line")
    p.add_argument("--name", required=True)
    _graph_args(p)
    order = p.add_mutually_exclusive_group()
    order.add_argument("--opponent-first", dest="opponent_first", action="store_true",
                       default=True)
    order.add_argument("--strategy-first", dest="opponent_first", action="store_false")
    p.add_argument("--passes", type=int, default=0, help="passes allowed to the opponent")
    _common(p)
    p.set_defaults(func=cmd_verify_strategy)

    p = sub.add_parser("play", help="play one game between strategies or perfect play")
    _graph_args(p)
    p.add_argument("--resolver", default="optimal")
    p.add_argument("--spoiler", default="optimal")
    p.add_argument("--first", choices=["resolver", "spoiler"], default="resolver")
    _common(p)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="run the claim-by-claim verification suite")
    p.add_argument("--suite", choices=["default"], default="default")
    p.add_argument("--checks", help="comma-separated check ids (default: all)")
    p.add_argument("--no-extended", action="store_true", help="skip the slow instances")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="compute outcomes for a family of first factors; "
                                       "results are labelled COMPUTED")
    p.add_argument("--g", nargs="+", required=True,
                   help="specifiers or connected:n (all connected graphs on n <= 5)")
    p.add_argument("--h", required=True)
    p.add_argument("--method", choices=["auto", "exact", "strategy"], default="auto")
    p.add_argument("--strategy")
    p.add_argument("--false-twins", action="store_true",
                   help="keep only first factors with false twins")
    _common(p)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ResourceLimit as exc:
        print(f"mbrg: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (MBRGError, KeyError) as exc:
        code = getattr(exc, "code", "ERROR")
        print(f"mbrg: {code}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
