"""Command-line front end: gen, bounds, solve, shift, closeness, crossover,
round, verify.

Exit codes: 0 success, 1 stage failure (round), 2 budget refusal,
3 bound mismatch (verify).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import constructions, rounding, shifting, stability, verify
from .core import BudgetExceeded, Hypergraph, read_hg, to_json_dict, write_hg
from .optimize import (
    fractional_cover,
    fractional_matching,
    max_independent_set,
    max_matching,
    min_vertex_cover,
)


def to_jsonable(obj):
    """Recursively convert package objects into JSON-serializable data."""
    if isinstance(obj, Hypergraph):
        return to_json_dict(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float):
        return obj
    return obj


def _key(k):
    if isinstance(k, tuple):
        return " ".join(map(str, k))
    return str(k)


def _tsv_cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "\t".join(_tsv_cell(x) for x in v) if v else "-"
    if isinstance(v, Hypergraph):
        return f"graph(n={v.n},k={v.k},e={v.e()})"
    if isinstance(v, dict):
        return json.dumps(to_jsonable(v), separators=(",", ":"))
    return str(v)


def render_report(obj, fmt: str = "json") -> str:
    """Stable-order report text; JSON round-trips through json.loads."""
    if fmt == "json":
        return json.dumps(to_jsonable(obj), indent=2, sort_keys=False)
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, list):
        return "\n".join(render_report(x, "tsv") for x in obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return "\t".join(
            _tsv_cell(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        )
    if isinstance(obj, dict):
        return "\t".join(_tsv_cell(v) for v in obj.values())
    return str(obj)


def _load(path: str) -> Hypergraph:
    return read_hg(path)


# -- subcommands ---------------------------------------------------------------


def _cmd_gen(args) -> int:
    fam = args.family
    if fam == "cover":
        h = constructions.cover_family(args.n, args.k, args.s)
    elif fam == "clique":
        h = constructions.clique_family(args.n, args.k, args.s)
    elif fam == "hm":
        h = constructions.hilton_milner_family(args.n, args.k, args.s)
    elif fam == "a":
        if args.i is None:
            print("--i is required for the a family", file=sys.stderr)
            return 2
        h = constructions.prefix_overlap_family(args.n, args.k, args.s, args.i)
    else:
        raise AssertionError(fam)
    if args.out:
        write_hg(h, args.out)
        print(f"wrote {h.n} {h.k} {h.e()} -> {args.out}")
    else:
        sys.stdout.write(render_report(h, "json") + "\n")
    return 0


def _cmd_bounds(args) -> int:
    rep = constructions.bound_report(args.n, args.k, args.s)
    print(render_report(rep, args.format))
    return 0


def _cmd_solve(args) -> int:
    h = _load(args.infile)
    mode = "rational" if args.exact_lp else "float"
    what = args.what
    if what == "nu":
        value, witness = max_matching(h, limit=args.limit)
        cert = {"edges": [list(e) for e in witness.edges]}
    elif what == "tau":
        value, witness = min_vertex_cover(h, limit=args.limit)
        cert = {"vertices": sorted(witness.vertices) if witness else None}
    elif what == "alpha":
        value, wset = max_independent_set(h)
        cert = {"vertices": sorted(wset)}
    elif what == "nustar":
        fa = fractional_matching(h, mode)
        value = fa.value
        cert = {"weights": {" ".join(map(str, e)): to_jsonable(w) for e, w in fa.weights.items()}}
    elif what == "taustar":
        fa = fractional_cover(h, mode)
        value = fa.value
        cert = {"weights": {str(v): to_jsonable(w) for v, w in fa.weights.items()}}
    else:
        raise AssertionError(what)
    print(json.dumps({"what": what, "value": to_jsonable(value), "certificate": cert}, indent=2))
    return 0


def _cmd_shift(args) -> int:
    h = _load(args.infile)
    out, trace = shifting.stabilize(h)
    if args.out:
        write_hg(out, args.out)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump({"rounds": trace.rounds, "steps": trace.steps}, fh)
    print(f"stable={shifting.is_stable(out)} e={out.e()} rounds={trace.rounds}")
    return 0


def _cmd_closeness(args) -> int:
    h = _load(args.infile)
    search = "exhaustive" if args.exhaustive else "heuristic"
    try:
        if args.target == "cover":
            rep = stability.closeness_to_cover(h, args.s, search)
        else:
            rep = stability.closeness_to_clique(h, args.s, search)
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return 2
    print(render_report(rep, args.format))
    return 0


def _cmd_crossover(args) -> int:
    if args.table:
        rows = stability.bound_table(args.n)
        print(render_report(rows, "tsv"))
        return 0
    root = stability.crossover_root()
    closed = stability.crossover_root_closed_form()
    overtake = stability.clique_overtakes_at(args.n) if args.n else None
    print(f"root\t{root:.12f}")
    print(f"closed_form\t{closed:.12f}")
    print(f"gap(5/18)\t{stability.crossover_gap(5 / 18):.9f}")
    if overtake is not None:
        print(f"clique_overtakes_at\t{overtake}")
    return 0


def _cmd_round(args) -> int:
    h = _load(args.infile)
    res = rounding.pipeline(
        h,
        args.s,
        t=args.t,
        seed=args.seed,
        matching_strategy=args.strategy,
    )
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(to_jsonable(res), fh, indent=2)
    print(f"{res.status} matching_size={res.matching.size} r={res.r} t={res.t}")
    return 0 if res.success else 1


def _cmd_verify(args) -> int:
    constraint = (
        verify.NU_LE_S if args.constraint == "nu" else verify.NU_LE_S_TAU_GT_S
    )
    try:
        res = verify.verify_extremal(
            args.n, args.k, args.s, constraint,
            method="pruned" if args.pruned else "exhaustive",
            budget_ms=args.budget_ms,
        )
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return 2
    print(render_report(res, args.format))
    if res.status.startswith("budget"):
        return 2
    if res.matches_bound is False:
        return 3
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hypermatch",
        description="extremal hypergraph matching toolbox",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an extremal family")
    p.add_argument("--family", choices=["cover", "clique", "hm", "a"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bounds", help="closed-form bound report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--format", choices=["json", "tsv"], default="tsv")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("solve", help="exact or fractional optimum")
    p.add_argument("--what", choices=["nu", "tau", "alpha", "nustar", "taustar"], required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--exact-lp", action="store_true")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("shift", help="stabilize by iterated shifts")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--trace", default=None)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("closeness", help="distance to an extremal family")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--target", choices=["cover", "clique"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.set_defaults(func=_cmd_closeness)

    p = sub.add_parser("crossover", help="bound crossover numerics")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=_cmd_crossover)

    p = sub.add_parser("round", help="fractional-to-integral rounding pipeline")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=["greedy", "nibble"], default="greedy")
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_round)

    p = sub.add_parser("verify", help="exhaustive extremal verification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--constraint", choices=["nu", "nutau"], default="nutau")
    p.add_argument("--pruned", action="store_true")
    p.add_argument("--budget-ms", type=float, default=None)
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.set_defaults(func=_cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
