"""Command-line front end.

Exit status: 0 success, 1 a theorem check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io
from .errors import IncompatibleSplits, InvalidArgument, Unsupported, DegenerateStratum
from .harness import SweepConfig, run_cones, summarize
from .plucker import PluckerMonomial
from .skeleton import intersection_graph, skeleton_point_of, skeleton_valuation
from .trees import enumerate_stable_trees, forget_leaf
from .tropical import cone_complex, gauge_fix, monomial_value, plucker_vector, section_valuation
from .valuation import PI, MonomialValuation, evaluate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}") from None
    return i, j


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


# ---------------------------------------------------------------------------
# subcommands


def cmd_trees(args) -> int:
    trees = enumerate_stable_trees(args.n, trivalent_only=args.trivalent_only)
    _emit([io.combinatorial_tree_to_json(t) for t in trees])
    return EXIT_OK


def cmd_cones(args) -> int:
    cc = cone_complex(args.n)
    _emit(
        {
            "n": cc.n,
            "by_dim": {str(k): v for k, v in cc.by_dim().items()},
            "cones": [{"dim": c.dim, "splits": [sorted(s.side) for s in c.splits], "faces": len(cc.faces(c))} for c in cc.cones],
        }
    )
    return EXIT_OK


def cmd_graph(args) -> int:
    g = intersection_graph(args.n)
    if args.format == "dot":
        sys.stdout.write(g.to_dot())
    else:
        _emit(g.to_json())
    return EXIT_OK


def cmd_embed(args) -> int:
    t = io.tree_from_json(_load(args.tree))
    x = plucker_vector(t)
    _emit(io.trop_point_to_json(gauge_fix(x) if args.gauge else x))
    return EXIT_OK


def cmd_eval(args) -> int:
    f = io.poly_from_json(_load(args.poly))
    symbols = [s for s in f.alphabet if s != PI]
    if args.side == "section":
        if not args.tree:
            raise UsageError("--side section needs --tree")
        t = io.tree_from_json(_load(args.tree))
        i, j = args.base or (1, t.n)
        sect = section_valuation(t, i, j)
        weights = {}
        for s in symbols:
            m = PluckerMonomial.parse(s)
            if m.max_leaf() > t.n:
                raise InvalidArgument(f"symbol {s!r} uses a leaf beyond n={t.n}")
            weights[s] = monomial_value(sect, m)
        value = evaluate(MonomialValuation(weights), f)
    else:
        if args.splits:
            p = io.skeleton_point_from_json(_load(args.splits))
        elif args.tree:
            p = skeleton_point_of(io.tree_from_json(_load(args.tree)))
        else:
            raise UsageError("--side skeleton needs --splits or --tree")
        skel = skeleton_valuation(p, args.base)
        value = skel.evaluate(f)
    sys.stdout.write(io.fmt_q(value) + "\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    grid = tuple(io.parse_q(g) for g in args.grid.split(",")) if args.grid else None
    kw = {"grid": grid} if grid else {}
    cfg = SweepConfig(args.n_from, args.n_to, samples=args.samples, polys=args.polys, seed=args.seed, jobs=args.jobs, **kw)
    records = run_cones(cfg) if args.n_from <= args.n_to else []
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(io.dumps(r) + "\n")
    summary = summarize(cfg, records)
    _emit(summary)
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAIL


def cmd_forget(args) -> int:
    t = io.tree_from_json(_load(args.tree))
    _emit(io.tree_to_json(forget_leaf(t, args.leaf)))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropm0n", description="Tropical and skeleton valuations on M_{0,n}.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trees", help="enumerate stable n-marked trees")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trivalent-only", action="store_true")
    s.add_argument("--format", choices=["json"], default="json")
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("cones", help="cone complex of tree types")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cones)

    s = sub.add_parser("graph", help="boundary divisor intersection graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("embed", help="tropical Plücker point of a metric tree")
    s.add_argument("--tree", required=True)
    s.add_argument("--gauge", action="store_true", help="gauge-fix the output")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("eval", help="evaluate a valuation on a polynomial")
    s.add_argument("--side", choices=["section", "skeleton"], required=True)
    s.add_argument("--tree")
    s.add_argument("--splits")
    s.add_argument("--poly", required=True)
    s.add_argument("--base", type=_pair)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compare", help="sweep section vs skeleton valuations")
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.add_argument("--samples", type=_positive, default=5)
    s.add_argument("--polys", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--grid", help="comma-separated positive rationals, e.g. 1,1/2,7/3")
    s.add_argument("--records", help="write one JSON line per cone to this file")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("forget", help="forget a leaf and stabilize")
    s.add_argument("--tree", required=True)
    s.add_argument("--leaf", type=int, required=True)
    s.set_defaults(func=cmd_forget)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidArgument, IncompatibleSplits, Unsupported, DegenerateStratum) as exc:
        sys.stderr.write(f"tropm0n {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
