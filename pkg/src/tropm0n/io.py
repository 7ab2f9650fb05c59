"""JSON encodings for trees, tropical points, skeleton points and polynomials.

Rationals are always written as ``"p/q"`` strings in lowest terms with q > 0
(so 3 is ``"3/1"``); on input a bare integer or ``"3"`` is also accepted.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import InvalidArgument
from .plucker import pairs
from .skeleton import SkeletonPoint
from .trees import MarkedMetricTree, MarkedTree, Split
from .tropical import TropPoint
from .valuation import INF, LaurentPoly

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def fmt_q(q) -> str:
    if q == INF:
        return "inf"
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_q(s: Any) -> Fraction:
    if isinstance(s, bool):
        raise InvalidArgument(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InvalidArgument(f"rationals must be 'p/q' strings, got {s!r}")
    m = _RAT.match(s)
    if not m:
        raise InvalidArgument(f"not a rational: {s!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise InvalidArgument(f"zero denominator in {s!r}")
    return Fraction(int(m.group(1)), den)


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, str) and x.strip().lstrip("-").isdigit():
            return int(x)
        raise InvalidArgument(f"{what} must be an integer, got {x!r}")
    return x


def _obj(d: Any, keys: tuple[str, ...], what: str) -> dict:
    if not isinstance(d, dict):
        raise InvalidArgument(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise InvalidArgument(f"{what} lacks {missing}")
    return d


# ---------------------------------------------------------------------------
# trees


def tree_to_json(t: MarkedMetricTree | MarkedTree) -> dict:
    if isinstance(t, MarkedTree):
        return combinatorial_tree_to_json(t)
    tree = t.tree
    return {
        "n": tree.n,
        "edges": [[u, v] for u, v in tree.edges],
        "leaf_labels": {str(k): v for k, v in enumerate(tree.leaf_vertices, start=1)},
        "lengths": {f"{u}-{v}": fmt_q(x) for (u, v), x in sorted(t.lengths.items())},
    }


def combinatorial_tree_to_json(t: MarkedTree) -> dict:
    """Tree record without lengths (for enumeration output)."""
    return {
        "n": t.n,
        "edges": [[u, v] for u, v in t.edges],
        "leaf_labels": {str(k): v for k, v in enumerate(t.leaf_vertices, start=1)},
        "lengths": {},
        "splits": [sorted(s.side) for s in sorted(t.edge_splits.values())],
    }


def tree_from_json(d: Any) -> MarkedMetricTree:
    d = _obj(d, ("n", "edges", "leaf_labels"), "tree")
    n = _int(d["n"], "n")
    edges = []
    for e in d["edges"]:
        if not isinstance(e, list) or len(e) != 2:
            raise InvalidArgument(f"edge {e!r} must be a pair of vertex ids")
        edges.append((_int(e[0], "vertex id"), _int(e[1], "vertex id")))
    labels = d["leaf_labels"]
    if not isinstance(labels, dict) or sorted(labels, key=str) != sorted((str(k) for k in range(1, n + 1)), key=str):
        raise InvalidArgument(f"leaf_labels must have keys '1'..'{n}'")
    leaves = tuple(_int(labels[str(k)], "vertex id") for k in range(1, n + 1))
    tree = MarkedTree(n, tuple(edges), leaves)
    lengths = {}
    for key, val in (d.get("lengths") or {}).items():
        parts = str(key).split("-")
        if len(parts) != 2:
            raise InvalidArgument(f"length key {key!r} must look like 'u-v'")
        u, v = (_int(p, "vertex id") for p in parts)
        lengths[(min(u, v), max(u, v))] = parse_q(val)
    return MarkedMetricTree(tree, lengths)


# ---------------------------------------------------------------------------
# tropical points


def trop_point_to_json(x: TropPoint) -> dict:
    return {"n": x.n, "coords": {f"{k},{l}": fmt_q(x[k, l]) for k, l in pairs(x.n)}, "gauge": bool(x.gauge)}


def trop_point_from_json(d: Any) -> TropPoint:
    d = _obj(d, ("n", "coords"), "tropical point")
    n = _int(d["n"], "n")
    coords = {}
    for key, val in d["coords"].items():
        parts = str(key).split(",")
        if len(parts) != 2:
            raise InvalidArgument(f"coordinate key {key!r} must look like 'k,l'")
        k, l = (_int(p.strip(), "leaf") for p in parts)
        coords[(k, l)] = parse_q(val)
    return TropPoint(n, coords, gauge=bool(d.get("gauge", False)))


# ---------------------------------------------------------------------------
# skeleton points


def skeleton_point_to_json(p: SkeletonPoint) -> dict:
    return {"n": p.n, "splits": [sorted(s.side) for s in p.splits], "alpha": [fmt_q(a) for a in p.alpha]}


def skeleton_point_from_json(d: Any) -> SkeletonPoint:
    d = _obj(d, ("n", "splits", "alpha"), "skeleton point")
    n = _int(d["n"], "n")
    if len(d["splits"]) != len(d["alpha"]):
        raise InvalidArgument("splits and alpha must be parallel arrays")
    splits = tuple(Split.of(n, [_int(x, "leaf") for x in side]) for side in d["splits"])
    return SkeletonPoint(n, splits, tuple(parse_q(a) for a in d["alpha"]))


# ---------------------------------------------------------------------------
# polynomials


def poly_to_json(f: LaurentPoly) -> dict:
    return {
        "alphabet": list(f.alphabet),
        "terms": [{"exps": list(e), "vK": fmt_q(v)} for e, v in sorted(f.terms.items())],
    }


def poly_from_json(d: Any) -> LaurentPoly:
    d = _obj(d, ("alphabet", "terms"), "polynomial")
    alphabet = d["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise InvalidArgument("alphabet must be a list of strings")
    terms = []
    for t in d["terms"]:
        t = _obj(t, ("exps", "vK"), "term")
        terms.append(([_int(e, "exponent") for e in t["exps"]], parse_q(t["vK"])))
    return LaurentPoly.from_terms(alphabet, terms)


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=False, ensure_ascii=False)
