"""Skeleton side: boundary divisors, strata, and skeleton valuations.

Boundary divisors of the compactified moduli space are indexed by splits, and
a set of divisors meets iff its splits are pairwise compatible.  A point of
the skeleton is a stratum S together with weights alpha(s) >= 0 (and the
uniformizer normalized to 1).  Its valuation is monomial in a system of
cross-ratio local generators, one per split, with ``v(g_s) = alpha(s)``.

The value on any torus-invariant Plücker monomial m is computed from the
splits alone: ``sum_s alpha(s) * ord_s(m)`` where ``ord_s`` counts, with
signs, how often s separates the pairs occurring in m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegenerateStratum, IncompatibleSplits, InvalidArgument, Unsupported
from .plucker import PluckerMonomial, cross_ratio
from .trees import (
    MarkedMetricTree,
    MarkedTree,
    Split,
    _check_n,
    all_splits,
    check_compatible,
    tree_from_splits,
)
from .valuation import LaurentPoly, MonomialValuation, common_scale, evaluate

BoundaryDivisor = Split


def boundary_divisors(n: int) -> list[BoundaryDivisor]:
    if not isinstance(n, int) or n < 4:
        raise InvalidArgument(f"boundary divisors need n >= 4, got {n!r}")
    return all_splits(n)


def keel_intersects(a: BoundaryDivisor, b: BoundaryDivisor) -> bool:
    """Some inclusion among the sides {I, J} x {I', J'}.

    Deliberately written on both sides of each split, without the canonical
    side shortcut used by :meth:`Split.compatible`.
    """
    if a.n != b.n:
        raise InvalidArgument(f"divisors on different n: {a.n} and {b.n}")
    for x in (a.side, a.other):
        for y in (b.side, b.other):
            if x <= y or y <= x:
                return True
    return False


# ---------------------------------------------------------------------------
# n = 5: Kapranov's model as the blow-up of the plane in four points


@dataclass(frozen=True)
class DivisorClassN5:
    """The class h*H + sum e_i E_i, so E_1 is (0; 1,0,0,0) and H-E_3-E_4 is (1; 0,0,-1,-1)."""

    h: int
    e: tuple[int, int, int, int]

    def __str__(self) -> str:
        parts = [] if not self.h else ["H" if self.h == 1 else f"{self.h}H"]
        for i, c in enumerate(self.e, start=1):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}{'' if abs(c) == 1 else abs(c)}E{i}")
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s


def kapranov_class(d: BoundaryDivisor) -> DivisorClassN5:
    """delta_{i5} is the exceptional curve E_i; delta_{ij} is the line H - E_k - E_l."""
    if d.n != 5:
        raise Unsupported(f"Kapranov classes are only tabulated for n=5, got n={d.n}")
    two = sorted(d.side) if len(d.side) == 2 else sorted(d.other)
    e = [0, 0, 0, 0]
    if 5 in two:
        e[two[0] - 1] = 1
        return DivisorClassN5(0, tuple(e))
    for k in set(range(1, 5)) - set(two):
        e[k - 1] = -1
    return DivisorClassN5(1, tuple(e))


def picard_pairing(a: DivisorClassN5, b: DivisorClassN5) -> int:
    """(H,H) = 1, (E_i,E_j) = -delta_ij, (H,E_i) = 0."""
    return a.h * b.h - sum(x * y for x, y in zip(a.e, b.e))


def kapranov_label(d: BoundaryDivisor) -> str:
    """``E{i}`` for the exceptional curve over p_i, ``E{kl}`` for the line through p_k, p_l."""
    c = kapranov_class(d)
    if c.h == 0:
        return f"E{c.e.index(1) + 1}"
    return "E" + "".join(str(i) for i, x in enumerate(c.e, start=1) if x)


@dataclass(frozen=True)
class IntersectionGraph:
    n: int
    nodes: tuple[BoundaryDivisor, ...]
    edges: tuple[tuple[BoundaryDivisor, BoundaryDivisor], ...]

    def node_name(self, d: BoundaryDivisor) -> str:
        return d.label()

    def node_label(self, d: BoundaryDivisor) -> str:
        return kapranov_label(d) if self.n == 5 else d.label()

    def degree(self) -> dict[BoundaryDivisor, int]:
        deg = {v: 0 for v in self.nodes}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def adjacency(self) -> dict[BoundaryDivisor, set]:
        adj = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def girth(self) -> float:
        """Length of a shortest cycle (BFS from every vertex); inf for a forest."""
        adj = self.adjacency()
        best = float("inf")
        for root in self.nodes:
            dist = {root: 0}
            parent = {root: None}
            queue = [root]
            for v in queue:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        queue.append(w)
                    elif parent[v] != w:
                        best = min(best, dist[v] + dist[w] + 1)
        return best

    def to_dot(self) -> str:
        lines = [f"graph boundary_n{self.n} {{"]
        for v in self.nodes:
            lines.append(f'  {self.node_name(v)} [label="{self.node_label(v)}"];')
        for a, b in self.edges:
            lines.append(f"  {self.node_name(a)} -- {self.node_name(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": [{"id": self.node_name(v), "label": self.node_label(v), "leaves": sorted(v.side)} for v in self.nodes],
            "edges": [[self.node_name(a), self.node_name(b)] for a, b in self.edges],
        }


def intersection_graph(n: int) -> IntersectionGraph:
    _check_n(n, 4, 8)
    nodes = tuple(boundary_divisors(n))
    edges = tuple((a, b) for a, b in itertools.combinations(nodes, 2) if keel_intersects(a, b))
    return IntersectionGraph(n, nodes, edges)


# ---------------------------------------------------------------------------
# strata and skeleton points


@dataclass(frozen=True, eq=False)
class SkeletonPoint:
    """A stratum (compatible splits, sorted) with weights alpha >= 0; alpha(pi) = 1."""

    n: int
    splits: tuple[Split, ...]
    alpha: tuple[Fraction, ...]
    pi_value: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.splits) != len(self.alpha):
            raise InvalidArgument("splits and alpha must have the same length")
        if Fraction(self.pi_value) != 1:
            raise InvalidArgument("alpha(pi) is normalized to 1")
        for s in self.splits:
            if s.n != self.n:
                raise InvalidArgument(f"split {s} is not a split of [{self.n}]")
        if len(set(self.splits)) != len(self.splits):
            raise InvalidArgument("repeated split in stratum")
        check_compatible(self.splits)
        pairs_ = sorted(zip(self.splits, (Fraction(a) for a in self.alpha)))
        if any(a < 0 for _, a in pairs_):
            raise InvalidArgument("alpha values must be >= 0")
        object.__setattr__(self, "splits", tuple(s for s, _ in pairs_))
        object.__setattr__(self, "alpha", tuple(a for _, a in pairs_))
        object.__setattr__(self, "pi_value", Fraction(1))

    @classmethod
    def from_mapping(cls, n: int, alpha: Mapping[Split, object]) -> "SkeletonPoint":
        return cls(n, tuple(alpha), tuple(Fraction(v) for v in alpha.values()))

    def as_dict(self) -> dict[Split, Fraction]:
        return dict(zip(self.splits, self.alpha))

    def contract(self) -> "SkeletonPoint":
        """Drop splits with alpha = 0 (pass to the face that actually contains the point)."""
        keep = [(s, a) for s, a in zip(self.splits, self.alpha) if a != 0]
        return SkeletonPoint(self.n, tuple(s for s, _ in keep), tuple(a for _, a in keep))

    def key(self) -> tuple:
        return (self.n, tuple((s.key, a) for s, a in zip(self.splits, self.alpha)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeletonPoint):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        body = ", ".join(f"{s.label()}:{a}" for s, a in zip(self.splits, self.alpha)) or "empty"
        return f"SkeletonPoint(n={self.n}: {body})"


@dataclass(frozen=True)
class StratumCone:
    """The cone R_{>=0}^S with coordinates indexed by the splits in S."""

    n: int
    splits: tuple[Split, ...]

    @property
    def dim(self) -> int:
        return len(self.splits)

    def faces(self) -> list["StratumCone"]:
        return [StratumCone(self.n, sub) for r in range(self.dim + 1) for sub in itertools.combinations(self.splits, r)]


def stratum_cone(p: SkeletonPoint | Iterable[Split], n: int | None = None) -> StratumCone:
    if isinstance(p, SkeletonPoint):
        return StratumCone(p.n, p.splits)
    ss = list(p)
    if n is None:
        if not ss:
            raise InvalidArgument("n is needed for an empty stratum")
        n = ss[0].n
    return StratumCone(n, tuple(check_compatible(ss)))


def skeleton_point_of(t: MarkedMetricTree) -> SkeletonPoint:
    return SkeletonPoint.from_mapping(t.n, t.split_lengths())


def trop_of_skeleton_point(p: SkeletonPoint) -> MarkedMetricTree:
    zero = [s for s, a in zip(p.splits, p.alpha) if a == 0]
    if zero:
        raise DegenerateStratum(f"alpha vanishes on {[s.label() for s in zero]}; contract these splits first")
    return MarkedMetricTree.from_split_lengths(p.n, p.as_dict())


def forget_stratum(p: SkeletonPoint, leaf: int) -> SkeletonPoint:
    """Image under forgetting ``leaf``: collapse short splits, add alpha on merged ones."""
    if not 1 <= leaf <= p.n:
        raise InvalidArgument(f"leaf {leaf} out of range 1..{p.n}")
    if p.n < 4:
        raise InvalidArgument("forgetting a leaf needs n >= 4")
    acc: dict[Split, Fraction] = {}
    for s, a in zip(p.splits, p.alpha):
        img = s.forget(leaf)
        if img is not None:
            acc[img] = acc.get(img, Fraction(0)) + a
    return SkeletonPoint.from_mapping(p.n - 1, acc)


# ---------------------------------------------------------------------------
# local generators and the skeleton valuation


def _separated(s: Split, m: PluckerMonomial) -> int:
    side = s.side
    return sum(e for (k, l), e in m.exps if (k in side) != (l in side))


def ord_split(s: Split, m: PluckerMonomial) -> Fraction:
    """Order of vanishing of m along the divisor of s: half the signed count of separated pairs."""
    return Fraction(_separated(s, m), 2)


def _branches(t: MarkedTree, v: int, avoid: int) -> list[frozenset]:
    """Leaf sets of the branches at vertex v, excluding the one through ``avoid``."""
    return [t.leaves_beyond(v, w) for w in t.adjacency[v] if w != avoid]


def _generator_for_edge(t: MarkedTree, u: int, v: int, i: int, j: int) -> PluckerMonomial:
    """A cross-ratio with ord vector e_s for the split s of edge u-v.

    If i sits beyond u and j beyond v, use (u_il u_jk)/(u_ik u_jl) with k next
    to i at u and l next to j at v, smallest labels first.  Otherwise take the
    lexicographically smallest quartet straddling the edge.
    """
    near, far = _branches(t, u, v), _branches(t, v, u)
    if any(i in b for b in near) and any(j in b for b in far):
        k = min(x for b in near if i not in b for x in b)
        l = min(x for b in far if j not in b for x in b)
        return cross_ratio(i, j, k, l)
    # smallest leaf on each side, then the smallest leaf of another branch on that side
    a_branch = min(near, key=min)
    b_branch = min(far, key=min)
    a, b = min(a_branch), min(b_branch)
    k = min(x for br in near if br is not a_branch for x in br)
    l = min(x for br in far if br is not b_branch for x in br)
    return cross_ratio(a, b, k, l)


def local_generators(p: SkeletonPoint, base: tuple[int, int] | None = None) -> list[tuple[Split, PluckerMonomial]]:
    """One cross-ratio per split of the stratum, in the stratum's split order.

    ``ord_{s'}(g_s)`` is 1 when s' = s and 0 otherwise, so the generators form
    a regular system of parameters along the stratum.
    """
    n = p.n
    i, j = base if base is not None else (1, n)
    if i == j:
        raise InvalidArgument("base leaves must differ")
    for x in (i, j):
        if not 1 <= x <= n:
            raise InvalidArgument(f"base leaf {x} out of range 1..{n}")
    if not p.splits:
        return []
    t = tree_from_splits(n, p.splits)
    out = []
    edge_of = {s: e for e, s in t.edge_splits.items()}
    for s in p.splits:
        u, v = edge_of[s]
        if i in t.leaves_beyond(v, u):
            g = _generator_for_edge(t, u, v, i, j)
        else:
            g = _generator_for_edge(t, v, u, i, j)
        if [ord_split(x, g) for x in p.splits] != [int(x == s) for x in p.splits]:
            raise RuntimeError(f"generator {g} for {s} is not unimodular on the stratum")
        out.append((s, g))
    return out


def index_rule_holds(gens: Iterable[PluckerMonomial]) -> bool:
    """Any three generators involve at least four distinct leaves between them."""
    gens = list(gens)
    if len(gens) < 3:
        return all(len(g.leaves()) >= 4 for g in gens)
    return all(len(a.leaves() | b.leaves() | c.leaves()) >= 4 for a, b, c in itertools.combinations(gens, 3))


@dataclass(frozen=True, eq=False)
class SkeletonValuation:
    """The monomial valuation v_alpha of a skeleton point.

    ``valuation`` is keyed by generator strings (plus ``pi``); :meth:`weight`
    extends it to every torus-invariant Plücker monomial.
    """

    point: SkeletonPoint
    generators: tuple[tuple[Split, PluckerMonomial], ...]
    valuation: MonomialValuation

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(str(g) for _, g in self.generators)

    def weight(self, m: PluckerMonomial | str) -> Fraction:
        if isinstance(m, str):
            m = PluckerMonomial.parse(m)
        if not m.is_torus_invariant():
            raise Unsupported(f"{m} is not torus-invariant, so it is not a function on the moduli space")
        if m.max_leaf() > self.point.n:
            raise InvalidArgument(f"{m} uses a leaf beyond n={self.point.n}")
        scale, alphas = self._scaled
        total = 0
        for side, a in zip(self._sides, alphas):
            total += a * sum(e for (k, l), e in m.exps if (k in side) != (l in side))
        return Fraction(total, 2 * scale)

    @cached_property
    def _scaled(self) -> tuple[int, list[int]]:
        return common_scale(self.point.alpha)

    @cached_property
    def _sides(self) -> list[frozenset]:
        return [s.side for s in self.point.splits]

    def evaluate(self, f: LaurentPoly) -> object:
        """Min-plus value of f, whose alphabet may mix generators, other monomials and ``pi``."""
        return evaluate(self.extended(f.alphabet), f)

    def extended(self, symbols: Iterable[str]) -> MonomialValuation:
        w = {}
        for s in symbols:
            if s == "pi":
                continue
            w[s] = self.valuation.weights[s] if s in self.valuation.weights else self.weight(s)
        return MonomialValuation(w)


def skeleton_valuation(p: SkeletonPoint, base: tuple[int, int] | None = None) -> SkeletonValuation:
    gens = local_generators(p, base)
    weights = {str(g): a for (s, g), a in zip(gens, p.alpha)}
    return SkeletonValuation(p, tuple(gens), MonomialValuation(weights))


def strata(n: int) -> list[tuple[Split, ...]]:
    """All realizable strata (compatible split sets) of [n]."""
    from .trees import enumerate_types

    return list(enumerate_types(n))


__all__ = [
    "BoundaryDivisor",
    "DivisorClassN5",
    "IncompatibleSplits",
    "IntersectionGraph",
    "SkeletonPoint",
    "SkeletonValuation",
    "StratumCone",
    "boundary_divisors",
    "forget_stratum",
    "index_rule_holds",
    "intersection_graph",
    "kapranov_class",
    "kapranov_label",
    "keel_intersects",
    "local_generators",
    "ord_split",
    "picard_pairing",
    "skeleton_point_of",
    "skeleton_valuation",
    "strata",
    "stratum_cone",
    "trop_of_skeleton_point",
]
