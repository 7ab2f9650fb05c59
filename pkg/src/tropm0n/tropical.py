"""Tropical side: the embedding into R^(n choose 2)/im L and the section valuation.

A metric tree with distance matrix d gives the point x_kl = -d(k,l)/2.  The
linear map L sends a in Q^n to (a_k + a_l)_kl; two vectors represent the same
tropical point iff they differ by something in im L.  :func:`gauge_fix` picks
the representative vanishing at 12, 13, ..., 1n and 23.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidArgument
from .plucker import Pair, PluckerMonomial, pair, pairs, symbol
from .trees import MarkedMetricTree, Split, distance_matrix, enumerate_types, _check_n
from .valuation import MonomialValuation, attained_twice_max, common_scale, monomial_weight


@dataclass(frozen=True)
class TropPoint:
    """A representative in Q^(n choose 2); ``gauge`` marks the canonical one."""

    n: int
    coords: Mapping[Pair, Fraction]
    gauge: bool = False

    def __post_init__(self):
        c = {pair(*p): Fraction(v) for p, v in dict(self.coords).items()}
        if set(c) != set(pairs(self.n)):
            raise InvalidArgument(f"coordinates must cover all {len(pairs(self.n))} pairs of [{self.n}]")
        object.__setattr__(self, "coords", c)

    def __getitem__(self, kl) -> Fraction:
        return self.coords[pair(*kl)]

    def vector(self) -> tuple[Fraction, ...]:
        """Coordinates in the order 12, 13, ..., (n-1)n."""
        return tuple(self.coords[p] for p in pairs(self.n))

    def __add__(self, other: "TropPoint") -> "TropPoint":
        if self.n != other.n:
            raise InvalidArgument("adding points of different n")
        return TropPoint(self.n, {p: self.coords[p] + other.coords[p] for p in self.coords})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropPoint):
            return NotImplemented
        return self.n == other.n and self.vector() == other.vector() and self.gauge == other.gauge

    def __hash__(self) -> int:
        return hash((self.n, self.vector(), self.gauge))


def lineality(n: int, a: Iterable) -> TropPoint:
    """L(a): the vector (a_k + a_l)_kl."""
    a = [Fraction(x) for x in a]
    if len(a) != n:
        raise InvalidArgument(f"L needs {n} entries, got {len(a)}")
    return TropPoint(n, {(k, l): a[k - 1] + a[l - 1] for k, l in pairs(n)})


def from_distances(d, n: int | None = None) -> TropPoint:
    n = n if n is not None else d.n
    return TropPoint(n, {(k, l): -Fraction(d[k, l]) / 2 for k, l in pairs(n)})


def plucker_vector(t: MarkedMetricTree) -> TropPoint:
    return from_distances(distance_matrix(t))


def gauge_fix(x: TropPoint) -> TropPoint:
    n = x.n
    if n < 3:
        raise InvalidArgument("gauge fixing needs n >= 3")
    a1 = (x[2, 3] - x[1, 2] - x[1, 3]) / 2
    a = [a1] + [-x[1, j] - a1 for j in range(2, n + 1)]
    y = x + lineality(n, a)
    return TropPoint(n, y.coords, gauge=True)


def same_class(x: TropPoint, y: TropPoint) -> bool:
    return gauge_fix(x).vector() == gauge_fix(y).vector()


@dataclass(frozen=True)
class IndexSet:
    """I(ij) = {il, jl : l != i, j}."""

    n: int
    base: Pair
    members: tuple[Pair, ...] = field(default=())

    @classmethod
    def caterpillar(cls, n: int, i: int, j: int) -> "IndexSet":
        if i == j:
            raise InvalidArgument("base pair needs distinct leaves")
        ms = sorted({pair(i, l) for l in range(1, n + 1) if l not in (i, j)} | {pair(j, l) for l in range(1, n + 1) if l not in (i, j)})
        return cls(n, pair(i, j), tuple(ms))


def local_projection(x: TropPoint, I: IndexSet) -> dict[Pair, Fraction]:
    """(x_kl - x_ij) for kl in I, on the distance representative."""
    if x.gauge:
        raise InvalidArgument("local_projection expects the distance representative, not a gauge-fixed point")
    xij = x[I.base]
    return {kl: x[kl] - xij for kl in I.members}


# ---------------------------------------------------------------------------
# cone complex


@dataclass(frozen=True)
class Cone:
    splits: tuple[Split, ...]

    @property
    def dim(self) -> int:
        return len(self.splits)

    @property
    def key(self) -> tuple:
        return tuple(s.key for s in self.splits)

    def label(self) -> str:
        return "{" + ",".join(s.label() for s in self.splits) + "}"


@dataclass(frozen=True)
class ConeComplex:
    n: int
    cones: tuple[Cone, ...]

    def by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cones:
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def maximal(self) -> list[Cone]:
        top = max(c.dim for c in self.cones)
        return [c for c in self.cones if c.dim == top]

    def faces(self, cone: Cone) -> list[Cone]:
        """Every cone whose split set is contained in ``cone``'s, itself included."""
        mine = set(cone.splits)
        return [c for c in self.cones if set(c.splits) <= mine]


def cone_complex(n: int) -> ConeComplex:
    _check_n(n, 3, 8)
    cones = sorted((Cone(ss) for ss in enumerate_types(n)), key=lambda c: (c.dim, c.key))
    return ConeComplex(n, tuple(cones))


# ---------------------------------------------------------------------------
# section valuation


def plucker_alphabet(n: int) -> list[str]:
    return [symbol(k, l) for k, l in pairs(n)]


def section_weights_from_distances(d, n: int, i: int, j: int) -> MonomialValuation:
    if i == j:
        raise InvalidArgument("base pair needs distinct leaves")
    for x in (i, j):
        if not 1 <= x <= n:
            raise InvalidArgument(f"leaf {x} out of range 1..{n}")
    dij = d[i, j]
    return MonomialValuation({symbol(k, l): (Fraction(d[k, l]) - dij) / 2 for k, l in pairs(n)})


def section_valuation(t: MarkedMetricTree, i: int, j: int) -> MonomialValuation:
    """Weights w(u_kl) = (d(k,l) - d(i,j))/2 on the full Plücker alphabet, so w(u_ij) = 0."""
    return section_weights_from_distances(distance_matrix(t), t.n, i, j)


def monomial_value(v: MonomialValuation, m: PluckerMonomial) -> Fraction:
    return monomial_weight(v, {symbol(*p): e for p, e in m.exps})


class PairWeights:
    """A Plücker-alphabet valuation keyed by pair and scaled to integers, for hot loops."""

    def __init__(self, v: MonomialValuation, n: int):
        ps = pairs(n)
        self.scale, ints = common_scale(v.weight(symbol(k, l)) for k, l in ps)
        self.ints = dict(zip(ps, ints))

    def value(self, m: PluckerMonomial) -> Fraction:
        w = self.ints
        return Fraction(sum(e * w[p] for p, e in m.exps), self.scale)


def tropical_plucker_check(w: MonomialValuation, n: int) -> bool:
    """Max of the three pairing sums is attained twice on every quadruple."""
    W = {(k, l): w.weight(symbol(k, l)) for k, l in pairs(n)}
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        if not attained_twice_max(W[a, b] + W[c, d], W[a, c] + W[b, d], W[a, d] + W[b, c]):
            return False
    return True
