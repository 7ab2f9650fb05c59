"""Plücker coordinate alphabet and monomials in it.

The affine Plücker coordinates on the chart ``p_ij != 0`` are written
``u12, u13, ...`` (leaf labels are single digits since n <= 9).  A monomial
such as ``u13*u24/u12*u34`` is a :class:`PluckerMonomial`; the torus-invariant
ones (every leaf appears with total exponent zero) are the functions on the
moduli space, cross-ratios being the basic examples.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import InvalidArgument

Pair = tuple[int, int]


def pair(k: int, l: int) -> Pair:
    if k == l:
        raise InvalidArgument(f"pair needs two distinct leaves, got {k},{l}")
    return (k, l) if k < l else (l, k)


def pairs(n: int) -> list[Pair]:
    """All unordered pairs of [n] in lexicographic order (12, 13, ..., (n-1)n)."""
    return list(itertools.combinations(range(1, n + 1), 2))


def symbol(k: int, l: int) -> str:
    a, b = pair(k, l)
    return f"u{a}{b}"


_SYMBOL = re.compile(r"^u(\d)(\d)$")
_FACTOR = re.compile(r"^u(\d)(\d)(?:\^(\d+))?$")


def parse_symbol(s: str) -> Pair:
    m = _SYMBOL.match(s.strip())
    if not m:
        raise InvalidArgument(f"not a Plücker symbol: {s!r}")
    return pair(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class PluckerMonomial:
    """A Laurent monomial in the Plücker coordinates ``u_kl``.

    ``exps`` is a sorted tuple of ``(pair, exponent)`` with nonzero exponents.
    """

    exps: tuple[tuple[Pair, int], ...]

    @classmethod
    def from_mapping(cls, m: Mapping[Pair, int]) -> "PluckerMonomial":
        acc: dict[Pair, int] = {}
        for p, e in m.items():
            p = pair(*p)
            acc[p] = acc.get(p, 0) + e
        return cls(tuple(sorted((p, e) for p, e in acc.items() if e)))

    @classmethod
    def parse(cls, text: str) -> "PluckerMonomial":
        """Parse ``"u13*u24/u12*u34"`` (``^k`` powers allowed, ``1`` for empty)."""
        text = text.replace(" ", "")
        if "/" in text:
            num, _, den = text.partition("/")
            if "/" in den:
                raise InvalidArgument(f"more than one '/' in {text!r}")
        else:
            num, den = text, ""
        acc: dict[Pair, int] = {}
        for part, sign in ((num, 1), (den, -1)):
            if part in ("", "1"):
                continue
            for factor in part.split("*"):
                m = _FACTOR.match(factor)
                if not m:
                    raise InvalidArgument(f"bad factor {factor!r} in {text!r}")
                p = pair(int(m.group(1)), int(m.group(2)))
                acc[p] = acc.get(p, 0) + sign * int(m.group(3) or 1)
        return cls.from_mapping(acc)

    def as_dict(self) -> dict[Pair, int]:
        return dict(self.exps)

    def leaves(self) -> set[int]:
        return {x for p, _ in self.exps for x in p}

    def max_leaf(self) -> int:
        return max(self.leaves(), default=0)

    def is_torus_invariant(self) -> bool:
        """True iff every leaf has total exponent 0 (invariant under the n-torus)."""
        total: dict[int, int] = {}
        for (k, l), e in self.exps:
            total[k] = total.get(k, 0) + e
            total[l] = total.get(l, 0) + e
        return all(v == 0 for v in total.values())

    def __mul__(self, other: "PluckerMonomial") -> "PluckerMonomial":
        acc = self.as_dict()
        for p, e in other.exps:
            acc[p] = acc.get(p, 0) + e
        return PluckerMonomial.from_mapping(acc)

    def __truediv__(self, other: "PluckerMonomial") -> "PluckerMonomial":
        return self * other ** -1

    def __pow__(self, k: int) -> "PluckerMonomial":
        return PluckerMonomial.from_mapping({p: e * k for p, e in self.exps})

    def __str__(self) -> str:
        def side(items):
            out = []
            for p, e in items:
                s = symbol(*p)
                out.append(s if e == 1 else f"{s}^{e}")
            return "*".join(out)

        num = side((p, e) for p, e in self.exps if e > 0)
        den = side((p, -e) for p, e in self.exps if e < 0)
        if not den:
            return num or "1"
        return f"{num or '1'}/{den}"


def cross_ratio(i: int, j: int, k: int, l: int) -> PluckerMonomial:
    """The cross-ratio ``(u_il u_jk) / (u_ik u_jl)``."""
    if len({i, j, k, l}) != 4:
        raise InvalidArgument(f"cross-ratio needs four distinct leaves, got {(i, j, k, l)}")
    return PluckerMonomial.from_mapping({pair(i, l): 1, pair(j, k): 1, pair(i, k): -1, pair(j, l): -1})


@lru_cache(maxsize=None)
def _cross_ratios(n: int) -> tuple[PluckerMonomial, ...]:
    out = []
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        out.append(cross_ratio(a, d, b, c))  # (u_ac u_bd)/(u_ab u_cd)
        out.append(cross_ratio(a, c, b, d))  # (u_ad u_bc)/(u_ab u_cd)
        out.append(cross_ratio(a, b, c, d))  # (u_ad u_bc)/(u_ac u_bd)
    return tuple(out)


def all_cross_ratios(n: int) -> Iterator[PluckerMonomial]:
    """Three cross-ratios per 4-subset a<b<c<d, one for each ordered choice of pairings."""
    return iter(_cross_ratios(n))
