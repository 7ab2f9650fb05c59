"""Min-plus evaluation of monomial valuations on Laurent polynomials.

Everything is additive: a coefficient c is known only through v_K(c), and a
valuation with weight vector w sends ``sum c_b x^b`` to
``min_b (v_K(c_b) + <b, w>)``.  The zero polynomial evaluates to +inf.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InvalidArgument

Value = Union[Fraction, float]  # float only for math.inf
INF = math.inf

PI = "pi"  # reserved symbol for the uniformizer


def as_value(v) -> Value:
    if v is None or (isinstance(v, float) and math.isinf(v) and v > 0):
        return INF
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "oo"):
        return INF
    return Fraction(v)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of monomials with generic coefficients of prescribed valuation.

    ``terms`` maps exponent tuples (one entry per alphabet symbol) to v_K of
    the coefficient.  Zero coefficients (+inf) are never stored.
    """

    alphabet: tuple[str, ...]
    terms: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise InvalidArgument(f"repeated symbol in alphabet {alphabet}")
        clean = {}
        for exps, v in dict(self.terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(alphabet):
                raise InvalidArgument(f"exponent vector {exps} does not match alphabet of size {len(alphabet)}")
            v = as_value(v)
            if v == INF:
                continue
            clean[exps] = v
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, alphabet: Iterable[str], terms: Iterable[tuple[Iterable[int], object]]) -> "LaurentPoly":
        """Build from ``(exps, vK)`` pairs; a repeated exponent vector is an error."""
        alphabet = tuple(alphabet)
        acc = {}
        for exps, v in terms:
            exps = tuple(exps)
            if exps in acc:
                raise InvalidArgument(f"exponent vector {exps} appears twice")
            acc[exps] = v
        return cls(alphabet, acc)

    @classmethod
    def constant(cls, v, alphabet: Iterable[str] = ()) -> "LaurentPoly":
        alphabet = tuple(alphabet)
        return cls(alphabet, {(0,) * len(alphabet): v})

    @classmethod
    def monomial(cls, alphabet: Iterable[str], exps: Iterable[int], v=0) -> "LaurentPoly":
        alphabet = tuple(alphabet)
        return cls(alphabet, {tuple(exps): v})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        """Formal product; colliding exponents keep the smaller coefficient valuation.

        With generic coefficients a sum of two terms has the valuation of the
        dominant one, which is all the min-plus model can see.
        """
        if self.alphabet != other.alphabet:
            raise InvalidArgument("multiplying polynomials over different alphabets")
        out: dict = {}
        for (a, va), (b, vb) in itertools.product(self.terms.items(), other.terms.items()):
            e = tuple(x + y for x, y in zip(a, b))
            v = va + vb
            out[e] = min(out[e], v) if e in out else v
        return LaurentPoly(self.alphabet, out)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.alphabet != other.alphabet:
            raise InvalidArgument("adding polynomials over different alphabets")
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = min(out[e], v) if e in out else v
        return LaurentPoly(self.alphabet, out)

    def reorder(self, alphabet: Iterable[str]) -> "LaurentPoly":
        """Same polynomial written over a permutation (or superset) of the alphabet."""
        alphabet = tuple(alphabet)
        missing = set(self.alphabet) - set(alphabet)
        if missing:
            raise InvalidArgument(f"target alphabet lacks {sorted(missing)}")
        pos = {s: k for k, s in enumerate(self.alphabet)}
        out = {}
        for e, v in self.terms.items():
            out[tuple(e[pos[s]] if s in pos else 0 for s in alphabet)] = v
        return LaurentPoly(alphabet, out)


@dataclass(frozen=True)
class MonomialValuation:
    """Additive weights on a named alphabet; the uniformizer always weighs 1."""

    weights: Mapping[str, Fraction]
    pi_weight: Fraction = Fraction(1)

    def __post_init__(self):
        w = {}
        for s, v in dict(self.weights).items():
            v = Fraction(v)
            w[str(s)] = v
        if Fraction(self.pi_weight) != 1:
            raise InvalidArgument("the uniformizer must have weight 1")
        if PI in w and w[PI] != 1:
            raise InvalidArgument("the uniformizer must have weight 1")
        w.setdefault(PI, Fraction(1))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "pi_weight", Fraction(1))

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(self.weights)

    def weight(self, sym: str) -> Fraction:
        try:
            return self.weights[sym]
        except KeyError:
            raise InvalidArgument(f"unknown symbol {sym!r}") from None

    def restrict(self, symbols: Iterable[str]) -> "MonomialValuation":
        return MonomialValuation({s: self.weight(s) for s in symbols})


def monomial_weight(v: MonomialValuation, exps: Mapping[str, int] | Iterable[int], alphabet: Iterable[str] | None = None) -> Fraction:
    """Dot product of an exponent vector with the weights."""
    if alphabet is not None:
        exps = dict(zip(alphabet, exps))
    return sum((e * v.weight(s) for s, e in dict(exps).items() if e), Fraction(0))


def common_scale(values: Iterable[Fraction]) -> tuple[int, list[int]]:
    """(D, [v*D]) with D the lcm of the denominators, so sums can run on integers."""
    values = list(values)
    D = 1
    for v in values:
        D = math.lcm(D, v.denominator)
    return D, [v.numerator * (D // v.denominator) for v in values]


def evaluate(v: MonomialValuation, f: LaurentPoly) -> Value:
    """``min_b (v_K(c_b) + <b, w>)``; +inf for the zero polynomial."""
    if not f.terms:
        return INF
    ws = [v.weight(s) for s in f.alphabet]
    cs = list(f.terms.values())
    D, scaled = common_scale(ws + cs)
    wi, ci = scaled[: len(ws)], scaled[len(ws):]
    best = min(c + sum(e * w for e, w in zip(exps, wi)) for exps, c in zip(f.terms, ci))
    return Fraction(best, D)


def attained_twice_max(a, b, c) -> bool:
    top = max(a, b, c)
    return (a == top) + (b == top) + (c == top) >= 2


def relation_consistency(v: MonomialValuation, n: int, symbol=None) -> bool:
    """Check every three-term Plücker relation against the weights.

    For each quadruple, each rotation (k,l | i,j) must satisfy
    ``w_kl + w_ij <= max(w_ik + w_jl, w_il + w_jk)`` with equality whenever the
    two right-hand terms differ.  Together the rotations say the largest of the
    three pairing sums occurs at least twice; under the sign convention
    ``w_kl = (d_kl - d_ij)/2`` this is the four-point condition.
    """
    from .plucker import symbol as default_symbol

    sym = symbol or default_symbol
    w = {}
    for k, l in itertools.combinations(range(1, n + 1), 2):
        w[(k, l)] = v.weight(sym(k, l))

    def W(a, b):
        return w[(a, b) if a < b else (b, a)]

    for quad in itertools.combinations(range(1, n + 1), 4):
        a, b, c, d = quad
        sums = [(W(a, b) + W(c, d)), (W(a, c) + W(b, d)), (W(a, d) + W(b, c))]
        for lhs_idx in range(3):
            lhs = sums[lhs_idx]
            r1, r2 = (s for k, s in enumerate(sums) if k != lhs_idx)
            if lhs > max(r1, r2):
                return False
            if r1 != r2 and lhs != max(r1, r2):
                return False
    return True
