"""Theorem-level checks: section vs skeleton valuations, and the forgetful diagram.

All data is exact.  Random choices (lengths, polynomials) come from
:class:`random.Random` instances seeded from the configured seed and the cone
being processed, so a sweep's output does not depend on how it is scheduled.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidArgument
from .plucker import all_cross_ratios
from .skeleton import SkeletonPoint, forget_stratum, skeleton_point_of, skeleton_valuation
from .trees import (
    MarkedMetricTree,
    _check_n,
    attach_leaf,
    distance_matrix,
    enumerate_types,
    forget_leaf,
)
from .tropical import PairWeights, from_distances, gauge_fix, monomial_value, plucker_vector, section_valuation
from .valuation import LaurentPoly, MonomialValuation, PI, evaluate

DEFAULT_GRID = (Fraction(1), Fraction(1, 2), Fraction(7, 3), Fraction(2), Fraction(3, 4), Fraction(5))
VK_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(5, 2), Fraction(-1), Fraction(7, 3))


def random_poly(rng: random.Random, alphabet: Sequence[str], max_terms: int = 5, max_exp: int = 3) -> LaurentPoly:
    """A polynomial with 1..max_terms distinct monomials, exponents in 0..max_exp."""
    alphabet = tuple(alphabet)
    want = rng.randint(1, max_terms)
    terms: dict = {}
    space = (max_exp + 1) ** len(alphabet)
    while len(terms) < min(want, space):
        exps = tuple(rng.randint(0, max_exp) for _ in alphabet)
        terms.setdefault(exps, rng.choice(VK_GRID))
    return LaurentPoly(alphabet, terms)


@dataclass
class ComparisonReport:
    n: int
    cone: tuple[str, ...]
    lengths: tuple[str, ...]
    base: tuple[int, int]
    pairs: list[tuple[object, Fraction, Fraction]] = field(default_factory=list)
    seed: object = None

    @property
    def mismatches(self) -> list[tuple[str, Fraction, Fraction]]:
        return [(str(name), a, b) for name, a, b in self.pairs if a != b]

    @property
    def verdict(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cone": list(self.cone),
            "lengths": list(self.lengths),
            "base": list(self.base),
            "checked": len(self.pairs),
            "mismatches": [[name, str(a), str(b)] for name, a, b in self.mismatches],
            "verdict": "pass" if self.verdict else "fail",
            "seed": self.seed,
        }


def compare_point(
    t: MarkedMetricTree,
    base: tuple[int, int] | None = None,
    polys: int = 0,
    rng: random.Random | None = None,
    seed: object = None,
) -> ComparisonReport:
    """Compare the section valuation of t with the skeleton valuation of its stratum.

    Checked: every cross-ratio over every 4-subset, every local generator, and
    ``polys`` random polynomials in the generators and the uniformizer.
    """
    n = t.n
    i, j = base if base is not None else (1, n)
    sect = section_valuation(t, i, j)
    point = skeleton_point_of(t)
    skel = skeleton_valuation(point, (i, j))
    sl = point.as_dict()
    rep = ComparisonReport(
        n=n,
        cone=tuple(s.label() for s in point.splits),
        lengths=tuple(str(a) for a in point.alpha),
        base=(i, j),
        seed=seed,
    )
    w = PairWeights(sect, n)
    for m in all_cross_ratios(n):
        rep.pairs.append((m, w.value(m), skel.weight(m)))
    for s, g in skel.generators:
        rep.pairs.append((f"gen[{s.label()}]={g}", monomial_value(sect, g), sl[s]))
    if polys:
        rng = rng or random.Random(seed)
        alphabet = skel.alphabet + (PI,)
        sect_gen = MonomialValuation({str(g): monomial_value(sect, g) for _, g in skel.generators})
        for k in range(polys):
            f = random_poly(rng, alphabet)
            rep.pairs.append((f"poly[{k}]", evaluate(sect_gen, f), skel.evaluate(f)))
    return rep


def check_diagram(t: MarkedMetricTree) -> bool:
    """Forgetting the last leaf commutes with both embeddings."""
    m = t.n
    if m < 5:
        raise InvalidArgument(f"the diagram check needs n+1 >= 5 leaves, got {m}")
    down = forget_leaf(t, m)
    top = gauge_fix(plucker_vector(down))
    side = gauge_fix(from_distances(distance_matrix(t).restrict(range(1, m))))
    if top.vector() != side.vector():
        return False
    return forget_stratum(skeleton_point_of(t), m) == skeleton_point_of(down)


@dataclass
class FiberReport:
    base: MarkedMetricTree
    attachments: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.failures


def attachments(base: MarkedMetricTree, grid: Iterable[Fraction]) -> list[tuple[str, MarkedMetricTree]]:
    """Every tree obtained by adding leaf n+1 to ``base``, edge positions sampled on ``grid``.

    At an internal vertex; inside an internal edge of length L at distance
    L*g/(1+g) from its lower endpoint; or on a leaf edge, making a cherry with
    that leaf joined to the tree by a new edge of length g.
    """
    grid = [Fraction(g) for g in grid]
    tree = base.tree
    out = []
    for v in sorted(tree.adjacency):
        if not tree.is_leaf_vertex(v):
            out.append((f"vertex {v}", attach_leaf(base, v)))
    for u, v in tree.edges:
        L = base.lengths.get((u, v))
        for g in grid:
            if L is not None:
                out.append((f"edge {u}-{v} at {L * g / (1 + g)}", attach_leaf(base, (u, v), L * g / (1 + g))))
            else:
                out.append((f"leaf edge {u}-{v} with {g}", attach_leaf(base, (u, v), g)))
    return out


def fiber_sweep(base: MarkedMetricTree, grid: Iterable[Fraction] = DEFAULT_GRID, polys: int = 0, seed: object = 0) -> FiberReport:
    rep = FiberReport(base)
    rng = random.Random(f"fiber:{seed}")
    for name, t in attachments(base, grid):
        rep.attachments += 1
        cmp = compare_point(t, polys=polys, rng=rng)
        if not cmp.verdict:
            rep.failures.append(f"{name}: {cmp.mismatches[:3]}")
        if forget_leaf(t, t.n) != base:
            rep.failures.append(f"{name}: forgetting leaf {t.n} does not return the base")
    return rep


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepConfig:
    n_from: int
    n_to: int
    samples: int = 5
    grid: tuple[Fraction, ...] = DEFAULT_GRID
    polys: int = 10
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(Fraction(g) for g in self.grid))
        if self.samples < 1 or self.polys < 0 or self.jobs < 1:
            raise InvalidArgument("samples and jobs must be >= 1, polys >= 0")
        if not self.grid or any(g <= 0 for g in self.grid):
            raise InvalidArgument("length grid entries must be positive")
        if self.n_from <= self.n_to:
            _check_n(self.n_from, 3, 8)
            _check_n(self.n_to, 3, 8)


def sample_lengths(rng: random.Random, k: int, grid: Sequence[Fraction], samples: int) -> list[tuple[Fraction, ...]]:
    """``samples`` distinct vectors from grid^k (all of them if there are fewer)."""
    total = len(grid) ** k
    idx = range(total) if total <= samples else sorted(rng.sample(range(total), samples))
    out = []
    for x in idx:
        vec = []
        for _ in range(k):
            x, r = divmod(x, len(grid))
            vec.append(grid[r])
        out.append(tuple(vec))
    return out


def _run_cone(args) -> dict:
    n, index, splits, cfg = args
    rng = random.Random(f"{cfg.seed}:{n}:{index}")
    vectors = sample_lengths(rng, len(splits), cfg.grid, cfg.samples)
    failures = []
    for vec in vectors:
        t = MarkedMetricTree.from_split_lengths(n, dict(zip(splits, vec)))
        rep = compare_point(t, polys=cfg.polys, rng=rng)
        if not rep.verdict:
            failures.append(rep.to_json())
    return {
        "n": n,
        "cone": [s.label() for s in splits],
        "points": len(vectors),
        "failures": failures,
        "seed": cfg.seed,
    }


def cone_tasks(cfg: SweepConfig) -> list[tuple]:
    tasks = []
    for n in range(cfg.n_from, cfg.n_to + 1):
        for index, splits in enumerate(sorted(enumerate_types(n), key=lambda ss: (len(ss), [s.key for s in ss]))):
            tasks.append((n, index, splits, cfg))
    return tasks


def run_cones(cfg: SweepConfig) -> list[dict]:
    """Per-cone records in canonical order, whatever ``jobs`` is."""
    tasks = cone_tasks(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_run_cone, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))
    return [_run_cone(t) for t in tasks]


def summarize(cfg: SweepConfig, records: list[dict]) -> dict:
    per_n = {}
    for r in records:
        d = per_n.setdefault(r["n"], {"n": r["n"], "cones": 0, "points": 0, "failures": 0})
        d["cones"] += 1
        d["points"] += r["points"]
        d["failures"] += len(r["failures"])
    return {
        "n": [cfg.n_from, cfg.n_to],
        "cones": sum(d["cones"] for d in per_n.values()),
        "points": sum(d["points"] for d in per_n.values()),
        "failures": sum(d["failures"] for d in per_n.values()),
        "seed": cfg.seed,
        "per_n": [per_n[k] for k in sorted(per_n)],
    }


def run_suite(cfg: SweepConfig) -> dict:
    return summarize(cfg, run_cones(cfg))


__all__ = [
    "ComparisonReport",
    "FiberReport",
    "SkeletonPoint",
    "SweepConfig",
    "attachments",
    "check_diagram",
    "compare_point",
    "fiber_sweep",
    "random_poly",
    "run_cones",
    "run_suite",
    "sample_lengths",
    "summarize",
]
