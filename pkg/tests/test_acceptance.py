"""Acceptance criteria 1-10, each with its time budget.

Run ``pytest tests/test_acceptance.py`` (or the whole suite); the terminal
summary prints one PASS/FAIL line per criterion.
"""

import itertools
import random
import sys
import time
from fractions import Fraction as F

import pytest

from oracles import girth_and_regular, trivalent_split_sets
from tropm0n.harness import SweepConfig, check_diagram, run_cones, summarize
from tropm0n.plucker import PluckerMonomial
from tropm0n.skeleton import (
    SkeletonPoint,
    boundary_divisors,
    forget_stratum,
    intersection_graph,
    kapranov_class,
    keel_intersects,
    picard_pairing,
    skeleton_valuation,
)
from tropm0n.trees import (
    MarkedMetricTree,
    Split,
    attach_leaf,
    check_cherry_property,
    cherry_order,
    distance_matrix,
    double_factorial,
    enumerate_stable_trees,
    enumerate_types,
    forget_leaf,
    four_point_check,
    random_metric_tree,
)
from tropm0n.tropical import cone_complex, monomial_value, section_valuation, tropical_plucker_check
from tropm0n.valuation import LaurentPoly, MonomialValuation, evaluate, relation_consistency

U = PluckerMonomial.parse("u13*u24/u12*u34")
V = PluckerMonomial.parse("u13*u45/u15*u34")


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f} s, budget {self.limit} s"


def sp(n, *sides):
    return [Split.of(n, s) for s in sides]


@pytest.mark.criterion(1, "cone complex counts for n=4 and n=5")
def test_criterion_01_cone_counts():
    with Clock(1.0):
        c4 = cone_complex(4)
        assert c4.by_dim() == {0: 1, 1: 3}
        assert len(c4.maximal()) == 3
        c5 = cone_complex(5)
        assert c5.by_dim() == {0: 1, 1: 10, 2: 15}


@pytest.mark.criterion(2, "boundary divisor count 2^(n-1)-n-1 for n=4..8")
def test_criterion_02_divisor_counts():
    with Clock(1.0):
        got = [len(boundary_divisors(n)) for n in range(4, 9)]
        assert got == [3, 10, 25, 56, 119]
        assert got == [2 ** (n - 1) - n - 1 for n in range(4, 9)]


@pytest.mark.criterion(3, "trivalent types (2n-5)!! against the leaf-insertion oracle, n=4..8")
def test_criterion_03_trivalent_counts():
    with Clock(30.0):
        for n in range(4, 9):
            mine = {frozenset(s.side for s in ss) for ss in enumerate_types(n, trivalent_only=True)}
            oracle = trivalent_split_sets(n)
            assert len(mine) == double_factorial(2 * n - 5)
            assert mine == oracle
        assert [double_factorial(2 * n - 5) for n in range(4, 9)] == [3, 15, 105, 945, 10395]


@pytest.mark.criterion(4, "n=5 intersection graph is Petersen; Keel adjacency iff pairing 1")
def test_criterion_04_petersen():
    with Clock(1.0):
        g = intersection_graph(5)
        assert len(g.nodes) == 10 and len(g.edges) == 15
        assert set(g.degree().values()) == {3}
        assert g.girth() == 5
        adj = {v: set() for v in g.nodes}
        for a, b in g.edges:
            adj[a].add(b)
            adj[b].add(a)
        assert girth_and_regular(adj) == (5, {3})
        pairs = list(itertools.combinations(g.nodes, 2))
        assert len(pairs) == 45
        for a, b in pairs:
            assert keel_intersects(a, b) == (picard_pairing(kapranov_class(a), kapranov_class(b)) == 1)


@pytest.mark.criterion(5, "n=4 section and skeleton evaluations agree on random polynomials")
def test_criterion_05_n4_equality():
    rng = random.Random(405)
    vk_grid = [F(0), F(1, 2), F(1), F(-2), F(5, 3), F(3)]
    with Clock(1.0):
        for l1 in (F(1), F(1, 2), F(7, 3)):
            t = MarkedMetricTree.from_split_lengths(4, {Split.of(4, {1, 2}): l1})
            sect = section_valuation(t, 1, 4)
            skel = skeleton_valuation(SkeletonPoint(4, tuple(sp(4, {1, 2})), (l1,)), (1, 4))
            assert [str(g) for _, g in skel.generators] == [str(U)]
            sect_u = MonomialValuation({str(U): monomial_value(sect, U)})
            for _ in range(20):
                k = rng.randint(1, 5)
                exps = rng.sample(range(0, 8), k)
                f = LaurentPoly.from_terms([str(U)], [((e,), rng.choice(vk_grid)) for e in exps])
                expected = min(c + e[0] * l1 for e, c in f.terms.items())
                assert evaluate(sect_u, f) == expected
                assert skel.evaluate(f) == expected


@pytest.mark.criterion(6, "n=5 value table on cone (15|2|34) and equality with the skeleton")
def test_criterion_06_n5_table():
    rng = random.Random(506)
    with Clock(1.0):
        for l15, l34 in [(F(1), F(2)), (F(1, 2), F(7, 3)), (F(3), F(1, 5))]:
            t = MarkedMetricTree.from_split_lengths(5, {Split.of(5, {1, 5}): l15, Split.of(5, {3, 4}): l34})
            sect = section_valuation(t, 1, 4)
            assert (monomial_value(sect, U), monomial_value(sect, V), monomial_value(sect, V / U)) == (l34, l15 + l34, l15)
            p = SkeletonPoint.from_mapping(5, {Split.of(5, {3, 4}): l34, Split.of(5, {1, 5}): l15})
            skel = skeleton_valuation(p, (1, 4))
            assert (skel.weight(U), skel.weight(V), skel.weight(V / U)) == (l34, l15 + l34, l15)
            gens = {s.label(): g for s, g in skel.generators}
            assert gens["d34"] == U and gens["d15"] == V / U
            # two-variable polynomials in u, v
            alphabet = [str(U), str(V)]
            sect_uv = MonomialValuation({str(U): monomial_value(sect, U), str(V): monomial_value(sect, V)})
            for _ in range(10):
                terms = {}
                for _ in range(rng.randint(1, 5)):
                    terms[(rng.randint(0, 4), rng.randint(0, 4))] = F(rng.randint(-3, 6), rng.randint(1, 3))
                f = LaurentPoly(alphabet, terms)
                expected = min(c + b1 * l34 + b2 * (l34 + l15) for (b1, b2), c in terms.items())
                assert evaluate(sect_uv, f) == expected == skel.evaluate(f)


@pytest.mark.criterion(7, "comparison sweep over every stable type, n<=7")
def test_criterion_07_comparison_sweep():
    cfg = SweepConfig(3, 7, samples=5, polys=10, seed=2024)
    with Clock(120.0):
        records = run_cones(cfg)
    summary = summarize(cfg, records)
    assert summary["failures"] == 0, [r["failures"][:1] for r in records if r["failures"]][:3]
    cones = {n: len(list(enumerate_types(n))) for n in range(3, 8)}
    assert [d["cones"] for d in summary["per_n"]] == [cones[n] for n in range(3, 8)]
    for r in records:
        assert r["points"] == min(5, len(cfg.grid) ** len(r["cone"]))


@pytest.mark.criterion(8, "universal-curve diagram commutes for n+1<=7; forget_stratum is onto")
def test_criterion_08_diagram():
    rng = random.Random(808)
    grid = [F(1), F(1, 2), F(7, 3), F(2), F(3, 4)]
    with Clock(60.0):
        for m in (5, 6, 7):
            for ss in enumerate_types(m):
                for _ in range(3):
                    t = MarkedMetricTree.from_split_lengths(m, {s: rng.choice(grid) for s in ss})
                    assert check_diagram(t), t
        for n in (4, 5, 6):
            image = set()
            for ss in enumerate_types(n + 1):
                p = SkeletonPoint(n + 1, ss, tuple(F(1) for _ in ss))
                image.add(forget_stratum(p, n + 1).splits)
            assert image == {tuple(ss) for ss in enumerate_types(n)}


def _classify(t: MarkedMetricTree, leaf: int) -> str:
    tree = t.tree
    lv = tree.leaf_vertices[leaf - 1]
    (p,) = tree.adjacency[lv]
    others = [w for w in tree.adjacency[p] if w != lv]
    leaves = [w for w in others if tree.is_leaf_vertex(w)]
    if len(others) == 2 and len(leaves) == 1:
        return "S1"
    if len(others) == 2 and not leaves:
        return "S3"
    if len(leaves) >= 2:
        return "S2"
    return "other"


@pytest.mark.criterion(9, "forgetful case laws S1/S2/S3 on constructed configurations")
def test_criterion_09_case_laws():
    seen = set()
    with Clock(1.0):
        bases = [
            MarkedMetricTree.from_split_lengths(5, {Split.of(5, {1, 5}): F(3), Split.of(5, {3, 4}): F(2)}),
            MarkedMetricTree.from_split_lengths(5, {Split.of(5, {1, 2}): F(5, 2)}),
            MarkedMetricTree.from_split_lengths(6, {Split.of(6, {1, 2}): F(1), Split.of(6, {1, 2, 3}): F(4, 3), Split.of(6, {5, 6}): F(7, 2)}),
        ]
        for base in bases:
            n = base.n
            tree = base.tree
            configs = []
            for u, v in tree.edges:
                if (u, v) in base.lengths:
                    configs.append(attach_leaf(base, (u, v), base.lengths[(u, v)] / 3))
                else:
                    configs.append(attach_leaf(base, (u, v), F(5, 4)))
            configs += [attach_leaf(base, v) for v in tree.adjacency if not tree.is_leaf_vertex(v)]
            for t in configs:
                case = _classify(t, n + 1)
                seen.add(case)
                d = distance_matrix(t)
                d2 = distance_matrix(forget_leaf(t, n + 1))
                if case == "S1":
                    lv = t.tree.leaf_vertices[n]
                    (p,) = t.tree.adjacency[lv]
                    (m_vertex,) = [w for w in t.tree.adjacency[p] if w != lv and t.tree.is_leaf_vertex(w)]
                    m = t.tree.label_of[m_vertex]
                    # d0 is the internal edge at the cherry's vertex
                    (q,) = [w for w in t.tree.adjacency[p] if not t.tree.is_leaf_vertex(w)]
                    d0 = t.edge_length(p, q)
                    assert d[n + 1, m] == 0 and d0 > 0
                    for a, b in itertools.combinations(range(1, n + 1), 2):
                        drop = d0 if m in (a, b) else 0
                        assert d2[a, b] == d[a, b] - drop
                else:
                    for a, b in itertools.combinations(range(1, n + 1), 2):
                        assert d2[a, b] == d[a, b]
    assert {"S1", "S2", "S3"} <= seen


@pytest.mark.criterion(10, "four-point and tropical Plucker rules on 1000 trees; cherry orders n<=7")
def test_criterion_10_properties():
    rng = random.Random(1010)
    with Clock(60.0):
        for _ in range(1000):
            n = rng.randint(4, 8)
            t = random_metric_tree(rng, n)
            d = distance_matrix(t)
            assert four_point_check(d)
            i, j = rng.sample(range(1, n + 1), 2)
            w = section_valuation(t, i, j)
            assert tropical_plucker_check(w, n)
            assert relation_consistency(w, n)
        checked = 0
        for n in range(4, 8):
            for t in enumerate_stable_trees(n, trivalent_only=True):
                for i, j in itertools.permutations(range(1, n + 1), 2):
                    assert check_cherry_property(t, i, j, cherry_order(t, i, j))
                    checked += 1
        assert checked == sum(double_factorial(2 * n - 5) * n * (n - 1) for n in range(4, 8))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
