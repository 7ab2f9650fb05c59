import itertools
import random
from fractions import Fraction as F

import pytest

from oracles import gauge_by_elimination
from tropm0n.errors import InvalidArgument
from tropm0n.plucker import PluckerMonomial, all_cross_ratios, cross_ratio, pairs, symbol
from tropm0n.trees import MarkedMetricTree, Split, distance_matrix, enumerate_types, random_metric_tree
from tropm0n.tropical import (
    IndexSet,
    TropPoint,
    cone_complex,
    from_distances,
    gauge_fix,
    lineality,
    local_projection,
    monomial_value,
    plucker_vector,
    same_class,
    section_valuation,
    tropical_plucker_check,
)
from tropm0n.valuation import MonomialValuation


def cat5(l15, l34):
    return MarkedMetricTree.from_split_lengths(5, {Split.of(5, {1, 5}): F(l15), Split.of(5, {3, 4}): F(l34)})


def cat5b(l15, l24):
    return MarkedMetricTree.from_split_lengths(5, {Split.of(5, {1, 5}): F(l15), Split.of(5, {2, 4}): F(l24)})


class TestPluckerVector:
    def test_caterpillar_15_2_34(self):
        # order 12,13,14,15,23,24,25,34,35,45
        x = plucker_vector(cat5(1, 2))
        a, b = F(1), F(2)
        expected = [-a / 2, -(a + b) / 2, -(a + b) / 2, 0, -b / 2, -b / 2, -a / 2, 0, -(a + b) / 2, -(a + b) / 2]
        assert list(x.vector()) == expected

    def test_caterpillar_15_3_24(self):
        a, b = F(3), F(1, 2)
        x = plucker_vector(cat5b(a, b))
        expected = [-(a + b) / 2, -a / 2, -(a + b) / 2, 0, -b / 2, 0, -(a + b) / 2, -b / 2, -a / 2, -(a + b) / 2]
        assert list(x.vector()) == expected

    def test_n4(self):
        x = plucker_vector(MarkedMetricTree.from_split_lengths(4, {Split.of(4, {1, 2}): F(2)}))
        assert list(x.vector()) == [0, -1, -1, -1, -1, 0]


class TestGauge:
    def test_zeros_in_gauge(self):
        y = gauge_fix(plucker_vector(cat5(1, 2)))
        assert y.gauge
        assert all(y[1, j] == 0 for j in range(2, 6)) and y[2, 3] == 0

    def test_n4_gauge(self):
        y = gauge_fix(plucker_vector(MarkedMetricTree.from_split_lengths(4, {Split.of(4, {1, 2}): F(1)})))
        assert y[3, 4] == 1
        assert all(y[p] == 0 for p in pairs(4) if p != (3, 4))

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_matches_elimination(self, n):
        rng = random.Random(n)
        for _ in range(20):
            x = plucker_vector(random_metric_tree(rng, n))
            assert gauge_fix(x).coords == gauge_by_elimination(n, x.coords)

    def test_lineality_invariant(self):
        rng = random.Random(1)
        x = plucker_vector(cat5(F(2, 3), F(5)))
        base = gauge_fix(x).vector()
        for _ in range(100):
            a = [F(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(5)]
            shifted = x + lineality(5, a)
            assert gauge_fix(shifted).vector() == base
            assert same_class(x, shifted)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_injective_on_grid(self, n):
        seen = {}
        grid = [F(1), F(2), F(1, 2)]
        for ss in enumerate_types(n):
            for ls in itertools.product(grid, repeat=len(ss)):
                t = MarkedMetricTree.from_split_lengths(n, dict(zip(ss, ls)))
                key = gauge_fix(plucker_vector(t)).vector()
                assert seen.setdefault(key, t) == t
        assert len(seen) == sum(len(grid) ** len(ss) for ss in enumerate_types(n))

    def test_wrong_size(self):
        with pytest.raises(InvalidArgument):
            TropPoint(4, {(1, 2): 0})
        with pytest.raises(InvalidArgument):
            lineality(4, [1, 2, 3])


class TestLocalProjection:
    def test_caterpillar_14(self):
        a, b = F(1), F(2)
        x = plucker_vector(cat5(a, b))
        I = IndexSet.caterpillar(5, 1, 4)
        assert I.members == ((1, 2), (1, 3), (1, 5), (2, 4), (3, 4), (4, 5))
        proj = local_projection(x, I)
        assert proj == {(1, 2): b / 2, (1, 3): 0, (1, 5): (a + b) / 2, (2, 4): a / 2, (3, 4): (a + b) / 2, (4, 5): 0}

    def test_caterpillar_13(self):
        a, b = F(3), F(1, 2)
        x = plucker_vector(cat5b(a, b))
        proj = local_projection(x, IndexSet.caterpillar(5, 1, 3))
        assert proj == {(1, 2): -b / 2, (1, 4): -b / 2, (1, 5): a / 2, (2, 3): (a - b) / 2, (3, 4): (a - b) / 2, (3, 5): 0}

    def test_rejects_gauge(self):
        with pytest.raises(InvalidArgument):
            local_projection(gauge_fix(plucker_vector(cat5(1, 1))), IndexSet.caterpillar(5, 1, 4))

    def test_same_pair(self):
        with pytest.raises(InvalidArgument):
            IndexSet.caterpillar(5, 2, 2)


class TestConeComplex:
    def test_n4(self):
        c = cone_complex(4)
        assert c.by_dim() == {0: 1, 1: 3}
        top = c.maximal()[0]
        assert len(c.faces(top)) == 2

    def test_n5(self):
        c = cone_complex(5)
        assert c.by_dim() == {0: 1, 1: 10, 2: 15}
        for top in c.maximal():
            assert len(c.faces(top)) == 4

    def test_n6_maximal(self):
        assert len(cone_complex(6).maximal()) == 105

    def test_labels(self):
        top = cone_complex(5).maximal()[0]
        assert top.label().startswith("{d")


class TestSection:
    def test_base_weight_zero(self):
        w = section_valuation(cat5(1, 2), 1, 4)
        assert w.weight(symbol(1, 4)) == 0
        assert w.weight("pi") == 1

    def test_cross_ratio_formula(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(4, 7)
            t = random_metric_tree(rng, n)
            d = distance_matrix(t)
            i, j = rng.sample(range(1, n + 1), 2)
            w = section_valuation(t, i, j)
            for _ in range(10):
                a, b, c, e = rng.sample(range(1, n + 1), 4)
                expected = (d[a, e] + d[b, c] - d[a, c] - d[b, e]) / 2
                assert monomial_value(w, cross_ratio(a, b, c, e)) == expected

    def test_base_independent_on_cross_ratios(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(4, 7)
            t = random_metric_tree(rng, n)
            ws = [section_valuation(t, i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
            for m in all_cross_ratios(n):
                assert len({monomial_value(w, m) for w in ws}) == 1

    def test_bad_base(self):
        with pytest.raises(InvalidArgument):
            section_valuation(cat5(1, 1), 2, 2)
        with pytest.raises(InvalidArgument):
            section_valuation(cat5(1, 1), 1, 6)

    def test_tree_weights_pass(self):
        for ss in enumerate_types(6):
            t = MarkedMetricTree.from_split_lengths(6, {s: F(k + 1, 2) for k, s in enumerate(ss)})
            assert tropical_plucker_check(section_valuation(t, 1, 6), 6)

    def test_bumped_weight_fails(self):
        w = {symbol(k, l): F(0) for k, l in pairs(4)}
        assert tropical_plucker_check(MonomialValuation(w), 4)
        w[symbol(1, 2)] = F(1)
        assert not tropical_plucker_check(MonomialValuation(w), 4)

    def test_n4_section_on_u(self):
        t = MarkedMetricTree.from_split_lengths(4, {Split.of(4, {1, 2}): F(5, 2)})
        w = section_valuation(t, 1, 4)
        assert monomial_value(w, PluckerMonomial.parse("u13*u24/u12*u34")) == F(5, 2)

    def test_from_distances_round_trip(self):
        t = cat5(F(1, 3), F(4))
        assert from_distances(distance_matrix(t)) == plucker_vector(t)
