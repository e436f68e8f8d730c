from fractions import Fraction

import pytest
from hypothesis import given, settings

from supercone import (
    MaxMatrix,
    MaxVector,
    Strategy,
    StrategyClass,
    classify,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    generating_set,
    generator_vector,
    otimes_vec,
    restrict_matrix,
    strategy_from_vector,
    subeigenvector_generators,
)
from supercone.generators import InadmissibleStrategy, NotSupereigenvector
from supercone.oracle import decompose, is_supereigenvector, sample_supereigenvectors

from conftest import M, V, matrices

HALF = Fraction(1, 2)
UNIT2 = M([[0, 2], [HALF, 0]])
GERM2 = M([[2, 0], [1, 0]])
SWAP = Strategy(((0, 1), (1, 0)))
GERM_TAU = Strategy(((0, 0), (1, 0)))


class TestGeneratorVector:
    def test_cycle_anchor_one(self):
        g = generator_vector(UNIT2, SWAP, 0)
        assert g.vector == V(1, HALF)
        assert otimes_vec(UNIT2, g.vector) == V(1, HALF)

    def test_cycle_anchor_two(self):
        assert generator_vector(UNIT2, SWAP, 1).vector == V(2, 1)

    def test_germ_origin(self):
        g = generator_vector(GERM2, GERM_TAU, 1)
        assert g.vector == V(1, 1) and g.kind is StrategyClass.GERM_GT1
        assert otimes_vec(GERM2, g.vector) == V(2, 1)

    def test_germ_cycle_anchor_ignores_walk(self):
        assert generator_vector(GERM2, GERM_TAU, 0).vector == V(1, 0)

    def test_inadmissible(self):
        with pytest.raises(InadmissibleStrategy):
            generator_vector(M([[0, 1], [HALF, 0]]), SWAP, 0)

    def test_anchor_outside(self):
        with pytest.raises(ValueError):
            generator_vector(GERM2, Strategy(((0, 0),)), 1)


class TestGeneratingSet:
    def test_zero(self):
        assert len(generating_set(MaxMatrix.zeros(3))) == 0

    def test_unit_cycle(self):
        assert generating_set(UNIT2).vectors() == [V(1, HALF), V(2, 1)]

    def test_germ_first(self):
        S = generating_set(GERM2)
        assert S.vectors() == [V(1, 1), V(1, 0)]
        assert [g.kind for g in S] == [StrategyClass.GERM_GT1, StrategyClass.CYCLE_GT1]

    @given(matrices(max_n=4))
    @settings(max_examples=60, deadline=None)
    def test_generators_are_supereigenvectors(self, A):
        for g in generating_set(A):
            assert g.vector[g.anchor] == 1
            assert is_supereigenvector(A, g.vector)
            reach = {g.anchor}
            v = g.anchor
            while g.strategy(v) not in reach:
                v = g.strategy(v)
                reach.add(v)
            assert g.vector.support == reach

    @given(matrices(max_n=4))
    @settings(max_examples=40, deadline=None)
    def test_sampled_supereigenvectors_decompose(self, A):
        S = generating_set(A)
        for x in sample_supereigenvectors(A, S, 20, seed=3):
            assert is_supereigenvector(A, x)
            assert decompose(x, S).residual_equal


class TestStrategyFromVector:
    def test_gt1(self):
        A = M([[0, 2], [1, 0]])
        t = strategy_from_vector(A, V(1, 1))
        assert t == SWAP and classify(A, t).kind is StrategyClass.CYCLE_GT1

    def test_eq1(self):
        t = strategy_from_vector(UNIT2, V(1, HALF))
        assert t == SWAP and classify(UNIT2, t).kind is StrategyClass.CYCLE_EQ1

    def test_zero(self):
        with pytest.raises(ValueError):
            strategy_from_vector(UNIT2, V(0, 0))

    def test_not_super(self):
        with pytest.raises(NotSupereigenvector):
            strategy_from_vector(MaxMatrix.zeros(2), V(1, 0))

    def test_ties_smallest_index(self):
        A = M([[1, 1], [1, 1]])
        assert strategy_from_vector(A, V(1, 1)) == Strategy(((0, 0), (1, 0)))

    @given(matrices(max_n=4))
    @settings(max_examples=40, deadline=None)
    def test_cell_of_sampled_vectors(self, A):
        S = generating_set(A)
        for x in sample_supereigenvectors(A, S, 10, seed=5):
            t = strategy_from_vector(A, x)
            assert classify(A, t).kind.admissible
            Atx = otimes_vec(restrict_matrix(A, t), x)
            assert x.leq(Atx) and Atx.leq(otimes_vec(A, x))


class TestSubeigenvectorGenerators:
    def test_cycle(self):
        cols = subeigenvector_generators(UNIT2, SWAP)
        assert cols == [V(1, HALF), V(2, 1)]

    def test_germ(self):
        assert subeigenvector_generators(GERM2, GERM_TAU) == [V(1, 0), V(1, 1)]

    def test_empty(self):
        assert subeigenvector_generators(GERM2, Strategy(())) == [V(1, 0), V(0, 1)]

    @given(matrices(max_n=5))
    @settings(max_examples=40, deadline=None)
    def test_star_columns_are_generators(self, A):
        for t in (enumerate_cycles_geq1(A) + enumerate_admissible_germs(A))[:60]:
            cols = subeigenvector_generators(A, t)
            for k in t.support:
                assert cols[k] == generator_vector(A, t, k).vector
