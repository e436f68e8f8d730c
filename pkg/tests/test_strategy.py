from fractions import Fraction
from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings

from supercone import (
    EnumerationLimitExceeded,
    MaxMatrix,
    Strategy,
    StrategyClass,
    Walk,
    classify,
    end_node,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    inverse_matrix,
    restrict_matrix,
    unique_walk,
)
from supercone.strategy import UnboundStrategy, functional_cycles

from conftest import M, matrices

HALF = Fraction(1, 2)


def tau(*pairs):
    return Strategy(tuple(pairs))


class TestStrategy:
    def test_closure_required(self):
        with pytest.raises(ValueError):
            tau((0, 1))

    def test_single_valued(self):
        with pytest.raises(ValueError):
            tau((0, 0), (0, 1))

    def test_call_and_support(self):
        t = tau((1, 0), (0, 0))
        assert t(1) == 0 and t.support == {0, 1} and 1 in t and 2 not in t


class TestMatrices:
    def test_restrict_empty(self):
        assert restrict_matrix(M([[1, 2], [3, 4]]), Strategy(())) == MaxMatrix.zeros(2)

    def test_restrict_full(self):
        A = M([[0, 2], [1, 0]])
        assert restrict_matrix(A, tau((0, 1), (1, 0))) == A

    def test_restrict_one(self):
        assert restrict_matrix(M([[0, 2], [1, 3]]), tau((1, 1))) == M([[0, 0], [0, 3]])

    def test_inverse_empty(self):
        assert inverse_matrix(M([[1, 2], [3, 4]]), Strategy(())) == MaxMatrix.zeros(2)

    def test_inverse_two_cycle(self):
        # entry (tau(j), j) holds 1 / a_{j, tau(j)}
        assert inverse_matrix(M([[0, 2], [1, 0]]), tau((0, 1), (1, 0))) == M([[0, 1], [HALF, 0]])

    def test_inverse_loop(self):
        assert inverse_matrix(M([[3]]), tau((0, 0))) == M([[Fraction(1, 3)]])

    def test_unbound(self):
        with pytest.raises(UnboundStrategy):
            restrict_matrix(M([[0, 1], [0, 0]]), tau((0, 1), (1, 0)))


class TestClassify:
    def test_unit_cycle(self):
        c = classify(M([[0, 2], [HALF, 0]]), tau((0, 1), (1, 0)))
        assert c.kind is StrategyClass.CYCLE_EQ1 and c.germ is None

    def test_germ(self):
        c = classify(M([[2, 0], [1, 0]]), tau((0, 0), (1, 0)))
        assert c.kind is StrategyClass.GERM_GT1
        assert (c.germ.origin, c.germ.cycle_origin) == (1, 0)
        assert c.germ.walk_nodes == (1,) and c.germ.cycle_nodes == (0,)

    def test_inadmissible(self):
        c = classify(M([[0, 1], [HALF, 0]]), tau((0, 1), (1, 0)))
        assert c.kind is StrategyClass.INADMISSIBLE

    def test_two_cycles_is_other(self):
        c = classify(M([[1, 0], [0, 1]]), tau((0, 0), (1, 1)))
        assert c.kind is StrategyClass.OTHER_ADMISSIBLE

    def test_branching_tree_is_other(self):
        A = M([[1, 0, 0], [1, 0, 0], [1, 0, 0]])
        assert classify(A, tau((0, 0), (1, 0), (2, 0))).kind is StrategyClass.OTHER_ADMISSIBLE

    def test_empty_strategy(self):
        assert classify(M([[1]]), Strategy(())).kind is StrategyClass.OTHER_ADMISSIBLE


def brute_cycles(A):
    out = set()
    for size in range(1, A.n + 1):
        for nodes in combinations(range(A.n), size):
            for perm in permutations(nodes[1:]):
                cyc = (nodes[0],) + perm
                steps = [(cyc[t], cyc[(t + 1) % size]) for t in range(size)]
                if all(A[a, b] != 0 for a, b in steps):
                    w = Fraction(1)
                    for a, b in steps:
                        w *= A[a, b]
                    if w >= 1:
                        out.add(tuple(sorted(steps)))
    return out


def is_germ_structurally(A, pairs):
    """One cycle of weight >= 1 plus a single access path, decided by direct iteration."""
    m = dict(pairs)
    on_cycle = set()
    for v in m:
        u = v
        for _ in range(len(m)):
            u = m[u]
        # after |supp| steps every walk sits on its cycle
        on_cycle.add(u)
    cyc_nodes = set()
    for v in on_cycle:
        u = m[v]
        cyc_nodes.add(v)
        while u != v:
            cyc_nodes.add(u)
            u = m[u]
    # one cycle: every cycle node reaches every other
    start = next(iter(cyc_nodes))
    seen, u = {start}, m[start]
    while u != start:
        seen.add(u)
        u = m[u]
    if seen != cyc_nodes or cyc_nodes == set(m):
        return False
    w = Fraction(1)
    for v in cyc_nodes:
        w *= A[v, m[v]]
    if w < 1:
        return False
    preimages = {v: 0 for v in m}
    for v in m.values():
        preimages[v] += 1
    return sum(1 for v in m if preimages[v] == 0) == 1


def all_partial_maps(n):
    for size in range(1, n + 1):
        for dom in combinations(range(n), size):
            for img in product(dom, repeat=size):
                yield tuple(zip(dom, img))


class TestEnumeration:
    def test_cycles_zero(self):
        assert enumerate_cycles_geq1(MaxMatrix.zeros(3)) == []

    def test_cycles_unit(self):
        assert enumerate_cycles_geq1(M([[0, 2], [HALF, 0]])) == [tau((0, 1), (1, 0))]

    def test_cycles_loop_and_two_cycle(self):
        assert enumerate_cycles_geq1(M([[2, 2], [1, 0]])) == [tau((0, 0)), tau((0, 1), (1, 0))]

    @given(matrices(max_n=5))
    @settings(max_examples=60, deadline=None)
    def test_cycles_match_brute_force(self, A):
        found = enumerate_cycles_geq1(A)
        assert {c.pairs for c in found} == brute_cycles(A)
        assert found == sorted(found, key=Strategy.sort_key)

    def test_germs_none_for_covering_cycle(self):
        assert enumerate_admissible_germs(M([[0, 2], [HALF, 0]])) == []

    def test_single_germ(self):
        assert enumerate_admissible_germs(M([[2, 0], [1, 0]])) == [tau((0, 0), (1, 0))]

    @given(matrices(max_n=4))
    @settings(max_examples=60, deadline=None)
    def test_germs_match_brute_force(self, A):
        expected = set()
        for pairs in all_partial_maps(A.n):
            if all(A[i, j] != 0 for i, j in pairs) and is_germ_structurally(A, pairs):
                expected.add(tuple(sorted(pairs)))
        found = enumerate_admissible_germs(A)
        assert len(found) == len(expected)
        assert {g.pairs for g in found} == expected
        assert all(classify(A, g).kind.is_germ for g in found)

    def test_germs_match_brute_force_n5(self):
        A = M([[1, 1, 0, 1, 0], [0, 0, 2, 0, 1], [HALF, 1, 0, 0, 0], [0, 0, 1, 1, 1], [1, 0, 0, 2, 0]])
        expected = {
            tuple(sorted(p))
            for p in all_partial_maps(5)
            if all(A[i, j] != 0 for i, j in p) and is_germ_structurally(A, p)
        }
        assert {g.pairs for g in enumerate_admissible_germs(A)} == expected

    def test_limit(self):
        A = M([[1, 1, 1, 1]] * 4)
        total = len(enumerate_admissible_germs(A))
        assert len(enumerate_admissible_germs(A, limit=total)) == total
        with pytest.raises(EnumerationLimitExceeded):
            enumerate_admissible_germs(A, limit=total - 1)


class TestFigureOne:
    def germ(self, idx):
        cycle = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]
        return tau(*((idx[a], idx[b]) for a, b in cycle + [(12, 11), (11, 2)]))

    def test_germ_enumerated_and_classified(self, gapped):
        A, idx = gapped
        g = self.germ(idx)
        assert g in enumerate_admissible_germs(A)
        c = classify(A, g)
        assert c.kind is StrategyClass.GERM_EQ1
        assert c.germ.origin == idx[12] and c.germ.cycle_origin == idx[2]
        assert c.germ.walk_nodes == (idx[12], idx[11])

    def test_end_node(self, gapped):
        A, idx = gapped
        assert end_node(self.germ(idx), idx[12]) == idx[1]

    def test_full_strategy_structure(self, gapped):
        A, idx = gapped
        full = Strategy(tuple((i, A.successors(i)[0]) for i in range(A.n)))
        assert classify(A, full).kind is StrategyClass.OTHER_ADMISSIBLE
        assert len(functional_cycles(full)) == 1


class TestWalksInStrategy:
    cyc = tau((0, 1), (1, 2), (2, 0))

    def test_trivial(self):
        assert unique_walk(self.cyc, 1, 1) == Walk((1,))

    def test_follow(self):
        assert unique_walk(self.cyc, 0, 2) == Walk((0, 1, 2))

    def test_no_access(self):
        assert unique_walk(tau((0, 0), (1, 0)), 0, 1) is None

    def test_outside_support(self):
        with pytest.raises(ValueError):
            unique_walk(self.cyc, 0, 5)

    def test_end_node_cycle(self):
        assert end_node(self.cyc, 0) == 2
        assert end_node(self.cyc, 1) == 0

    def test_end_node_precondition(self):
        with pytest.raises(ValueError):
            end_node(tau((0, 0), (1, 0)), 0)

    @given(matrices(max_n=5, weights=[Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)]))
    @settings(max_examples=40, deadline=None)
    def test_walks_unique_by_exhaustive_search(self, A):
        strategies = enumerate_cycles_geq1(A) + enumerate_admissible_germs(A)
        for t in strategies[:40]:
            At = restrict_matrix(A, t)
            for k, i in product(sorted(t.support), repeat=2):
                paths = _simple_paths(At, k, i)
                assert len(paths) <= 1
                w = unique_walk(t, k, i)
                assert (w.nodes if w else None) == (paths[0] if paths else None)


def _simple_paths(A, k, i):
    out = []

    def dfs(path):
        if path[-1] == i:
            out.append(tuple(path))
            return
        for j in A.successors(path[-1]):
            if j not in path:
                dfs(path + [j])

    dfs([k])
    return out
