"""Generators x^(tau, k) of the supereigenvector cone and the set S spanning it."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import MaxMatrix, MaxVector, kleene_star, otimes_vec
from .strategy import (
    DEFAULT_GERM_LIMIT,
    Strategy,
    StrategyClass,
    classify,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    inverse_matrix,
)

__all__ = [
    "Generator",
    "GeneratingSet",
    "InadmissibleStrategy",
    "NotSupereigenvector",
    "generator_vector",
    "generating_set",
    "strategy_from_vector",
    "subeigenvector_generators",
]


class InadmissibleStrategy(ValueError):
    pass


class NotSupereigenvector(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    vector: MaxVector
    strategy: Strategy
    anchor: int
    kind: StrategyClass
    cycle_weight: object = None


@dataclass(frozen=True)
class GeneratingSet:
    generators: tuple
    matrix: MaxMatrix

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Generator:
        return self.generators[i]

    def vectors(self) -> list[MaxVector]:
        return [g.vector for g in self.generators]

    @cached_property
    def distinct(self) -> tuple[tuple, tuple]:
        """Distinct vectors of the set and, per generator, the position of its vector."""
        return distinct_vectors(self.vectors())


def distinct_vectors(vectors) -> tuple[tuple, tuple]:
    pos: dict = {}
    slots = tuple(pos.setdefault(v, len(pos)) for v in vectors)
    return tuple(pos), slots


def generator_vector(A: MaxMatrix, tau: Strategy, k: int) -> Generator:
    """Coordinate 1 at ``k``, reciprocal walk weight on each node ``k`` reaches, 0 elsewhere."""
    if k not in tau:
        raise ValueError(f"anchor {k} is outside supp(tau)")
    c = classify(A, tau)
    if not c.kind.admissible:
        raise InadmissibleStrategy("tau has a cycle of weight below 1")
    ar = A.arith
    m = tau.mapping
    x = [ar.zero] * A.n
    x[k] = ar.one
    w = ar.one
    v = k
    while x[m[v]] == 0:
        w *= A[v, m[v]]
        v = m[v]
        x[v] = ar.one / w
    return Generator(MaxVector(tuple(x), ar), tau, k, c.kind, c.cycle_weight)


def generating_set(A: MaxMatrix, germ_limit: int = DEFAULT_GERM_LIMIT) -> GeneratingSet:
    """Germ generators (anchored at the germ origin) followed by every anchor of every cycle.

    Duplicates are kept; each entry records the strategy and anchor it came from.
    """
    out = []
    for tau in enumerate_admissible_germs(A, germ_limit):
        origin = classify(A, tau).germ.origin
        out.append(generator_vector(A, tau, origin))
    for tau in enumerate_cycles_geq1(A):
        for k in sorted(tau.support):
            out.append(generator_vector(A, tau, k))
    return GeneratingSet(tuple(out), A)


def strategy_from_vector(A: MaxMatrix, x: MaxVector) -> Strategy:
    """Strategy on supp(x) sending each row to its first maximising column of ``a_ij x_j``."""
    ar = A.arith
    if x.is_zero():
        raise ValueError("the zero vector has empty support")
    Ax = otimes_vec(A, x)
    if not all(ar.ge(a, b) for a, b in zip(Ax, x)):
        raise NotSupereigenvector("A ⊗ x ≥ x fails")
    pairs = []
    for i in sorted(x.support):
        best = Ax[i]
        j = next(j for j in range(A.n) if A[i, j] * x[j] != 0 and ar.eq(A[i, j] * x[j], best))
        pairs.append((i, j))
    return Strategy(tuple(pairs))


def subeigenvector_generators(A: MaxMatrix, tau: Strategy) -> list[MaxVector]:
    """All ``n`` columns of the Kleene star of A^{tau-}.

    Column ``k`` equals ``generator_vector(A, tau, k).vector`` for ``k`` in
    supp(tau); columns outside the support are unit vectors.
    """
    if not classify(A, tau).kind.admissible:
        raise InadmissibleStrategy("tau has a cycle of weight below 1")
    star = kleene_star(inverse_matrix(A, tau))
    return [star.column(k) for k in range(A.n)]
