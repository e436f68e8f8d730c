"""Residuation, membership tests, seeded instances and the property report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Arith, EXACT, MaxMatrix, MaxVector, kleene_star, otimes_vec
from .extremals import DominanceIndex, criterion_verdict, is_extremal_oracle, scaled_basis
from .generators import (
    GeneratingSet,
    distinct_vectors,
    generator_vector,
    strategy_from_vector,
    subeigenvector_generators,
)
from .strategy import (
    DEFAULT_GERM_LIMIT,
    StrategyClass,
    classify,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    restrict_matrix,
)

__all__ = [
    "Decomposition",
    "InstanceSpec",
    "PropertyCheck",
    "VerifyReport",
    "POOL_SPREAD",
    "POOL_UNIT_HEAVY",
    "decompose",
    "in_span",
    "is_supereigenvector",
    "random_instance",
    "corpus",
    "sample_supereigenvectors",
    "sample_non_supereigenvectors",
    "verify_paper_properties",
]

POOL_SPREAD = tuple(Fraction(v) for v in ("1/4", "1/2", "1", "2", "4"))
POOL_UNIT_HEAVY = tuple(Fraction(v) for v in ("1/2", "1", "1", "1", "2"))


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple
    residual_equal: bool
    combination: MaxVector


def _vectors(S) -> list[MaxVector]:
    if isinstance(S, GeneratingSet):
        return S.vectors()
    return [getattr(s, "vector", s) for s in S]


def decompose(x: MaxVector, S) -> Decomposition:
    """Largest ``lam_s`` with ``lam_s v^s <= x`` for each member, and whether they rebuild ``x``."""
    ar = x.arith
    if isinstance(S, GeneratingSet):
        uniq, slots = S.distinct
    else:
        uniq, slots = distinct_vectors(_vectors(S))
    supp = x.support
    comb = list(x.arith.zero for _ in range(x.n))
    per = []
    for v in uniq:
        vs = v.support
        if not vs or not vs <= supp:
            per.append(ar.zero)
            continue
        lam = min(x[i] / v[i] for i in vs)
        for i in vs:
            c = lam * v[i]
            if c > comb[i]:
                comb[i] = c
        per.append(lam)
    lams = [per[t] for t in slots]
    combination = MaxVector(tuple(comb), ar)
    return Decomposition(tuple(lams), combination.approx_eq(x), combination)


def in_span(x: MaxVector, S) -> bool:
    return decompose(x, S).residual_equal


def is_supereigenvector(A: MaxMatrix, x: MaxVector) -> bool:
    ar = A.arith
    return all(ar.ge(a, b) for a, b in zip(otimes_vec(A, x), x))


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    n: int
    density: float
    weight_pool: tuple = POOL_SPREAD


def random_instance(spec: InstanceSpec, arith: Arith = EXACT) -> MaxMatrix:
    """Each entry is an edge with probability ``density``, weighted from the pool."""
    rng = random.Random(spec.seed)
    rows = []
    for _ in range(spec.n):
        row = []
        for _ in range(spec.n):
            hit = rng.random() < spec.density
            w = rng.choice(spec.weight_pool)
            row.append(w if hit else 0)
        rows.append(row)
    return MaxMatrix.of(rows, arith)


def corpus(seeds_per_cell: int = 7, sizes=(2, 3, 4, 5, 6), densities=(0.3, 0.5, 0.8)):
    """The fixed test corpus: every (n, density, pool) cell with consecutive seeds."""
    specs = []
    for n in sizes:
        for d in densities:
            for p, pool in enumerate((POOL_SPREAD, POOL_UNIT_HEAVY)):
                for s in range(seeds_per_cell):
                    seed = 1000 * n + 100 * int(d * 10) + 10 * p + s
                    specs.append(InstanceSpec(seed, n, d, pool))
    return specs


_LAMBDA_POOL = tuple(Fraction(v) for v in ("1/8", "1/4", "1/2", "1", "2", "4", "8", "3/2", "2/3"))


def sample_supereigenvectors(
    A: MaxMatrix, S, count: int, seed: int, pool: Sequence = _LAMBDA_POOL
) -> list[MaxVector]:
    """Random max combinations of random nonempty subsets of ``S``."""
    vecs = _vectors(S)
    if not vecs:
        return []
    rng = random.Random(seed)
    ar = A.arith
    out = []
    for _ in range(count):
        k = rng.randint(1, min(len(vecs), 4))
        x = MaxVector.zeros(A.n, ar)
        for v in rng.sample(vecs, k):
            x = x | v.scale(ar.scalar(rng.choice(pool)))
        out.append(x)
    return out


def sample_non_supereigenvectors(
    A: MaxMatrix, count: int, seed: int, pool: Sequence = _LAMBDA_POOL, max_tries: int | None = None
) -> list[MaxVector]:
    """Random nonzero vectors, kept only when ``A ⊗ x >= x`` fails.

    Gives up after ``max_tries`` draws (default ``50 * count``), so matrices whose cone
    is nearly everything may return fewer than ``count`` vectors.
    """
    if max_tries is None:
        max_tries = 50 * count
    rng = random.Random(seed)
    ar = A.arith
    out = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        coords = [ar.scalar(rng.choice(pool)) if rng.random() < 0.7 else ar.zero for _ in range(A.n)]
        x = MaxVector(tuple(coords), ar)
        if not x.is_zero() and not is_supereigenvector(A, x):
            out.append(x)
    return out


@dataclass
class PropertyCheck:
    name: str
    passed: bool = True
    checked: int = 0
    detail: str = ""
    counterexample: dict | None = None

    def fail(self, detail: str, **payload) -> None:
        if self.passed:
            self.passed = False
            self.detail = detail
            self.counterexample = payload


@dataclass
class VerifyReport:
    n: int
    generators: int
    extremals: int
    checks: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_paper_properties(
    A: MaxMatrix, samples: int = 100, seed: int = 0, germ_limit: int = DEFAULT_GERM_LIMIT
) -> VerifyReport:
    """Run the structural checks on one matrix and collect pass/fail per property."""
    ar = A.arith
    result = scaled_basis(A, germ_limit)
    S = result.generating_set
    report = VerifyReport(A.n, len(S), len(result.basis))

    sound = PropertyCheck("generators are supereigenvectors")
    for g in S:
        sound.checked += 1
        if not is_supereigenvector(A, g.vector):
            sound.fail("A ⊗ x >= x fails", generator=g)
    report.checks.append(sound)

    sampled = sample_supereigenvectors(A, S, samples, seed)

    cells = PropertyCheck("every supereigenvector lies in some admissible cell")
    for x in sampled:
        cells.checked += 1
        if x.is_zero():
            continue
        tau = strategy_from_vector(A, x)
        At = restrict_matrix(A, tau)
        Atx = otimes_vec(At, x)
        if not classify(A, tau).kind.admissible:
            cells.fail("strategy of x is inadmissible", x=x, strategy=tau)
        elif not (x.leq(Atx) and Atx.leq(otimes_vec(A, x))):
            cells.fail("A ⊗ x >= A^tau ⊗ x >= x fails", x=x, strategy=tau)
    report.checks.append(cells)

    span = PropertyCheck("sampled supereigenvectors decompose over S")
    for x in sampled:
        span.checked += 1
        if not decompose(x, S).residual_equal:
            span.fail("residual differs", x=x)
    for x in sample_non_supereigenvectors(A, samples, seed + 1):
        span.checked += 1
        if decompose(x, S).residual_equal:
            span.fail("non-supereigenvector decomposes over S", x=x)
    report.checks.append(span)

    star = PropertyCheck("star columns of A^{tau-} equal the generators")
    for tau in enumerate_cycles_geq1(A) + enumerate_admissible_germs(A, germ_limit):
        cols = subeigenvector_generators(A, tau)
        for k in sorted(tau.support):
            star.checked += 1
            if cols[k] != generator_vector(A, tau, k).vector:
                star.fail("column mismatch", strategy=tau, anchor=k)
    report.checks.append(star)

    crit = PropertyCheck("combinatorial criteria agree with the brute-force oracle")
    index = DominanceIndex(S.vectors(), ar)
    for g, v in zip(S, result.verdicts):
        crit.checked += 1
        o = is_extremal_oracle(g, S, index)
        if o.extremal != v.extremal:
            crit.fail("verdict mismatch", generator=g, criterion=v, oracle=o)
        if not v.extremal:
            others = [h for h in S if not h.vector.scaled().approx_eq(g.vector.scaled())]
            report.rejected.append((g, v, decompose(g.vector, others)))
    report.checks.append(crit)

    minimal = PropertyCheck("basis is minimal and spans S")
    basis = list(result.basis)
    for t, b in enumerate(basis):
        minimal.checked += 1
        if in_span(b.vector, basis[:t] + basis[t + 1 :]):
            minimal.fail("basis vector is a combination of the others", vector=b)
    for g in S:
        minimal.checked += 1
        if not in_span(g.vector, basis):
            minimal.fail("generator outside span of the basis", generator=g)
    report.checks.append(minimal)

    return report
