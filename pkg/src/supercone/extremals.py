"""Extremality of generators and assembly of the scaled basis.

Two independent routes decide whether a generator is extremal:

* :func:`is_extremal_oracle` scans the whole generating set for vectors
  below ``x`` in each preorder ``<=_i``;
* the combinatorial criteria look only at chords of the strategy's own
  walk, numbered ``p_0 = k, p_1 = tau(k), ...`` along the walk covering the
  support from the anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Arith, MaxMatrix, MaxVector
from .generators import Generator, GeneratingSet, generating_set
from .strategy import DEFAULT_GERM_LIMIT, Strategy, StrategyClass, classify, covering_walk

__all__ = [
    "ExtremalityVerdict",
    "BasisResult",
    "WrongClass",
    "leq_i",
    "proportional",
    "DominanceIndex",
    "is_extremal_oracle",
    "criterion_gt1",
    "criterion_eq1_germ",
    "criterion_unit_cycle",
    "criterion_verdict",
    "scaled_basis",
]


class WrongClass(ValueError):
    """The criterion does not apply to this strategy/anchor."""


@dataclass(frozen=True)
class ExtremalityVerdict:
    extremal: bool
    rule: str = ""
    # oracle: ((i, generator), ...); criteria: the triggering node pair or edge pair
    witness: tuple = ()
    # float mode only: comparisons that the tolerance decided
    near_ties: tuple = ()


@dataclass(frozen=True)
class BasisResult:
    basis: tuple
    generating_set: GeneratingSet
    rejected: tuple
    verdicts: tuple = field(default=(), repr=False)


def leq_i(y: MaxVector, x: MaxVector, i: int) -> bool:
    """``y <=_i x``: both nonzero at ``i`` and ``y_k / y_i <= x_k / x_i`` for all ``k``."""
    ar = x.arith
    if x[i] == 0 or y[i] == 0:
        return False
    return all(ar.le(yk * x[i], xk * y[i]) for yk, xk in zip(y, x))


def proportional(x: MaxVector, y: MaxVector) -> bool:
    return x.scaled().approx_eq(y.scaled())


def _integer_row(v: MaxVector) -> list[int]:
    """Positive multiple of an exact vector with coprime integer entries."""
    coords = [Fraction(c) for c in v]
    den = math.lcm(*(c.denominator for c in coords)) if coords else 1
    ints = [int(c * den) for c in coords]
    g = math.gcd(*ints)
    return [a // g for a in ints] if g > 1 else ints


class DominanceIndex:
    """Preencoded generating set answering ``<=_i`` queries over all members at once.

    Exact vectors are rescaled to integer rows, so the cross-multiplied ratio
    tests ``y_k x_i <= x_k y_i`` stay exact; int64 is used when products cannot
    overflow, arbitrary-precision integers otherwise.
    """

    _INT64_SAFE = 2**62

    def __init__(self, vectors: Sequence[MaxVector], arith: Arith):
        self.arith = arith
        self.size = len(vectors)
        n = vectors[0].n if vectors else 0
        self._masks = np.array([_support_mask(v) for v in vectors], dtype=np.int64)
        if arith.exact:
            rows = [_integer_row(v) for v in vectors]
            self._rows = np.array(rows, dtype=object).reshape(self.size, n)
            self._top = max((max(r, default=0) for r in rows), default=0)
            self._fast = self._rows.astype(np.int64) if self._top < 2**31 else None
        else:
            self._rows = np.array([list(v) for v in vectors], dtype=float).reshape(self.size, n)

    def _encode(self, x: MaxVector):
        if not self.arith.exact:
            return self._rows, np.array(list(x), dtype=float)
        xr = _integer_row(x)
        if self._fast is not None and max(xr, default=0) * max(self._top, 1) < self._INT64_SAFE:
            return self._fast, np.array(xr, dtype=np.int64)
        return self._rows, np.array(xr, dtype=object)

    def relations(self, x: MaxVector):
        """Members whose support lies in supp(x), with their ``<=_i`` and proportionality masks.

        Returns ``(idx, le, eq)``: ``le[s, i]`` says member ``idx[s]`` is ``<=_i x``
        and ``eq[s, i]`` that it is moreover a multiple of ``x``.
        """
        n = x.n
        xmask = _support_mask(x)
        if self.size == 0:
            return np.zeros(0, dtype=np.intp), np.zeros((0, n), bool), np.zeros((0, n), bool)
        idx = np.flatnonzero((self._masks & ~xmask) == 0)
        Y, X = self._encode(x)
        Y = Y[idx]
        # lhs[s, i, k] = y_k x_i ; rhs[s, i, k] = x_k y_i
        lhs = Y[:, None, :] * X[None, :, None]
        rhs = X[None, None, :] * Y[:, :, None]
        if self.arith.exact:
            le = (lhs <= rhs).all(axis=2)
            eq = (lhs == rhs).all(axis=2)
        else:
            slack = self.arith.tol * np.maximum(np.abs(lhs), np.abs(rhs))
            le = (lhs <= rhs + slack).all(axis=2)
            eq = (np.abs(lhs - rhs) <= slack).all(axis=2)
        pos = np.asarray(Y > 0, dtype=bool) & np.asarray(X > 0, dtype=bool)[None, :]
        return idx, pos & np.asarray(le, dtype=bool), pos & np.asarray(eq, dtype=bool)

    def below_all(self, x: MaxVector) -> dict[int, np.ndarray]:
        """For each ``i`` in supp(x): members ``y <=_i x`` that are not multiples of ``x``."""
        idx, le, eq = self.relations(x)
        hit = le & ~eq
        return {i: idx[hit[:, i]] for i in sorted(x.support)}

    def below(self, x: MaxVector, i: int) -> np.ndarray:
        return self.below_all(x).get(i, np.zeros(0, dtype=np.intp))


def _support_mask(v: MaxVector) -> int:
    return sum(1 << i for i, c in enumerate(v) if c != 0)


def _member_vectors(S) -> list[MaxVector]:
    if isinstance(S, GeneratingSet):
        return S.vectors()
    return [s.vector if isinstance(s, Generator) else s for s in S]


def is_extremal_oracle(x, S, index: DominanceIndex | None = None) -> ExtremalityVerdict:
    """Brute-force test of ``x`` against the cone spanned by ``S``.

    ``x`` is not extremal iff every ``i`` in its support admits some member
    ``y^i <=_i x`` that is not a multiple of ``x``. Pass a prebuilt ``index``
    of ``S`` when testing many vectors against the same set.
    """
    vec = x.vector if isinstance(x, Generator) else x
    if index is None:
        index = DominanceIndex(_member_vectors(S), vec.arith)
    witness = []
    for i, hits in index.below_all(vec).items():
        if hits.size == 0:
            return ExtremalityVerdict(True, "oracle")
        witness.append((i, S[int(hits[0])]))
    return ExtremalityVerdict(False, "oracle", tuple(witness))


class _Cmp:
    """Scalar comparisons that remember float-mode near ties."""

    def __init__(self, ar: Arith):
        self.ar = ar
        self.ties: list = []

    def ge(self, a, b, what) -> bool:
        if self.ar.near(a, b):
            self.ties.append(what)
        return self.ar.ge(a, b)

    def gt(self, a, b, what) -> bool:
        if self.ar.near(a, b):
            self.ties.append(what)
        return self.ar.gt(a, b)


def _walk_weights(A: MaxMatrix, p: list[int]) -> list:
    """Prefix products: ``W[t]`` is the weight of the walk ``p_0 -> ... -> p_t``."""
    W = [A.arith.one]
    for a, b in zip(p, p[1:]):
        W.append(W[-1] * A[a, b])
    return W


def _back_edge(A, p, W, cmp) -> tuple | None:
    """An edge ``p_j -> p_i`` (i <= j, j not last) closing a cycle of weight >= 1."""
    m = len(p)
    one = A.arith.one
    for j in range(m - 1):
        for i in range(j + 1):
            a = A[p[j], p[i]]
            if a != 0 and cmp.ge(a * W[j] / W[i], one, (p[j], p[i])):
                return (p[j], p[i])
    return None


def _verdict(found, rule, cmp) -> ExtremalityVerdict:
    if found is None:
        return ExtremalityVerdict(True, "", (), tuple(cmp.ties))
    return ExtremalityVerdict(False, rule, found, tuple(cmp.ties))


def criterion_gt1(A: MaxMatrix, tau: Strategy, k: int) -> ExtremalityVerdict:
    """Extremality of ``x^(tau,k)`` when the cycle of ``tau`` has weight above 1.

    Applies to a germ anchored at its origin or a cycle anchored anywhere.
    Not extremal iff a chord ``p_i -> p_j`` (j > i + 1) is at least as heavy
    as the walk it skips, or an edge back from a non-final ``p_j`` to ``p_i``
    closes a cycle of weight at least 1.
    """
    c = classify(A, tau)
    ok = c.kind is StrategyClass.CYCLE_GT1 and k in tau
    ok = ok or (c.kind is StrategyClass.GERM_GT1 and k == c.germ.origin)
    if not ok:
        raise WrongClass(f"{c.kind.value} strategy anchored at {k}")
    p = covering_walk(tau, k)
    W = _walk_weights(A, p)
    cmp = _Cmp(A.arith)
    for i in range(len(p)):
        for j in range(i + 2, len(p)):
            a = A[p[i], p[j]]
            if a != 0 and cmp.ge(a, W[j] / W[i], (p[i], p[j])):
                return _verdict((p[i], p[j]), "shortcut", cmp)
    return _verdict(_back_edge(A, p, W, cmp), "back-edge", cmp)


def criterion_eq1_germ(A: MaxMatrix, tau: Strategy) -> ExtremalityVerdict:
    """Extremality of ``x^(tau,o)`` for a germ whose cycle has weight exactly 1.

    As :func:`criterion_gt1`, except that a chord leaving the node just
    before the cycle origin must be strictly heavier than the walk it skips,
    or exactly as heavy while an edge out of the final node closes a cycle
    of weight at least 1 somewhere other than at the cycle origin.
    """
    c = classify(A, tau)
    if c.kind is not StrategyClass.GERM_EQ1:
        raise WrongClass(f"{c.kind.value} strategy")
    p = covering_walk(tau, c.germ.origin)
    W = _walk_weights(A, p)
    cmp = _Cmp(A.arith)
    c0 = c.germ.cycle_origin
    tight = None  # a chord into the cycle, skipping its origin, exactly as heavy as the walk
    for i in range(len(p)):
        strict = i + 1 < len(p) and p[i + 1] == c0
        for j in range(i + 2, len(p)):
            a = A[p[i], p[j]]
            if a == 0:
                continue
            w = W[j] / W[i]
            if not strict:
                hit = cmp.ge(a, w, (p[i], p[j]))
            elif cmp.gt(a, w, (p[i], p[j])):
                hit = True
            else:
                hit = False
                if tight is None and A.arith.eq(a, w):
                    tight = (p[i], p[j])
            if hit:
                return _verdict((p[i], p[j]), "shortcut", cmp)
    found = _back_edge(A, p, W, cmp)
    if found is not None:
        return _verdict(found, "back-edge", cmp)
    if tight is not None:
        # the tight chord drops the cycle origin once the final node closes another cycle
        last = len(p) - 1
        one = A.arith.one
        for r in range(last + 1):
            a = A[p[last], p[r]]
            if p[r] != c0 and a != 0 and cmp.ge(a * W[last] / W[r], one, (p[last], p[r])):
                return _verdict((tight, (p[last], p[r])), "tight-shortcut", cmp)
    return _verdict(None, "", cmp)


def criterion_unit_cycle(A: MaxMatrix, tau: Strategy) -> ExtremalityVerdict:
    """Extremality of the common ray of a weight-1 cycle.

    Not extremal iff two chords ``(k1, l1)``, ``(k2, l2)`` inside the cycle
    with ``k1 != k2`` each close, with the cycle's walk from ``l`` back to
    ``k``, a cycle of weight at least 1.
    """
    c = classify(A, tau)
    if c.kind is not StrategyClass.CYCLE_EQ1:
        raise WrongClass(f"{c.kind.value} strategy")
    p = covering_walk(tau, min(tau.support))
    W = _walk_weights(A, p)
    total = W[-1] * A[p[-1], p[0]]
    pos = {v: t for t, v in enumerate(p)}
    cmp = _Cmp(A.arith)
    one = A.arith.one
    first = {}
    m = tau.mapping
    for k in p:
        for l in p:
            a = A[k, l]
            if a == 0 or l == m[k]:
                continue
            back = W[pos[k]] / W[pos[l]]
            if pos[k] < pos[l]:
                back *= total
            if cmp.ge(a * back, one, (k, l)) and k not in first:
                first[k] = (k, l)
    if len(first) >= 2:
        e1, e2 = list(first.values())[:2]
        return ExtremalityVerdict(False, "two-chords", (e1, e2), tuple(cmp.ties))
    return ExtremalityVerdict(True, "", (), tuple(cmp.ties))


def criterion_verdict(A: MaxMatrix, g: Generator) -> ExtremalityVerdict:
    """Dispatch ``g`` to the criterion matching its strategy class."""
    kind = g.kind
    if kind in (StrategyClass.CYCLE_GT1, StrategyClass.GERM_GT1):
        return criterion_gt1(A, g.strategy, g.anchor)
    if kind is StrategyClass.GERM_EQ1:
        return criterion_eq1_germ(A, g.strategy)
    if kind is StrategyClass.CYCLE_EQ1:
        return criterion_unit_cycle(A, g.strategy)
    raise WrongClass(f"no criterion for {kind.value} generators")


def scaled_basis(A: MaxMatrix, germ_limit: int = DEFAULT_GERM_LIMIT) -> BasisResult:
    """The scaled extremals of V*(A) with provenance, plus everything rejected."""
    S = generating_set(A, germ_limit)
    verdicts = []
    unit_cache: dict[Strategy, ExtremalityVerdict] = {}
    for g in S:
        if g.kind is StrategyClass.CYCLE_EQ1:
            if g.strategy not in unit_cache:
                unit_cache[g.strategy] = criterion_unit_cycle(A, g.strategy)
            verdicts.append(unit_cache[g.strategy])
        else:
            verdicts.append(criterion_verdict(A, g))
    basis: list[Generator] = []
    rejected = []
    for g, v in zip(S, verdicts):
        if not v.extremal:
            rejected.append((g, v))
            continue
        sv = g.vector.scaled()
        if any(b.vector.approx_eq(sv) for b in basis):
            continue
        basis.append(Generator(sv, g.strategy, g.anchor, g.kind, g.cycle_weight))
    return BasisResult(tuple(basis), S, tuple(rejected), tuple(verdicts))
