"""Partial strategies and the functional digraphs they induce.

A strategy ``tau`` maps each node of its support to a node of its support.
Restricting ``A`` to the edges ``(i, tau(i))`` yields a digraph with
out-degree one on the support, so every node reaches exactly one cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import MaxMatrix, Walk, cycle_weight, simple_cycles

__all__ = [
    "Strategy",
    "StrategyClass",
    "GermInfo",
    "Classification",
    "UnboundStrategy",
    "EnumerationLimitExceeded",
    "DEFAULT_GERM_LIMIT",
    "check_bound",
    "restrict_matrix",
    "inverse_matrix",
    "functional_cycles",
    "classify",
    "enumerate_cycles_geq1",
    "enumerate_admissible_germs",
    "unique_walk",
    "covering_walk",
    "end_node",
]

DEFAULT_GERM_LIMIT = 10**6


class UnboundStrategy(ValueError):
    """The strategy uses a pair (i, tau(i)) that is not an edge of D(A)."""


class EnumerationLimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"germ enumeration exceeded the limit of {limit}")
        self.limit = limit


@dataclass(frozen=True)
class Strategy:
    """Partial self-map of the node set, stored as sorted ``(i, tau(i))`` pairs."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs))
        object.__setattr__(self, "pairs", pairs)
        sources = [i for i, _ in pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("a strategy maps each node to a single successor")
        dom = set(sources)
        for i, j in pairs:
            if j not in dom:
                raise ValueError(f"tau({i}) = {j} leaves the support")

    @classmethod
    def of(cls, mapping: Mapping[int, int] | Iterable[tuple[int, int]]) -> "Strategy":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple((int(i), int(j)) for i, j in items))

    @classmethod
    def from_cycle(cls, nodes: Iterable[int]) -> "Strategy":
        nodes = list(nodes)
        return cls(tuple((v, nodes[(t + 1) % len(nodes)]) for t, v in enumerate(nodes)))

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.pairs)

    def __call__(self, i: int) -> int:
        for a, b in self.pairs:
            if a == i:
                return b
        raise KeyError(i)

    def __contains__(self, i) -> bool:
        return any(a == i for a, _ in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.support)), self.pairs)


class StrategyClass(enum.Enum):
    CYCLE_EQ1 = "cycle=1"
    CYCLE_GT1 = "cycle>1"
    GERM_EQ1 = "germ=1"
    GERM_GT1 = "germ>1"
    OTHER_ADMISSIBLE = "other"
    INADMISSIBLE = "inadmissible"

    @property
    def is_cycle(self) -> bool:
        return self in (StrategyClass.CYCLE_EQ1, StrategyClass.CYCLE_GT1)

    @property
    def is_germ(self) -> bool:
        return self in (StrategyClass.GERM_EQ1, StrategyClass.GERM_GT1)

    @property
    def admissible(self) -> bool:
        return self is not StrategyClass.INADMISSIBLE


@dataclass(frozen=True)
class GermInfo:
    origin: int
    cycle_origin: int
    cycle_nodes: tuple
    walk_nodes: tuple
    cycle_weight: object


@dataclass(frozen=True)
class Classification:
    kind: StrategyClass
    germ: GermInfo | None = None
    cycle_weight: object = None  # weight of the unique cycle, if there is one


def check_bound(A: MaxMatrix, tau: Strategy) -> None:
    for i, j in tau.pairs:
        if not (0 <= i < A.n and 0 <= j < A.n):
            raise UnboundStrategy(f"node outside 0..{A.n - 1} in strategy")
        if A[i, j] == 0:
            raise UnboundStrategy(f"({i}, {j}) is not an edge of D(A)")


def restrict_matrix(A: MaxMatrix, tau: Strategy) -> MaxMatrix:
    """A^tau: keep only the entries a_{i, tau(i)}."""
    check_bound(A, tau)
    m = tau.mapping
    z = A.arith.zero
    return MaxMatrix(
        tuple(tuple(A[i, j] if m.get(i) == j else z for j in range(A.n)) for i in range(A.n)),
        A.arith,
    )


def inverse_matrix(A: MaxMatrix, tau: Strategy) -> MaxMatrix:
    """A^{tau-}: entry (tau(j), j) is 1 / a_{j, tau(j)}, everything else zero."""
    check_bound(A, tau)
    rows = [[A.arith.zero] * A.n for _ in range(A.n)]
    for j, i in tau.pairs:
        rows[i][j] = A.arith.one / A[j, i]
    return MaxMatrix(tuple(tuple(r) for r in rows), A.arith)


def functional_cycles(tau: Strategy) -> list[tuple[int, ...]]:
    """Cycles of D(A^tau), each listed from its first node met by ascending scan."""
    m = tau.mapping
    state: dict[int, int] = {}
    cycles = []
    for start in sorted(m):
        path = []
        v = start
        while v not in state:
            state[v] = start
            path.append(v)
            v = m[v]
        if state[v] == start:
            cycles.append(tuple(path[path.index(v):]))
    return cycles


def classify(A: MaxMatrix, tau: Strategy) -> Classification:
    check_bound(A, tau)
    ar = A.arith
    cycles = functional_cycles(tau)
    weights = [cycle_weight(A, c) for c in cycles]
    if any(ar.lt(w, ar.one) for w in weights):
        return Classification(StrategyClass.INADMISSIBLE)
    if len(cycles) != 1:
        return Classification(StrategyClass.OTHER_ADMISSIBLE)
    cyc, w = cycles[0], weights[0]
    unit = ar.eq(w, ar.one)
    m = tau.mapping
    if len(cyc) == len(m):
        kind = StrategyClass.CYCLE_EQ1 if unit else StrategyClass.CYCLE_GT1
        return Classification(kind, cycle_weight=w)
    indeg = {i: 0 for i in m}
    for j in m.values():
        indeg[j] += 1
    sources = [i for i, d in indeg.items() if d == 0]
    if len(sources) != 1:
        return Classification(StrategyClass.OTHER_ADMISSIBLE, cycle_weight=w)
    origin = sources[0]
    on_cycle = set(cyc)
    walk = [origin]
    v = m[origin]
    while v not in on_cycle:
        walk.append(v)
        v = m[v]
    c0 = v
    ordered = [c0]
    u = m[c0]
    while u != c0:
        ordered.append(u)
        u = m[u]
    info = GermInfo(origin, c0, tuple(ordered), tuple(walk), w)
    kind = StrategyClass.GERM_EQ1 if unit else StrategyClass.GERM_GT1
    return Classification(kind, germ=info, cycle_weight=w)


def enumerate_cycles_geq1(A: MaxMatrix) -> list[Strategy]:
    """Simple cycles of D(A) of weight at least 1, as cyclic strategies."""
    ar = A.arith
    found = [
        Strategy.from_cycle(c) for c in simple_cycles(A) if ar.ge(cycle_weight(A, c), ar.one)
    ]
    return sorted(found, key=Strategy.sort_key)


def enumerate_admissible_germs(A: MaxMatrix, limit: int = DEFAULT_GERM_LIMIT) -> list[Strategy]:
    """Every weight->=1 cycle with one simple access path attached.

    The path starts outside the cycle, avoids it, and its last edge enters a
    cycle node. Raises :class:`EnumerationLimitExceeded` past ``limit`` germs.
    """
    if limit <= 0:
        raise ValueError("limit must be positive")
    preds = [A.predecessors(j) for j in range(A.n)]
    germs: list[tuple[tuple, int, Strategy]] = []
    for cyc in enumerate_cycles_geq1(A):
        on_cycle = cyc.support
        base = cyc.mapping

        # stack of (path head, path as head-first list of nodes, extra pairs)
        stack = []
        for c in sorted(on_cycle):
            for u in preds[c]:
                if u not in on_cycle:
                    stack.append((u, {u}, ((u, c),)))
        while stack:
            head, used, extra = stack.pop()
            if len(germs) >= limit:
                raise EnumerationLimitExceeded(limit)
            pairs = tuple(base.items()) + extra
            tau = Strategy(pairs)
            germs.append((tuple(sorted(tau.support)), head, tau))
            for u in preds[head]:
                if u not in on_cycle and u not in used:
                    stack.append((u, used | {u}, extra + ((u, head),)))
    germs.sort(key=lambda g: (g[0], g[1], g[2].pairs))
    return [g[2] for g in germs]


def _check_in_support(tau: Strategy, *nodes: int) -> None:
    for v in nodes:
        if v not in tau:
            raise ValueError(f"node {v} is outside supp(tau)")


def unique_walk(tau: Strategy, k: int, i: int) -> Walk | None:
    """The walk from ``k`` to ``i`` in D(A^tau), or ``None`` if ``k`` does not reach ``i``."""
    _check_in_support(tau, k, i)
    m = tau.mapping
    nodes = [k]
    seen = {k}
    v = k
    while v != i:
        v = m[v]
        if v in seen:
            return None
        seen.add(v)
        nodes.append(v)
    return Walk(tuple(nodes))


def covering_walk(tau: Strategy, k: int) -> list[int]:
    """Nodes first-visited when iterating tau from ``k``, in order.

    Raises ``ValueError`` unless this walk covers the whole support, which
    holds exactly for a germ from its origin or a cycle from any node.
    """
    _check_in_support(tau, k)
    m = tau.mapping
    order = [k]
    seen = {k}
    v = m[k]
    while v not in seen:
        order.append(v)
        seen.add(v)
        v = m[v]
    if len(order) != len(m):
        raise ValueError(f"the walk from {k} does not cover supp(tau)")
    return order


def end_node(tau: Strategy, k: int) -> int:
    return covering_walk(tau, k)[-1]
