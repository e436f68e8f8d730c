"""Max-times semiring arithmetic over nonnegative numbers.

Matrices and vectors are immutable. Every value carries an :class:`Arith`
that decides how scalars are compared: exactly (``fractions.Fraction``) or
as floats with a relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Arith",
    "EXACT",
    "DivergenceError",
    "DimensionError",
    "NotAnEdge",
    "MaxMatrix",
    "MaxVector",
    "Walk",
    "oplus",
    "otimes",
    "otimes_vec",
    "matrix_power",
    "walk_weight",
    "simple_cycles",
    "cycle_weight",
    "max_cycle_weight",
    "kleene_star",
]


class DivergenceError(ArithmeticError):
    """The Kleene star does not exist: some cycle has weight above 1."""

    def __init__(self, weight):
        super().__init__(f"cycle weight {weight} exceeds 1; Kleene star diverges")
        self.weight = weight


class DimensionError(ValueError):
    pass


class NotAnEdge(ValueError):
    pass


@dataclass(frozen=True)
class Arith:
    """Scalar mode.

    ``exact=True`` stores values as :class:`~fractions.Fraction` and decides
    every comparison exactly. Otherwise values are floats and two numbers are
    equal when they differ by at most ``tol`` relative to the larger one.
    """

    exact: bool = True
    tol: float = 1e-9

    def __post_init__(self):
        if not self.exact and not self.tol > 0:
            raise ValueError("float mode needs a positive tolerance")

    @classmethod
    def floating(cls, tol: float = 1e-9) -> "Arith":
        return cls(exact=False, tol=tol)

    @property
    def zero(self):
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self):
        return Fraction(1) if self.exact else 1.0

    def scalar(self, value):
        """Coerce ``value`` (number or ``"p/q"`` / decimal string) to this mode."""
        if self.exact:
            if isinstance(value, float):
                v = Fraction(repr(value))
            else:
                v = Fraction(value)
        else:
            v = float(Fraction(value)) if isinstance(value, str) else float(value)
        if v < 0:
            raise ValueError(f"negative entry {value!r}; max algebra is over nonnegative numbers")
        return v

    def eq(self, a, b) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.tol * max(abs(a), abs(b))

    def gt(self, a, b) -> bool:
        return a > b and not self.eq(a, b)

    def lt(self, a, b) -> bool:
        return a < b and not self.eq(a, b)

    def ge(self, a, b) -> bool:
        return not self.lt(a, b)

    def le(self, a, b) -> bool:
        return not self.gt(a, b)

    def near(self, a, b) -> bool:
        """True for a float-mode comparison decided only by the tolerance."""
        return not self.exact and a != b and self.eq(a, b)


EXACT = Arith()


@dataclass(frozen=True)
class MaxVector:
    coords: tuple
    arith: Arith = field(default=EXACT, compare=False)

    @classmethod
    def of(cls, values: Iterable, arith: Arith = EXACT) -> "MaxVector":
        return cls(tuple(arith.scalar(v) for v in values), arith)

    @classmethod
    def zeros(cls, n: int, arith: Arith = EXACT) -> "MaxVector":
        return cls((arith.zero,) * n, arith)

    @classmethod
    def unit(cls, n: int, k: int, arith: Arith = EXACT) -> "MaxVector":
        return cls(tuple(arith.one if i == k else arith.zero for i in range(n)), arith)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self) -> Iterator:
        return iter(self.coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.coords) if v != 0)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coords)

    def scale(self, lam) -> "MaxVector":
        return MaxVector(tuple(lam * v for v in self.coords), self.arith)

    def scaled(self) -> "MaxVector":
        """Representative of the ray with maximum coordinate 1 (zero stays zero)."""
        top = max(self.coords, default=0)
        if top == 0:
            return self
        return MaxVector(tuple(v / top for v in self.coords), self.arith)

    def __or__(self, other: "MaxVector") -> "MaxVector":
        _check_len(self.n, other.n)
        return MaxVector(tuple(max(a, b) for a, b in zip(self.coords, other.coords)), self.arith)

    def leq(self, other: "MaxVector") -> bool:
        _check_len(self.n, other.n)
        return all(self.arith.le(a, b) for a, b in zip(self.coords, other.coords))

    def approx_eq(self, other: "MaxVector") -> bool:
        _check_len(self.n, other.n)
        return all(self.arith.eq(a, b) for a, b in zip(self.coords, other.coords))


@dataclass(frozen=True)
class MaxMatrix:
    entries: tuple
    arith: Arith = field(default=EXACT, compare=False)

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise DimensionError("matrix must be square")

    @classmethod
    def of(cls, rows: Sequence[Sequence], arith: Arith = EXACT) -> "MaxMatrix":
        return cls(tuple(tuple(arith.scalar(v) for v in row) for row in rows), arith)

    @classmethod
    def zeros(cls, n: int, arith: Arith = EXACT) -> "MaxMatrix":
        return cls(tuple((arith.zero,) * n for _ in range(n)), arith)

    @classmethod
    def identity(cls, n: int, arith: Arith = EXACT) -> "MaxMatrix":
        return cls(
            tuple(tuple(arith.one if i == j else arith.zero for j in range(n)) for i in range(n)),
            arith,
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> MaxVector:
        return MaxVector(tuple(row[j] for row in self.entries), self.arith)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, v in enumerate(row) if v != 0]

    def successors(self, i: int) -> list[int]:
        return [j for j, v in enumerate(self.entries[i]) if v != 0]

    def predecessors(self, j: int) -> list[int]:
        return [i for i in range(self.n) if self.entries[i][j] != 0]

    def permuted(self, perm: Sequence[int]) -> "MaxMatrix":
        """Relabel nodes: node ``i`` of ``self`` becomes node ``perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        return MaxMatrix(
            tuple(tuple(self.entries[inv[a]][inv[b]] for b in range(n)) for a in range(n)),
            self.arith,
        )

    def leq(self, other: "MaxMatrix") -> bool:
        _check_len(self.n, other.n)
        return all(
            self.arith.le(a, b)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )


@dataclass(frozen=True)
class Walk:
    nodes: tuple

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("a walk has at least one node")

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def is_cycle(self) -> bool:
        return self.length > 0 and self.nodes[0] == self.nodes[-1]

    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.nodes, self.nodes[1:]))


def _check_len(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"dimension mismatch: {a} vs {b}")


def oplus(A: MaxMatrix, B: MaxMatrix) -> MaxMatrix:
    _check_len(A.n, B.n)
    return MaxMatrix(
        tuple(tuple(max(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)),
        A.arith,
    )


def otimes(A: MaxMatrix, B: MaxMatrix) -> MaxMatrix:
    _check_len(A.n, B.n)
    n = A.n
    cols = [tuple(B.entries[j][k] for j in range(n)) for k in range(n)]
    return MaxMatrix(
        tuple(
            tuple(max((a * b for a, b in zip(row, col)), default=A.arith.zero) for col in cols)
            for row in A.entries
        ),
        A.arith,
    )


def otimes_vec(A: MaxMatrix, x: MaxVector) -> MaxVector:
    _check_len(A.n, x.n)
    return MaxVector(
        tuple(max((a * v for a, v in zip(row, x.coords)), default=A.arith.zero) for row in A.entries),
        A.arith,
    )


def matrix_power(A: MaxMatrix, t: int) -> MaxMatrix:
    if t < 0:
        raise ValueError("negative power")
    P = MaxMatrix.identity(A.n, A.arith)
    for _ in range(t):
        P = otimes(P, A)
    return P


def walk_weight(A: MaxMatrix, walk: Walk):
    w = A.arith.one
    for i, j in walk.steps():
        a = A[i, j]
        if a == 0:
            raise NotAnEdge(f"({i}, {j}) is not an edge")
        w *= a
    return w


def _scc_with(s: int, adj: list[list[int]], lo: int) -> set[int]:
    """Nodes >= lo lying on a common cycle with ``s`` in the induced subgraph."""
    n = len(adj)
    radj: list[list[int]] = [[] for _ in range(n)]
    for u in range(lo, n):
        for v in adj[u]:
            if v >= lo:
                radj[v].append(u)

    def reach(graph):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in graph[u]:
                if v >= lo and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    return reach(adj) & reach(radj)


def simple_cycles(A: MaxMatrix) -> list[tuple[int, ...]]:
    """All elementary circuits of the digraph of ``A`` (Johnson's algorithm).

    Each circuit is returned as its node sequence starting from its smallest
    node, without repeating the start. Self-loops are length-one circuits.
    """
    n = A.n
    adj = [A.successors(i) for i in range(n)]
    out: list[tuple[int, ...]] = []
    for s in range(n):
        comp = _scc_with(s, adj, s)
        blocked: set[int] = set()
        B: dict[int, set[int]] = {v: set() for v in comp}
        stack: list[int] = []

        def unblock(u: int) -> None:
            todo = [u]
            while todo:
                v = todo.pop()
                if v in blocked:
                    blocked.discard(v)
                    todo.extend(B[v])
                    B[v].clear()

        def circuit(v: int) -> bool:
            found = False
            stack.append(v)
            blocked.add(v)
            for w in adj[v]:
                if w not in comp:
                    continue
                if w == s:
                    out.append(tuple(stack))
                    found = True
                elif w not in blocked and circuit(w):
                    found = True
            if found:
                unblock(v)
            else:
                for w in adj[v]:
                    if w in comp:
                        B[w].add(v)
            stack.pop()
            return found

        circuit(s)
    return out


def cycle_weight(A: MaxMatrix, cycle: Sequence[int]):
    w = A.arith.one
    for t, i in enumerate(cycle):
        w *= A[i, cycle[(t + 1) % len(cycle)]]
    return w


def max_cycle_weight(A: MaxMatrix):
    """Largest weight of a simple cycle of D(A); zero when D(A) is acyclic."""
    return max((cycle_weight(A, c) for c in simple_cycles(A)), default=A.arith.zero)


def kleene_star(A: MaxMatrix) -> MaxMatrix:
    """``I ⊕ A ⊕ A² ⊕ ...`` via an all-pairs closure.

    Raises :class:`DivergenceError` if some cycle weight exceeds 1.
    """
    ar = A.arith
    lam = max_cycle_weight(A)
    if ar.gt(lam, ar.one):
        raise DivergenceError(lam)
    n = A.n
    a = [list(row) for row in A.entries]
    for k in range(n):
        rk = a[k]
        for i in range(n):
            aik = a[i][k]
            if aik == 0:
                continue
            ri = a[i]
            for j in range(n):
                v = aik * rk[j]
                if v > ri[j]:
                    ri[j] = v
    for i in range(n):
        if a[i][i] < ar.one:
            a[i][i] = ar.one
    return MaxMatrix(tuple(tuple(r) for r in a), ar)
