"""Exact integer linear algebra and finite abelian groups.

Matrices are plain lists of rows of Python ints, so entries never overflow.
Groups are kept in invariant-factor form ``d_1 | d_2 | ... | d_k`` from the
moment they are built; two groups are isomorphic exactly when their
invariant-factor tuples are equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from sympy import factorint, isprime

Matrix = list[list[int]]

INFINITE: Literal["infinite"] = "infinite"

DEFAULT_HOM_CAP = 10**8


class SearchSpaceTooLarge(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"search space too large: {what} has {size} items (cap {cap})")
        self.what = what
        self.size = size
        self.cap = cap


# ---------------------------------------------------------------------------
# matrices


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*A)]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M: Matrix, cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``D = U @ M @ V``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries forming a divisibility chain (zeros last).  ``cols`` is needed
    only when ``M`` has no rows.
    """
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over the field with ``p`` elements."""
    M = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# groups


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


def invariant_factors_of(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of cyclic groups of the given orders.

    Orders 0 (infinite cyclic) are rejected; orders 1 are dropped.
    """
    powers: dict[int, list[int]] = {}
    for o in orders:
        if o < 1:
            raise ValueError(f"cyclic order must be positive, got {o}")
        for p, e in factorint(o).items():
            powers.setdefault(p, []).append(p**e)
    length = max((len(v) for v in powers.values()), default=0)
    factors = [1] * length
    for v in powers.values():
        v.sort(reverse=True)
        for i, q in enumerate(v):
            factors[length - 1 - i] *= q
    return tuple(factors)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group ``Z_{d_1} + ... + Z_{d_k}`` with ``d_i | d_{i+1}``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for i, d in enumerate(f):
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {f}")
            if i + 1 < len(f) and f[i + 1] % d:
                raise ValueError(f"invariant factors must form a divisibility chain, got {f}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FiniteAbelianGroup:
        return cls(invariant_factors_of(orders))

    @classmethod
    def from_partitions(cls, parts: dict[int, Sequence[int]]) -> FiniteAbelianGroup:
        """Build from ``{p: (e_1, e_2, ...)}`` meaning ``+ Z_{p^e_i}``."""
        return cls.from_orders([p**e for p, es in parts.items() for e in es])

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def primes(self) -> list[int]:
        return sorted(factorint(self.order)) if self.order > 1 else []

    def partition(self, p: int) -> tuple[int, ...]:
        """Exponents of the cyclic factors of the ``p``-primary part, descending."""
        parts = []
        for d in self.invariant_factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                parts.append(e)
        return tuple(sorted(parts, reverse=True))

    def primary_part(self, p: int) -> FiniteAbelianGroup:
        return FiniteAbelianGroup.from_orders([p**e for e in self.partition(p)])

    def direct_sum(self, *others: FiniteAbelianGroup) -> FiniteAbelianGroup:
        orders = list(self.invariant_factors)
        for o in others:
            orders.extend(o.invariant_factors)
        return FiniteAbelianGroup.from_orders(orders)

    __add__ = direct_sum

    def is_quotient_of(self, other: FiniteAbelianGroup) -> bool:
        """True when ``self`` is a quotient (equivalently a subgroup) of ``other``."""
        if other.order % self.order:
            return False
        for p in self.primes():
            mu, lam = self.partition(p), other.partition(p)
            if len(mu) > len(lam) or any(a > b for a, b in zip(mu, lam)):
                return False
        return True

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return "+".join(f"Z{d}" for d in self.invariant_factors)


TRIVIAL = FiniteAbelianGroup()


@dataclass(frozen=True)
class FreeExtension:
    """``torsion + Z^free_rank``; generators are the torsion ones, then the free ones."""

    torsion: FiniteAbelianGroup = TRIVIAL
    free_rank: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be non-negative")

    @property
    def generator_orders(self) -> tuple[int, ...]:
        return self.torsion.invariant_factors + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return self.torsion.rank + self.free_rank


def presented_cokernel(relations: Sequence[Sequence[int]],
                       generator_orders: Sequence[int]) -> tuple[FiniteAbelianGroup, int]:
    """Torsion part and free rank of ``(+ Z_{o_j}) / <relations>``; ``o_j = 0`` is free."""
    n = len(generator_orders)
    rows = []
    for r in relations:
        if len(r) != n:
            raise ValueError(f"relation {list(r)} has length {len(r)}, ambient has {n} generators")
        rows.append([int(x) for x in r])
    for i, d in enumerate(generator_orders):
        if d:
            rows.append([d if j == i else 0 for j in range(n)])
    if n == 0:
        return TRIVIAL, 0
    if not rows:
        return TRIVIAL, n
    D, _, _ = smith_normal_form(rows, cols=n)
    nonzero = [d for d in diagonal(D) if d]
    return FiniteAbelianGroup.from_orders([d for d in nonzero if d > 1]), n - len(nonzero)


def cokernel_decomposition(relations: Sequence[Sequence[int]],
                           ambient: FreeExtension) -> tuple[FiniteAbelianGroup, int]:
    """Torsion part and free rank of ``ambient / <relations>``."""
    return presented_cokernel(relations, ambient.generator_orders)


def cokernel(relations: Sequence[Sequence[int]],
             ambient: FreeExtension) -> FiniteAbelianGroup | Literal["infinite"]:
    """Quotient of ``ambient`` by the subgroup generated by ``relations``."""
    torsion, free = cokernel_decomposition(relations, ambient)
    return INFINITE if free else torsion


def min_generators(G: FiniteAbelianGroup) -> int:
    return G.rank


def xi_p(G: FiniteAbelianGroup, p: int) -> int:
    """Dimension of ``G (x) Z_p`` over ``Z_p``."""
    _require_prime(p)
    return sum(1 for d in G.invariant_factors if d % p == 0)


def s_q(G: FiniteAbelianGroup, p: int, k: int, free_rank: int = 0) -> int:
    """Dimension of ``p^(k-1) A / p^k A`` for ``A = G + Z^free_rank``.

    Counts the cyclic factors of order divisible by ``p^k`` plus the free
    rank, and never increases when passing to a quotient.
    """
    _require_prime(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    q = p**k
    return sum(1 for d in G.invariant_factors if d % q == 0) + free_rank


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    """Map between summand-presented groups.

    Column ``j`` of ``matrix`` is the image of domain generator ``j`` in
    codomain coordinates.  A domain order of 0 marks a free generator.
    """

    domain_orders: tuple[int, ...]
    codomain_orders: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.codomain_orders):
            raise ValueError("matrix needs one row per codomain generator")
        for row in self.matrix:
            if len(row) != len(self.domain_orders):
                raise ValueError("matrix needs one column per domain generator")
        for j, o in enumerate(self.domain_orders):
            if o == 0:
                continue
            for r, e in enumerate(self.codomain_orders):
                if e and (o * self.matrix[r][j]) % e:
                    raise ValueError(f"generator {j} of order {o} cannot map to {self.column(j)}")

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        out = []
        for row, e in zip(self.matrix, self.codomain_orders):
            v = sum(a * b for a, b in zip(row, x))
            out.append(v % e if e else v)
        return tuple(out)

    def is_surjective(self) -> bool:
        return _spans(self.matrix, self.codomain_orders)


def _spans(matrix: Sequence[Sequence[int]], codomain_orders: Sequence[int]) -> bool:
    """Whether the columns generate the finite group ``+ Z_{e_r}``."""
    order = math.prod(codomain_orders)
    if order == 1:
        return True
    for p in factorint(order):
        rows = [matrix[r] for r, e in enumerate(codomain_orders) if e % p == 0]
        if rank_mod_p(rows, p) < len(rows):
            return False
    return True


def elements_of_order_dividing(o: int, codomain_orders: Sequence[int]) -> list[tuple[int, ...]]:
    ranges = [range(0, e, e // math.gcd(o, e)) if o else range(e) for e in codomain_orders]
    return list(itertools.product(*ranges))


def count_hom_matrices(domain_orders: Sequence[int], codomain_orders: Sequence[int]) -> int:
    return math.prod(math.gcd(o, e) if o else e for o in domain_orders for e in codomain_orders)


def count_homomorphisms(G: FiniteAbelianGroup, H: FiniteAbelianGroup) -> int:
    """Closed form ``prod gcd(d_i, e_j)``."""
    return count_hom_matrices(G.invariant_factors, H.invariant_factors)


def enumerate_hom_matrices(domain_orders: Sequence[int], codomain_orders: Sequence[int],
                           surjective_only: bool = False,
                           cap: int = DEFAULT_HOM_CAP) -> Iterator[Homomorphism]:
    """Every homomorphism ``+Z_{o_j} -> +Z_{e_r}``, each once, in a fixed order."""
    domain_orders = tuple(domain_orders)
    codomain_orders = tuple(codomain_orders)
    if any(e <= 0 for e in codomain_orders):
        raise ValueError("codomain must be finite")
    size = count_hom_matrices(domain_orders, codomain_orders)
    if size > cap:
        raise SearchSpaceTooLarge("Hom", size, cap)
    images = [elements_of_order_dividing(o, codomain_orders) for o in domain_orders]
    for cols in itertools.product(*images):
        matrix = tuple(tuple(c[r] for c in cols) for r in range(len(codomain_orders)))
        if surjective_only and not _spans(matrix, codomain_orders):
            continue
        yield Homomorphism(domain_orders, codomain_orders, matrix)


def enumerate_homomorphisms(G: FiniteAbelianGroup, H: FiniteAbelianGroup,
                            surjective_only: bool = False,
                            cap: int = DEFAULT_HOM_CAP) -> Iterator[Homomorphism]:
    return enumerate_hom_matrices(G.invariant_factors, H.invariant_factors, surjective_only, cap)


# ---------------------------------------------------------------------------
# enumerating isomorphism types


def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in descending order of parts."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def groups_of_order(n: int) -> Iterator[FiniteAbelianGroup]:
    """All abelian groups of order ``n`` up to isomorphism."""
    fac = sorted(factorint(n).items()) if n > 1 else []
    choices = [[(p, lam) for lam in partitions(e)] for p, e in fac]
    for combo in itertools.product(*choices):
        yield FiniteAbelianGroup.from_partitions(dict(combo))


def quotient_types(G: FiniteAbelianGroup, max_order: int | None = None) -> Iterator[FiniteAbelianGroup]:
    """Isomorphism types of quotients of ``G`` (optionally of bounded order)."""
    primes = G.primes()
    per_prime = []
    for p in primes:
        lam = G.partition(p)
        opts = []
        for total in range(sum(lam) + 1):
            for mu in partitions(total, lam[0] if lam else 0, len(lam)):
                if all(a <= b for a, b in zip(mu, lam)):
                    opts.append((p, mu))
        per_prime.append(opts)
    for combo in itertools.product(*per_prime):
        Q = FiniteAbelianGroup.from_partitions(dict(combo))
        if max_order is None or Q.order <= max_order:
            yield Q
