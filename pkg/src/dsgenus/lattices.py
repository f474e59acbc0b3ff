"""Sublattice and subgroup enumeration.

A subgroup of ``Z^k / L0`` is the same thing as a lattice ``L0 <= L <= Z^k``,
and every lattice has a unique Hermite normal form.  Lattices are built one
basis row at a time from the bottom up, so the containment constraints can be
checked (and used to prune) as soon as a row is chosen.

Rows are upper triangular: row ``i`` is ``(0, .., 0, d_i, h_{i,i+1}, .., h_{i,k-1})``
with ``d_i > 0`` and ``0 <= h_{i,j} < d_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy import divisors

from .abelian import SearchSpaceTooLarge, diagonal, smith_normal_form

HNF = tuple[tuple[int, ...], ...]


@dataclass
class _Budget:
    cap: int | None
    used: int = 0
    truncated: bool = False

    def tick(self, what: str) -> None:
        self.used += 1
        if self.cap is not None and self.used > self.cap:
            raise SearchSpaceTooLarge(what, self.used, self.cap)


def _reduce(v: list[int], rows: dict[int, tuple[int, ...]], start: int, k: int) -> bool:
    """Subtract multiples of the fixed rows ``start..k-1``; True if ``v`` lies in their span."""
    for j in range(start, k):
        if v[j]:
            row = rows[j]
            c, r = divmod(v[j], row[j])
            if r:
                return False
            for t in range(j, k):
                v[t] -= c * row[t]
    return True


def hermite_lattices(contains: Sequence[int | None], index: int | None = None,
                     min_index: int = 1, entry_bound: int | None = None,
                     cap: int | None = None, budget: _Budget | None = None) -> Iterator[HNF]:
    """Sublattices ``L`` of ``Z^k`` in Hermite normal form.

    ``contains[i] = c`` requires ``c * e_i`` in ``L``; ``None`` leaves the
    coordinate free, in which case ``index`` must be given.  ``index`` fixes
    ``[Z^k : L]``; ``min_index`` is a lower bound on it.  ``entry_bound``
    truncates the off-diagonal entries to ``[0, entry_bound]``; whether that
    ever cut anything off is recorded on ``budget.truncated``.
    """
    k = len(contains)
    if index is None and any(c is None for c in contains):
        raise ValueError("free coordinates need a fixed index")
    budget = budget or _Budget(cap)
    rows: dict[int, tuple[int, ...]] = {}
    # largest index still reachable from rows 0..i
    reach = [1] * (k + 1)
    for i in range(k):
        reach[i + 1] = reach[i] * (contains[i] if contains[i] is not None else (index or 1))

    def row_tails(i: int, d: int, c: int | None) -> Iterator[tuple[int, ...]]:
        mult = None if c is None else c // d
        tail = [0] * k
        acc = [0] * k

        def rec(j: int):
            if j == k:
                yield tuple(tail[i + 1:])
                return
            dj = rows[j][j]
            hi = dj if entry_bound is None else min(dj, entry_bound + 1)
            if hi < dj:
                budget.truncated = True
            for h in range(hi):
                if mult is not None:
                    val = acc[j] + mult * h
                    if val % dj:
                        continue
                    coef = val // dj
                    saved = acc[:]
                    for t in range(j, k):
                        acc[t] = acc[t] + (mult * h if t == j else 0) - coef * rows[j][t]
                    tail[j] = h
                    yield from rec(j + 1)
                    acc[:] = saved
                else:
                    tail[j] = h
                    yield from rec(j + 1)

        yield from rec(i + 1)

    def build(i: int, prod: int) -> Iterator[HNF]:
        if i < 0:
            if (index is None or prod == index) and prod >= min_index:
                budget.tick("sublattices")
                yield tuple(rows[j] for j in range(k))
            return
        c = contains[i]
        if c is not None:
            opts = divisors(c)
        else:
            opts = divisors(index // prod) if index % prod == 0 else []
        for d in opts:
            new = prod * d
            if index is not None:
                if index % new:
                    continue
                if i == 0 and new != index:
                    continue
            if new * reach[i] < min_index:
                continue
            for tail in row_tails(i, d, c):
                rows[i] = (0,) * i + (d,) + tail
                yield from build(i - 1, new)
            rows.pop(i, None)

    if k == 0:
        if (index in (None, 1)) and min_index <= 1:
            budget.tick("sublattices")
            yield ()
        return
    yield from build(k - 1, 1)


def lattice_contains(basis: HNF, v: Sequence[int]) -> bool:
    k = len(basis)
    rows = {j: basis[j] for j in range(k)}
    return _reduce(list(v), rows, 0, k)


def hnf_inverse_times(basis: HNF, vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Coordinates of integer vectors (assumed in the lattice) w.r.t. the HNF basis."""
    k = len(basis)
    out = []
    for v in vectors:
        w = list(v)
        coords = [0] * k
        for j in range(k):
            if w[j]:
                c, r = divmod(w[j], basis[j][j])
                if r:
                    raise ValueError(f"{list(v)} is not in the lattice")
                coords[j] = c
                for t in range(j, k):
                    w[t] -= c * basis[j][t]
        out.append(coords)
    return out


# ---------------------------------------------------------------------------
# subgroups of a finite abelian p-group


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``+ Z_{p^a_i}`` in direct-sum form.

    ``basis[t]`` has order ``orders[t]`` and the subgroup is their internal
    direct sum.  ``socle`` holds the nonzero elements of order ``p``.
    """

    p: int
    basis: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    socle: frozenset

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def partition(self) -> tuple[int, ...]:
        out = []
        for o in self.orders:
            e = 0
            while o > 1:
                o //= self.p
                e += 1
            out.append(e)
        return tuple(sorted(out, reverse=True))


def subgroup_from_hnf(p: int, exps: Sequence[int], basis: HNF) -> Subgroup:
    k = len(exps)
    mods = [p**a for a in exps]
    L0 = [[mods[i] if j == i else 0 for j in range(k)] for i in range(k)]
    X = hnf_inverse_times(basis, L0)
    D, _, V = smith_normal_form(X, cols=k)
    # new basis of L in the L-coordinates: rows of V^{-1}; V is unimodular
    Vinv = _unimodular_inverse(V)
    gens, orders = [], []
    for t, s in enumerate(diagonal(D)):
        if s == 1:
            continue
        lcoords = Vinv[t]
        vec = tuple(sum(lcoords[r] * basis[r][c] for r in range(k)) % mods[c] for c in range(k))
        gens.append(vec)
        orders.append(s)
    socle_gens = [tuple(x * (o // p) % m for x, m in zip(g, mods)) for g, o in zip(gens, orders)]
    socle = set()
    frontier = [tuple([0] * k)]
    for g in socle_gens:
        frontier = [tuple((a + c * b) % m for a, b, m in zip(x, g, mods))
                    for x in frontier for c in range(p)]
    socle = frozenset(x for x in frontier if any(x))
    return Subgroup(p, tuple(gens), tuple(orders), socle)


def _unimodular_inverse(V: list[list[int]]) -> list[list[int]]:
    from fractions import Fraction

    n = len(V)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(V)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        f = A[c][c]
        A[c] = [x / f for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                g = A[i][c]
                A[i] = [x - g * y for x, y in zip(A[i], A[c])]
    out = [[int(x) for x in row[n:]] for row in A]
    return out


def subgroups(p: int, exps: Sequence[int], max_order: int | None = None,
              cap: int | None = None) -> Iterator[Subgroup]:
    """Every subgroup of ``+ Z_{p^a_i}``, optionally only those of order <= ``max_order``."""
    total = math.prod(p**a for a in exps)
    min_index = 1 if max_order is None else -(-total // max_order)
    for basis in hermite_lattices([p**a for a in exps], min_index=min_index, cap=cap):
        yield subgroup_from_hnf(p, exps, basis)


# ---------------------------------------------------------------------------
# counting (independent closed form)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q**(n - i) - 1
        den *= q**(i + 1) - 1
    return num // den


def conjugate(lam: Sequence[int]) -> list[int]:
    return [sum(1 for x in lam if x >= i) for i in range(1, (max(lam) if lam else 0) + 1)]


def count_subgroups_of_type(lam: Sequence[int], mu: Sequence[int], p: int) -> int:
    """Number of subgroups of type ``mu`` in the abelian ``p``-group of type ``lam`` (Birkhoff)."""
    lam = sorted(lam, reverse=True)
    mu = sorted(mu, reverse=True)
    if len(mu) > len(lam) or any(a > b for a, b in zip(mu, lam)):
        return 0
    lc, mc = conjugate(lam), conjugate(mu)
    size = len(lc)
    lc += [0, 0]
    mc += [0] * (size + 2 - len(mc))
    total = 1
    for i in range(size):
        total *= p**(mc[i + 1] * (lc[i] - mc[i]))
        total *= gaussian_binomial(lc[i] - mc[i + 1], mc[i] - mc[i + 1], p)
    return total
