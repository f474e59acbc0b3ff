"""Knot input and classical invariants.

Knots are connected sums of two-bridge knots ``2b(p/q)`` and of knots given
by a Seifert matrix.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .abelian import (FiniteAbelianGroup, FreeExtension, Matrix, cokernel_decomposition,
                      determinant)
from .casson_gordon import LensSpace, LensSpaceSum


@dataclass(frozen=True)
class SeifertMatrix:
    V: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        V = tuple(tuple(int(x) for x in row) for row in self.V)
        object.__setattr__(self, "V", V)
        n = len(V)
        if any(len(row) != n for row in V):
            raise ValueError("Seifert matrix must be square")
        if n % 2:
            raise ValueError("Seifert matrix must have even size")
        if determinant(self.skew()) != 1:
            raise ValueError("Seifert matrix must satisfy det(V - V^T) = 1")

    @property
    def size(self) -> int:
        return len(self.V)

    def skew(self) -> Matrix:
        n = len(self.V)
        return [[self.V[i][j] - self.V[j][i] for j in range(n)] for i in range(n)]

    def symmetrized(self) -> Matrix:
        n = len(self.V)
        return [[self.V[i][j] + self.V[j][i] for j in range(n)] for i in range(n)]

    def __str__(self) -> str:
        return "seifert([" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.V) + "])"


@dataclass(frozen=True)
class TwoBridgeKnot:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError(f"two-bridge knot needs odd p > 1, got p={self.p}")
        if not 0 < self.q < self.p or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"two-bridge knot needs 0 < q < p coprime to p, got q={self.q}")

    def lens_space(self) -> LensSpace:
        return LensSpace(self.p, self.q)

    def __str__(self) -> str:
        return f"2b({self.p}/{self.q})"


Summand = Union[TwoBridgeKnot, SeifertMatrix]


@dataclass(frozen=True)
class KnotSpec:
    summands: tuple[Summand, ...] = ()
    ribbon: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    def is_unknot(self) -> bool:
        return not self.summands

    def all_two_bridge(self) -> bool:
        return all(isinstance(s, TwoBridgeKnot) for s in self.summands)

    def __str__(self) -> str:
        if not self.summands:
            text = "unknot"
        else:
            parts = []
            i = 0
            while i < len(self.summands):
                s = self.summands[i]
                j = i
                while j + 1 < len(self.summands) and self.summands[j + 1] == s:
                    j += 1
                run = j - i + 1
                if isinstance(s, TwoBridgeKnot) and run > 1:
                    parts.append(f"{s}^{run}")
                    i = j + 1
                else:
                    parts.append(str(s))
                    i += 1
            text = " # ".join(parts)
        return text + (" ribbon" if self.ribbon else "")


@dataclass(frozen=True)
class KnotInvariants:
    signature: int
    determinant: int
    h1_cover: FiniteAbelianGroup
    alexander_degree: int
    alexander_polynomial: tuple[int, ...] = field(default=(1,), compare=False)

    def __post_init__(self):
        if self.signature % 2:
            raise ValueError("knot signature must be even")
        if self.determinant != self.h1_cover.order:
            raise ValueError("determinant must equal |H_1| of the branched double cover")


# ---------------------------------------------------------------------------
# two-bridge knots


def even_continued_fraction(p: int, q: int) -> list[int]:
    """Even terms ``[2b_1, ..., 2b_n]`` with ``p/q' = 2b_1 - 1/(2b_2 - 1/(...))``.

    ``q'`` is whichever of ``q`` and ``q - p`` is even, which names the same
    knot.  For odd ``p`` the length is always even.
    """
    num, den = p, (q if q % 2 == 0 else q - p)
    terms = []
    while True:
        if den < 0:
            num, den = -num, -den
        if num % den == 0:
            c = num // den
            if c % 2:
                raise AssertionError("even continued fraction expansion failed")
            terms.append(c)
            return terms
        fl = num // den
        c = fl if fl % 2 == 0 else fl + 1
        terms.append(c)
        num, den = den, c * den - num


def seifert_from_two_bridge(K: TwoBridgeKnot) -> SeifertMatrix:
    """Seifert matrix of the plumbing of twisted bands read off the even expansion."""
    terms = even_continued_fraction(K.p, K.q)
    n = len(terms)
    V = [[0] * n for _ in range(n)]
    for i, c in enumerate(terms):
        V[i][i] = c // 2
        if i + 1 < n:
            if i % 2 == 0:
                V[i][i + 1] = 1
            else:
                V[i + 1][i] = 1
    S = SeifertMatrix(tuple(map(tuple, V)))
    if abs(determinant(S.symmetrized())) != K.p:
        raise AssertionError(f"Seifert matrix for {K} has wrong determinant")
    return S


# ---------------------------------------------------------------------------
# invariants


def symmetric_signature(A: Matrix) -> int:
    """Signature of a symmetric integer matrix by exact congruence diagonalisation."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    sig = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: new diagonal 2 M_ij + M_jj = 2 M_ij
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            piv = i
        d = M[piv][piv]
        sig += 1 if d > 0 else -1
        active.remove(piv)
        for r in active:
            f = M[r][piv] / d
            if f:
                for t in range(n):
                    M[r][t] -= f * M[piv][t]
                for t in range(n):
                    M[t][r] -= f * M[t][piv]
    return sig


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Integer coefficients (low degree first) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(n):
            coeffs[t] += ys[i] * basis[t] / denom
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("non-integral Alexander polynomial coefficient")
        out.append(int(c))
    return out


def alexander_polynomial(S: SeifertMatrix) -> tuple[int, ...]:
    """Coefficients ``c_{-g'}..c_{g'}`` of the symmetric normalisation, ``Delta(1) = 1``."""
    n = S.size
    V = S.V
    xs = list(range(n + 1))
    ys = [determinant([[V[i][j] - t * V[j][i] for j in range(n)] for i in range(n)]) for t in xs]
    coeffs = _interpolate(xs, ys)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    lo = next(i for i, c in enumerate(coeffs) if c)
    coeffs = coeffs[lo:]
    if sum(coeffs) < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _summand_seifert(s: Summand) -> SeifertMatrix:
    return seifert_from_two_bridge(s) if isinstance(s, TwoBridgeKnot) else s


def h1_of_summand(s: Summand) -> FiniteAbelianGroup:
    if isinstance(s, TwoBridgeKnot):
        return FiniteAbelianGroup.from_orders([s.p])
    torsion, free = cokernel_decomposition(s.symmetrized(), FreeExtension(free_rank=s.size))
    if free:
        raise ValueError("V + V^T is singular; not a knot Seifert matrix")
    return torsion


def branched_double_cover(K: KnotSpec) -> LensSpaceSum | FiniteAbelianGroup:
    """The lens-space sum for all-two-bridge input, otherwise only ``H_1``."""
    if K.all_two_bridge():
        return LensSpaceSum(tuple(s.lens_space() for s in K.summands))
    return FiniteAbelianGroup.from_orders(
        [d for s in K.summands for d in h1_of_summand(s).invariant_factors])


def knot_invariants(K: KnotSpec) -> KnotInvariants:
    sig, det, deg = 0, 1, 0
    poly: tuple[int, ...] = (1,)
    orders: list[int] = []
    for s in K.summands:
        S = _summand_seifert(s)
        sym = S.symmetrized()
        sig += symmetric_signature(sym)
        det *= abs(determinant(sym))
        a = alexander_polynomial(S)
        deg += (len(a) - 1) // 2
        poly = _poly_mul(poly, a)
        orders.extend(h1_of_summand(s).invariant_factors)
    return KnotInvariants(sig, det, FiniteAbelianGroup.from_orders(orders), deg, poly)


@dataclass(frozen=True)
class GenusBounds:
    superslice_lower: int
    superslice_top_upper: int
    superslice_top_exact: bool
    double_slice_top_upper: int | None


def genus_bound_report(K: KnotSpec, inv: KnotInvariants | None = None) -> GenusBounds:
    """Superslice lower bound from ``H_1`` of the cover; Alexander-degree upper bounds."""
    inv = inv or knot_invariants(K)
    lower = -(-inv.h1_cover.rank // 2)
    deg = inv.alexander_degree
    return GenusBounds(
        superslice_lower=lower,
        superslice_top_upper=deg,
        superslice_top_exact=deg == 1,
        double_slice_top_upper=deg if K.ribbon else None,
    )
