"""Characters of ``#_n L(9,4)`` with large Casson-Gordon signature.

Given a surjection ``s: Z_9^n -> Z_9^m`` we change basis in the target and
permute the source so that ``s`` becomes ``[I_m | A]``, then pick ``j`` as
either ``(2, .., 2)`` or ``(6, .., 6)``.  The resulting character ``j o s``
always has signature at least ``10m/9``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..abelian import rank_mod_p
from ..casson_gordon import Character, LensSpace, LensSpaceSum, cg_lens_sigma, cg_sigma

MOD = 9
J = LensSpace(9, 4)
_MINUS_NINTH = Fraction(-1, 9)


@dataclass(frozen=True)
class SurjectionMatrix:
    """``m x n`` matrix over ``Z_9``; column ``k`` is the image of the ``k``-th summand."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) % MOD for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("rows must have equal length")
        if rank_mod_p(rows, 3) != len(rows):
            raise ValueError("matrix is not surjective onto Z_9^m (rank mod 3 is too small)")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class CharacterChoice:
    j: tuple[int, ...]
    j_original: tuple[int, ...]
    sigma_achieved: Fraction
    H_vector: tuple[Fraction, ...]


def permutation_matrix(perm: Sequence[int]) -> list[list[int]]:
    """``P`` with ``(M P)[:, k] = M[:, perm[k]]``."""
    n = len(perm)
    return [[1 if perm[k] == i else 0 for k in range(n)] for i in range(n)]


def lemma_a2_reduce(s: SurjectionMatrix) -> tuple[SurjectionMatrix, list[list[int]], list[int]]:
    """``(U s P, U, perm)`` with ``U s P = [I_m | A]`` over ``Z_9``.

    ``perm[k]`` is the original column now in position ``k``.
    """
    m, n = s.m, s.n
    A = s.as_lists()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    perm = list(range(n))
    for r in range(m):
        # columns before r are already cleared in this row, so a unit must lie at or after r
        c = next((c for c in range(r, n) if A[r][c] % 3), None)
        if c is None:
            raise ValueError(f"row {r} has no unit entry; s is not surjective")
        if c != r:
            for row in A:
                row[r], row[c] = row[c], row[r]
            perm[r], perm[c] = perm[c], perm[r]
        inv = pow(A[r][r], -1, MOD)
        A[r] = [x * inv % MOD for x in A[r]]
        U[r] = [x * inv % MOD for x in U[r]]
        for i in range(m):
            f = A[i][r]
            if i != r and f:
                A[i] = [(x - f * y) % MOD for x, y in zip(A[i], A[r])]
                U[i] = [(x - f * y) % MOD for x, y in zip(U[i], U[r])]
    reduced = SurjectionMatrix(tuple(map(tuple, A)))
    return reduced, U, perm


def _sum_space(n: int) -> LensSpaceSum:
    return LensSpaceSum((J,) * n)


def character_sigma(s: SurjectionMatrix, j: Sequence[int]) -> Fraction:
    """``sigma(#_n L(9,4), j o s)``."""
    values = [sum(jr * s.entries[r][k] for r, jr in enumerate(j)) % MOD for k in range(s.n)]
    return cg_sigma(_sum_space(s.n), Character(MOD, tuple(values)))


def prop_a_character(s: SurjectionMatrix) -> CharacterChoice:
    reduced, U, _ = lemma_a2_reduce(s)
    m, n = s.m, s.n
    tail = [sum(reduced.entries[r][k] for r in range(m)) % MOD for k in range(m, n)]
    H = tuple(cg_lens_sigma(J, 2 * x % MOD) for x in tail)
    j = (2,) * m if sum(1 for h in H if h == _MINUS_NINTH) < m else (6,) * m
    j_orig = tuple(sum(j[r] * U[r][c] for r in range(m)) % MOD for c in range(m))
    sigma = character_sigma(s, j_orig)
    if sigma != character_sigma(reduced, j):
        raise AssertionError("signature changed under the change of basis")
    if sigma < Fraction(10, 9) * m:
        raise AssertionError(f"character {j} gives {sigma} < 10m/9 for m={m}")
    return CharacterChoice(j, j_orig, sigma, H)


def brute_force_max_character(s: SurjectionMatrix) -> tuple[Fraction, tuple[int, ...]]:
    """Largest ``sigma(j o s)`` over all ``9^m`` maps ``j``, straight from the table."""
    table = [cg_lens_sigma(J, a) for a in range(MOD)]
    best, arg = None, None
    for j in itertools.product(range(MOD), repeat=s.m):
        total = Fraction(0)
        for k in range(s.n):
            total += table[sum(jr * s.entries[r][k] for r, jr in enumerate(j)) % MOD]
        if best is None or total > best:
            best, arg = total, j
    return best, arg


def main_theorem_bound(N: int) -> Fraction:
    """Lower bound for theta of the ``N``-fold sum of ``2b(9/4)``.

    Write ``G_1 + G_2 = Z_9^l + Z_3^*``.  Either the counting bound gives
    ``ceil((N - l)/2)``, or the side carrying ``l' = ceil(l/2)`` copies of
    ``Z_9`` has a character with signature at least ``10 l'/9`` while
    ``xi_3`` of that side is at most ``l' + N - l``.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    # in units of 1/18; 2 ceil(x/2) is x rounded up to even
    best = min(max(9 * (N - l + (N - l) % 2),
                   max(0, 10 * ((l + 1) // 2) - 9 * ((l + 1) // 2 + N - l)))
               for l in range(N + 1))
    return Fraction(best, 18)
