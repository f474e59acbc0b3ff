"""Casson-Gordon terms theta_2 and theta_3 of a lens-space sum.

The minimum over surjections ``iota: H_1(Y) -> G1 + G2`` only depends on
which characters of ``H_1(Y)`` factor through each side.  Those form a
subgroup ``C_i`` of the character group isomorphic to ``G_i``, and ``iota``
is onto exactly when ``C_1`` and ``C_2`` meet trivially.  Everything also
splits over primes: a surjection is a surjection on every primary part,
characters of ``p``-power order only see the ``p``-part, and the minimum of a
maximum over independent coordinates is the maximum of the minima.

So for every prime ``p`` we enumerate subgroups of the ``p``-primary
character group once, record the extreme Casson-Gordon values over each,
and minimise over pairs with trivially intersecting socles.
``by_surjections`` evaluates the definition literally and is kept as an
independent check.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import factorint

from .. import _kernels
from ..abelian import (FiniteAbelianGroup, SearchSpaceTooLarge, elements_of_order_dividing,
                       enumerate_hom_matrices, partitions)
from ..casson_gordon import LensSpaceSum, common_denominator, scaled_table
from ..lattices import count_subgroups_of_type, hermite_lattices, subgroup_from_hnf


@dataclass(frozen=True)
class SideStats:
    """Extreme values (scaled by the common denominator) over one character subgroup."""

    lo: int
    hi: int
    socle: frozenset
    gens: tuple[tuple[int, ...], ...] = ()


_ZERO = SideStats(0, 0, frozenset())


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _stats_chunk(args):
    p, exps, moduli, factors, tables, hnfs = args
    out = []
    for basis in hnfs:
        sub = subgroup_from_hnf(p, exps, basis)
        gens = [tuple(x * f % m for x, f, m in zip(g, factors, moduli)) for g in sub.basis]
        lo, hi = _kernels.span_extrema(gens, sub.orders, moduli, tables)
        out.append((sub.partition, SideStats(lo, hi, sub.socle, sub.basis)))
    return out


class CoverCharacters:
    """Character data of ``Y = #_i L(p_i, q_i)`` for the theta computations."""

    def __init__(self, Y: LensSpaceSum, budget: int = 10**8, threads: int = 1):
        self.Y = Y
        self.G = Y.h1()
        self.scale = common_denominator(Y)
        self.tables = [scaled_table(L, self.scale) for L in Y.summands]
        self.budget = budget
        self.threads = threads
        self._catalogs: dict[int, tuple[int, dict]] = {}

    # -- per-prime data --------------------------------------------------
    def primes(self) -> list[int]:
        return self.G.primes()

    def _local(self, p: int):
        idx = [i for i, L in enumerate(self.Y.summands) if L.p % p == 0]
        exps = [_vp(self.Y.summands[i].p, p) for i in idx]
        moduli = [self.Y.summands[i].p for i in idx]
        factors = [m // p**a for m, a in zip(moduli, exps)]
        tables = [self.tables[i] for i in idx]
        return idx, exps, moduli, factors, tables

    def estimate(self, p: int, max_exp: int) -> int:
        """Work units needed for the catalog of subgroups of order <= ``p^max_exp``."""
        lam = self.G.partition(p)
        total = 0
        for size in range(max_exp + 1):
            for mu in partitions(size, lam[0] if lam else 0, len(lam)):
                total += count_subgroups_of_type(lam, mu, p) * (p**size + len(lam) ** 3)
        return total

    def catalog(self, p: int, max_exp: int) -> dict[tuple[int, ...], list[SideStats]]:
        """Subgroups of the ``p``-primary character group of order <= ``p^max_exp``, by type."""
        have = self._catalogs.get(p)
        if have is not None and have[0] >= max_exp:
            return have[1]
        cost = self.estimate(p, max_exp)
        if cost > self.budget:
            raise SearchSpaceTooLarge(f"character subgroups at p={p}", cost, self.budget)
        _, exps, moduli, factors, tables = self._local(p)
        total = math.prod(p**a for a in exps)
        min_index = -(-total // p**max_exp)
        hnfs = list(hermite_lattices([p**a for a in exps], min_index=min_index))
        cat: dict[tuple[int, ...], list[SideStats]] = {}
        chunks = [hnfs[i:i + 256] for i in range(0, len(hnfs), 256)]
        jobs = [(p, exps, moduli, factors, tables, c) for c in chunks]
        if self.threads > 1 and len(chunks) > 1:
            with ProcessPoolExecutor(self.threads) as ex:
                results = list(ex.map(_stats_chunk, jobs))
        else:
            results = [_stats_chunk(j) for j in jobs]
        for res in results:
            for part, st in res:
                cat.setdefault(part, []).append(st)
        self._catalogs[p] = (max_exp, cat)
        return cat

    def side_options(self, p: int, Gi: FiniteAbelianGroup, max_exp: int) -> list[SideStats]:
        mu = Gi.partition(p)
        if not mu:
            return [_ZERO]
        return self.catalog(p, max(max_exp, sum(mu))).get(mu, [])

    # -- the two terms ---------------------------------------------------
    def theta3_at(self, p: int, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                  sigma_k: Fraction, max_exp: int | None = None) -> Fraction:
        """``min (1/2)(g_1 + g_2)`` over character subgroup pairs at the prime ``p``."""
        max_exp = max_exp if max_exp is not None else 0
        sk = sigma_k * self.scale
        if sk.denominator != 1:
            raise ValueError("knot signature must be an integer")
        sk = sk.numerator

        def g(st: SideStats, xi: int) -> int:
            return max(0, max(abs(st.hi + sk), abs(st.lo + sk)) - xi * self.scale)

        xi1, xi2 = len(G1.partition(p)), len(G2.partition(p))
        side1 = sorted(((g(s, xi1), s) for s in self.side_options(p, G1, max_exp)),
                       key=lambda t: t[0])
        side2 = sorted(((g(s, xi2), s) for s in self.side_options(p, G2, max_exp)),
                       key=lambda t: t[0])
        best = None
        for g1, s1 in side1:
            if not side2 or (best is not None and g1 + side2[0][0] >= best):
                break
            for g2, s2 in side2:
                if best is not None and g1 + g2 >= best:
                    break
                if s1.socle.isdisjoint(s2.socle):
                    best = g1 + g2
                    break
        if best is None:
            raise ValueError(f"no surjection onto {G1} + {G2} at p={p}")
        return Fraction(best, 2 * self.scale)

    def theta2_at(self, p: int, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                  max_exp: int | None = None) -> Fraction:
        max_exp = max_exp if max_exp is not None else 0
        xi = (len(G1.partition(p)) + len(G2.partition(p))) * self.scale

        def h(st: SideStats) -> int:
            return max(st.hi, -st.lo)

        side1 = sorted(self.side_options(p, G1, max_exp), key=h)
        side2 = sorted(self.side_options(p, G2, max_exp), key=h)
        best = None
        for s1 in side1:
            if best is not None and h(s1) - xi >= best:
                break
            for s2 in side2:
                if best is not None and h(s2) - xi >= best:
                    break
                if s1.socle.isdisjoint(s2.socle):
                    f = max(s1.hi - s2.lo, s2.hi - s1.lo) - xi
                    if best is None or f < best:
                        best = f
        if best is None:
            raise ValueError(f"no surjection onto {G1} + {G2} at p={p}")
        return Fraction(best, 2 * self.scale)

    def default_max_exp(self, p: int) -> int:
        return sum(self.G.partition(p)) // 2


def _check_pair(G: FiniteAbelianGroup, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup) -> None:
    if not G1.direct_sum(G2).is_quotient_of(G):
        raise ValueError(f"{G1} + {G2} is not a quotient of {G}; no surjection exists")


def theta2_pair(Y: LensSpaceSum, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                chars: CoverCharacters | None = None, method: str = "subgroups",
                cap: int = 10**8) -> Fraction:
    """``(1/2) min_iota max_{phi_1, phi_2, p} (|sigma_1 - sigma_2| - xi_p(G1 + G2))``, floored at 0."""
    G = Y.h1()
    _check_pair(G, G1, G2)
    if method == "surjections":
        return by_surjections(Y, G1, G2, "theta2", cap=cap)
    chars = chars or CoverCharacters(Y, budget=cap)
    best = Fraction(0)
    for p in chars.primes():
        best = max(best, chars.theta2_at(p, G1, G2, chars.default_max_exp(p)))
    return best


def theta3_pair(Y: LensSpaceSum, sigma_k: int, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                chars: CoverCharacters | None = None, method: str = "subgroups",
                relative_sign: int | None = None, cap: int = 10**8) -> Fraction:
    """``(1/2) min_iota max (max(0,|sigma_1+sigma(K)|-xi_p(G1)) + max(0,|sigma_2+sigma(K)|-xi_p(G2)))``.

    ``relative_sign`` fixes the sign relating ``sigma(K)`` to the orientation
    of ``Y``; ``None`` takes the smaller value over both signs.
    """
    G = Y.h1()
    _check_pair(G, G1, G2)
    signs = [relative_sign] if relative_sign else ([1, -1] if sigma_k else [1])
    values = []
    for eps in signs:
        sk = Fraction(eps * sigma_k)
        if method == "surjections":
            values.append(by_surjections(Y, G1, G2, "theta3", sigma_k=sk, cap=cap))
            continue
        chars = chars or CoverCharacters(Y, budget=cap)
        best = Fraction(abs(sigma_k))
        for p in chars.primes():
            best = max(best, chars.theta3_at(p, G1, G2, sk, chars.default_max_exp(p)))
        values.append(best)
    return min(values)


def by_surjections(Y: LensSpaceSum, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                   which: str, sigma_k: Fraction = Fraction(0), cap: int = 10**8) -> Fraction:
    """Literal evaluation: enumerate every surjection and every prime-power character."""
    G = Y.h1()
    scale = common_denominator(Y)
    tables = [scaled_table(L, scale) for L in Y.summands]
    orders = Y.orders
    cod = G1.invariant_factors + G2.invariant_factors
    r1 = len(G1.invariant_factors)
    primes = sorted(factorint(G.order)) if G.order > 1 else []
    sk = sigma_k * scale
    floor = Fraction(abs(sigma_k)) if which == "theta3" else Fraction(0)

    def char_values(iota, rows: Sequence[int], p: int) -> list[int]:
        N = p ** _vp(G.exponent, p)
        js = elements_of_order_dividing(N, [cod[r] for r in rows]) if rows else [()]
        vals = []
        for j in js:
            # j sends generator r of the side to j_r / cod[r] in Q/Z
            total = 0
            for t, pt in enumerate(orders):
                phi_n = sum(_to_zn(jr, cod[r], N) * iota.matrix[r][t] for jr, r in zip(j, rows)) % N
                if (phi_n * pt) % N:
                    raise AssertionError("character not defined on H_1(Y)")
                c = (phi_n * pt // N) % pt
                total += tables[t][c]
            vals.append(total)
        return vals

    best = None
    for iota in enumerate_hom_matrices(orders, cod, surjective_only=True, cap=cap):
        value = floor
        for p in primes:
            v1 = char_values(iota, list(range(r1)), p)
            v2 = char_values(iota, list(range(r1, len(cod))), p)
            if which == "theta2":
                xi = sum(1 for d in cod if d % p == 0)
                f = max(max(v1) - min(v2), max(v2) - min(v1)) - xi * scale
            else:
                xi1 = sum(1 for d in cod[:r1] if d % p == 0)
                xi2 = sum(1 for d in cod[r1:] if d % p == 0)
                f = (max(0, max(abs(v + sk) for v in v1) - xi1 * scale)
                     + max(0, max(abs(v + sk) for v in v2) - xi2 * scale))
            value = max(value, Fraction(f) / (2 * scale))
        if best is None or value < best:
            best = value
    if best is None:
        raise ValueError(f"no surjection onto {G1} + {G2}")
    return best


def _to_zn(j: int, order: int, N: int) -> int:
    """The element ``j`` of ``Z_order`` (of order dividing ``N``) viewed inside ``Z_N``."""
    # j / order in Q/Z equals (j * N / order) / N
    val = j * N
    if val % order:
        raise AssertionError("character value has order not dividing N")
    return (val // order) % N
