"""Candidate pairs and the counting lower bound for theta_1."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from ..abelian import FiniteAbelianGroup, SearchSpaceTooLarge, quotient_types, s_q

DEFAULT_MAX_PAIRS = 10_000


@dataclass(frozen=True)
class Caps:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_homs: int = 10**8
    max_n: int = 2
    entry_bound: int | None = None
    threads: int = 1


@dataclass(frozen=True)
class PairCandidate:
    G1: FiniteAbelianGroup
    G2: FiniteAbelianGroup
    checks: dict[str, bool] = field(default_factory=dict, compare=False, hash=False)

    def key(self) -> tuple:
        return tuple(sorted((self.G1.invariant_factors, self.G2.invariant_factors)))


@dataclass
class BoundInterval:
    """Exact rational bounds; ``upper`` is None when unknown."""

    lower: Fraction
    upper: Fraction | None = None
    method: str = "counting"
    certificate: Any = None
    complete: bool = True
    exact: bool = False
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.lower = Fraction(self.lower)
        if self.upper is not None:
            self.upper = Fraction(self.upper)
            if self.complete and self.lower > self.upper:
                raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def ceiling(self) -> int:
        return math.ceil(self.lower)

    @property
    def usable(self) -> bool:
        return self.complete


def candidate_pairs(G: FiniteAbelianGroup, cap: int = DEFAULT_MAX_PAIRS) -> Iterator[PairCandidate]:
    """Pairs ``(G1, G2)`` passing the necessary conditions for extendability.

    ``|G_i|^2`` divides ``|G|`` and ``G1 + G2`` is a quotient of ``G``.  Every
    extendable pair appears, so minima over this stream bound minima over
    extendable pairs from below.
    """
    n = G.order
    sides = sorted((Q for Q in quotient_types(G) if n % (Q.order * Q.order) == 0),
                   key=lambda Q: (Q.order, Q.invariant_factors))
    count = 0
    for G1 in sides:
        for G2 in sides:
            if not G1.direct_sum(G2).is_quotient_of(G):
                continue
            count += 1
            if count > cap:
                raise SearchSpaceTooLarge("candidate pairs", count, cap)
            yield PairCandidate(G1, G2, {"order": True, "quotient": True})


def theta1_lower(G: FiniteAbelianGroup, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup) -> int:
    """Largest ``ceil((s_q(G) - s_q(G1 + G2)) / 2)`` over prime powers ``q <= exp(G)``.

    ``G`` is a quotient of ``G1 + G2 + Z^{2(n1+n2)}`` for any admissible
    extension and ``s_q`` cannot grow under quotients, so ``n1 + n2`` is at
    least this.
    """
    H = G1.direct_sum(G2)
    best = 0
    for p in G.primes():
        k = 1
        while G.exponent % p**k == 0:
            gap = s_q(G, p, k) - s_q(H, p, k)
            best = max(best, -(-gap // 2))
            k += 1
    return best
