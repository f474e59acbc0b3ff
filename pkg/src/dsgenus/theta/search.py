"""Bounded search for admissibility certificates.

Write ``A_i = G_i + Z^{2 n_i}`` and present ``A_1 + A_2`` as ``Z^m / D`` with
``D`` spanned by ``d e_i`` on the torsion coordinates.  A certificate is a
list of ``2(n_1 + n_2)`` paired relations; together with ``D`` they span a
lattice ``Lambda`` with

* ``Z^m / Lambda = G``, so ``[Z^m : Lambda] = |G|``;
* ``Lambda / D`` needs only ``2(n_1 + n_2) = rank(Lambda / D)`` generators,
  i.e. it is torsion free;
* the projection of ``Lambda`` to side 1 has cokernel ``G_2`` and the
  projection to side 2 has cokernel ``G_1``.

Conversely any such ``Lambda`` yields a certificate, so enumerating lattices
of index ``|G|`` containing ``D`` and ``exp(G) Z^m`` decides each
``(n_1, n_2)`` exactly.  Every
lattice is visited unless an entry bound is set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..abelian import (FiniteAbelianGroup, FreeExtension, SearchSpaceTooLarge, cokernel,
                       diagonal, presented_cokernel, smith_normal_form)
from ..lattices import _Budget, _unimodular_inverse, hermite_lattices, hnf_inverse_times
from .pairs import BoundInterval, theta1_lower

DEFAULT_MAX_NODES = 2_000_000


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Explicit ``n_1, n_2`` and relations ``(a^1_j, a^2_j)`` for ``(G, G_1, G_2)``."""

    G: FiniteAbelianGroup
    G1: FiniteAbelianGroup
    G2: FiniteAbelianGroup
    n1: int
    n2: int
    relations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    transcript: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def ambient(self, side: int) -> FreeExtension:
        return FreeExtension(self.G1 if side == 1 else self.G2, 2 * (self.n1 if side == 1 else self.n2))

    def verify(self) -> dict[str, str]:
        """Recompute the three cokernels; raise ``ValueError`` if any is wrong."""
        if len(self.relations) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} relations, got {len(self.relations)}")
        A1, A2 = self.ambient(1), self.ambient(2)
        side1 = cokernel([a for a, _ in self.relations], A1)
        side2 = cokernel([b for _, b in self.relations], A2)
        orders = A1.generator_orders + A2.generator_orders
        whole, free = presented_cokernel([a + b for a, b in self.relations], orders)
        out = {"side1": str(side1), "side2": str(side2),
               "total": "infinite" if free else str(whole)}
        if side1 != self.G2:
            raise ValueError(f"side 1 quotient is {side1}, expected {self.G2}")
        if side2 != self.G1:
            raise ValueError(f"side 2 quotient is {side2}, expected {self.G1}")
        if free or whole != self.G:
            raise ValueError(f"total quotient is {out['total']}, expected {self.G}")
        return out

    def to_json(self) -> dict:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "a1": [list(a) for a, _ in self.relations],
            "a2": [list(b) for _, b in self.relations],
        }


def _torsion_free_over(D: Sequence[Sequence[int]], basis) -> bool:
    if not D:
        return True
    X = hnf_inverse_times(basis, D)
    d, _, _ = smith_normal_form(X, cols=len(basis))
    return all(v in (0, 1) for v in diagonal(d))


def _certificate(G, G1, G2, n1, n2, D, basis) -> AdmissibilityCertificate:
    k = len(basis)
    m1 = G1.rank + 2 * n1
    if D:
        X = hnf_inverse_times(basis, D)
        _, _, V = smith_normal_form(X, cols=k)
        W = _unimodular_inverse(V)
        new = [[sum(W[r][s] * basis[s][c] for s in range(k)) for c in range(k)] for r in range(k)]
        gens = new[len(D):]
    else:
        gens = [list(row) for row in basis]
    orders = G1.invariant_factors + (0,) * (2 * n1) + G2.invariant_factors + (0,) * (2 * n2)
    rels = []
    for g in gens:
        v = [x % o if o else x for x, o in zip(g, orders)]
        rels.append((tuple(v[:m1]), tuple(v[m1:])))
    cert = AdmissibilityCertificate(G, G1, G2, n1, n2, tuple(rels))
    object.__setattr__(cert, "transcript", cert.verify())
    return cert


def search_split(G: FiniteAbelianGroup, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                 n1: int, n2: int, entry_bound: int | None = None,
                 budget: _Budget | None = None) -> AdmissibilityCertificate | None:
    """A certificate with exactly these ``n_1, n_2``, or None if the (bounded) search fails."""
    m1 = G1.rank + 2 * n1
    contains = list(G1.invariant_factors) + [None] * (2 * n1) \
        + list(G2.invariant_factors) + [None] * (2 * n2)
    m = len(contains)
    D = [[c if j == i else 0 for j in range(m)] for i, c in enumerate(contains) if c is not None]
    # G = Z^m / Lambda is killed by its exponent, so exponent * Z^m lies in Lambda
    e = G.exponent
    bound = [e if c is None else math.gcd(c, e) for c in contains]
    for basis in hermite_lattices(bound, index=G.order, entry_bound=entry_bound, budget=budget):
        if not _torsion_free_over(D, basis):
            continue
        whole, free = presented_cokernel(basis, [0] * m)
        if free or whole != G:
            continue
        s1, f1 = presented_cokernel([row[:m1] for row in basis], [0] * m1)
        if f1 or s1 != G2:
            continue
        s2, f2 = presented_cokernel([row[m1:] for row in basis], [0] * (m - m1))
        if f2 or s2 != G1:
            continue
        return _certificate(G, G1, G2, n1, n2, D, basis)
    return None


def theta1_search(G: FiniteAbelianGroup, G1: FiniteAbelianGroup, G2: FiniteAbelianGroup,
                  max_n: int = 2, entry_bound: int | None = None,
                  max_nodes: int = DEFAULT_MAX_NODES) -> BoundInterval:
    """Counting lower bound together with the least certified ``n_1 + n_2 <= max_n``.

    The lower end is always the counting bound.  ``exact`` is set when every
    smaller total was ruled out without truncation, in which case
    ``details["value"]`` is theta_1 of the triple.
    """
    lower = theta1_lower(G, G1, G2)
    budget = _Budget(max_nodes)
    refuted_below = True
    try:
        for n in range(max_n + 1):
            for n1 in range(n + 1):
                budget.truncated = False
                cert = search_split(G, G1, G2, n1, n - n1, entry_bound, budget)
                if cert is not None:
                    exact = refuted_below
                    details = {"nodes": budget.used, "refuted_below": refuted_below}
                    if exact:
                        details["value"] = n
                    return BoundInterval(lower, n, method="certificate", certificate=cert,
                                         exact=exact, details=details)
                if budget.truncated:
                    refuted_below = False
    except SearchSpaceTooLarge as exc:
        return BoundInterval(lower, None, method="counting",
                             details={"nodes": budget.used, "caps_hit": str(exc)})
    return BoundInterval(lower, None, method="counting",
                         details={"nodes": budget.used, "refuted_below": refuted_below})
