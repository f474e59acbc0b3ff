"""theta(K) and Theta(Y): minima over candidate pairs."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..abelian import FiniteAbelianGroup, SearchSpaceTooLarge
from ..casson_gordon import LensSpaceSum
from ..knots import KnotSpec, branched_double_cover, knot_invariants
from .characters import CoverCharacters, theta2_pair, theta3_pair
from .pairs import BoundInterval, Caps, PairCandidate, candidate_pairs, theta1_lower
from .search import theta1_search

# per-pair certificate searches in verbose reports are informational only
VERBOSE_SEARCH_NODES = 20_000


def _check_budget(chars: CoverCharacters, caps: Caps) -> None:
    for p in chars.primes():
        cost = chars.estimate(p, chars.default_max_exp(p))
        if cost > caps.max_homs:
            raise SearchSpaceTooLarge(f"character subgroups at p={p}", cost, caps.max_homs)


def _minimise(G: FiniteAbelianGroup, caps: Caps, term: Callable[[PairCandidate], Fraction],
              floor: Fraction, name: str, verbose: bool) -> BoundInterval:
    best: Fraction | None = None
    best_pair = None
    rows = []
    try:
        for cand in candidate_pairs(G, caps.max_pairs):
            t1 = Fraction(theta1_lower(G, cand.G1, cand.G2))
            row = {"G1": str(cand.G1), "G2": str(cand.G2), "theta1_lower": t1}
            # the other term is at least ``floor``, so it can only matter below the current best
            if verbose or best is None or max(t1, floor) < best:
                tc = term(cand)
                row[name] = tc
                value = max(t1, tc)
            else:
                value = None
            if verbose:
                iv = theta1_search(G, cand.G1, cand.G2, caps.max_n, caps.entry_bound,
                                   max_nodes=VERBOSE_SEARCH_NODES)
                row["theta1_upper"] = iv.upper
                row["theta1_exact"] = iv.exact
                if iv.certificate is not None:
                    row["theta1_certificate"] = iv.certificate.to_json()
            rows.append(row)
            if value is not None and (best is None or value < best):
                best, best_pair = value, row
    except SearchSpaceTooLarge as exc:
        return BoundInterval(best if best is not None else 0, None, method="enumeration",
                             complete=False,
                             details={"caps_hit": str(exc), "pairs": rows if verbose else None})
    return BoundInterval(best, None, method="enumeration", certificate=best_pair,
                         details={"pairs_examined": len(rows), "pairs": rows if verbose else None})


def theta_lower(K: KnotSpec, caps: Caps = Caps(), verbose: bool = False) -> BoundInterval:
    """``min`` over candidate pairs of ``max(theta_1 counting bound, theta_3)``.

    The candidate pairs contain every extendable pair, so a complete result
    bounds the double slice genus from below.  For input whose double cover
    is not known as a lens-space sum only ``theta_3 >= |sigma(K)|`` is used.
    """
    inv = knot_invariants(K)
    G = inv.h1_cover
    cover = branched_double_cover(K)
    floor = Fraction(abs(inv.signature))
    if isinstance(cover, LensSpaceSum):
        chars = CoverCharacters(cover, budget=caps.max_homs, threads=caps.threads)
        try:
            _check_budget(chars, caps)
        except SearchSpaceTooLarge as exc:
            return BoundInterval(0, None, method="enumeration", complete=False,
                                 details={"caps_hit": str(exc)})

        def term(c: PairCandidate) -> Fraction:
            return theta3_pair(cover, inv.signature, c.G1, c.G2, chars=chars, cap=caps.max_homs)
        scope = "lens-space cover"
    else:
        def term(c: PairCandidate) -> Fraction:
            return floor
        scope = "group level only"
    out = _minimise(G, caps, term, floor, "theta3", verbose)
    out.details["scope"] = scope
    return out


def theta_cap(Y: LensSpaceSum, caps: Caps = Caps(), verbose: bool = False) -> BoundInterval:
    """``min`` over candidate pairs of ``max(theta_1 counting bound, theta_2)``; at most the embedding number."""
    G = Y.h1()
    chars = CoverCharacters(Y, budget=caps.max_homs, threads=caps.threads)
    try:
        _check_budget(chars, caps)
    except SearchSpaceTooLarge as exc:
        return BoundInterval(0, None, method="enumeration", complete=False,
                             details={"caps_hit": str(exc)})

    def term(c: PairCandidate) -> Fraction:
        return theta2_pair(Y, c.G1, c.G2, chars=chars, cap=caps.max_homs)

    out = _minimise(G, caps, term, Fraction(0), "theta2", verbose)
    out.details["annotation"] = "lower bound for the embedding number"
    return out
