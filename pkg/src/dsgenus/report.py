"""Assemble the per-knot bound report as an ordered, JSON-ready dict."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .casson_gordon import format_fraction
from .knots import KnotSpec, TwoBridgeKnot, genus_bound_report, knot_invariants
from .theta import Caps, main_theorem_bound, theta_lower
from .theta.pairs import BoundInterval

FIELDS = (
    "knot",
    "h1_cover",
    "signature",
    "determinant",
    "alexander_degree",
    "superslice_lower",
    "superslice_top_upper",
    "double_slice_top_upper",
    "theta_lower",
    "theta1_intervals",
    "status",
)

CONVENTIONS = {
    "character_primes": "both characters have order a power of the same prime",
    "theta1_minimum": "joint minimum over extensions",
    "pairs": "all pairs passing the order and quotient conditions",
    "orientation": "smaller value over both signs of sigma(K) relative to the cover",
}

CLOSED_FORM_KNOT = TwoBridgeKnot(9, 4)


def _json_value(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


def closed_form_count(K: KnotSpec) -> int | None:
    """``N`` if ``K`` is the ``N``-fold sum of ``2b(9/4)``, else None."""
    if K.summands and all(s == CLOSED_FORM_KNOT for s in K.summands):
        return len(K.summands)
    return None


def _theta_entry(iv: BoundInterval) -> dict:
    cert = iv.certificate
    if iv.method == "enumeration" and cert is not None:
        # the minimising pair and its two terms
        summary = {k: v for k, v in cert.items() if k in ("G1", "G2", "theta1_lower", "theta3")}
    else:
        summary = cert
    out = {
        "value": iv.lower if iv.complete else None,
        "ceiling": iv.ceiling if iv.complete else None,
        "usable": iv.complete,
        "method": iv.method,
        "category": "smooth and topological lower bound for the double slice genus",
        "certificate": summary,
        "conventions": CONVENTIONS,
    }
    if "scope" in iv.details:
        out["scope"] = iv.details["scope"]
    if "caps_hit" in iv.details:
        out["caps_hit"] = iv.details["caps_hit"]
    return out


def compute_theta(K: KnotSpec, caps: Caps, verbose: bool = False) -> BoundInterval:
    """Enumerate when feasible; pure powers of ``2b(9/4)`` beyond the caps use the closed form."""
    iv = theta_lower(K, caps, verbose=verbose)
    N = closed_form_count(K)
    if not iv.complete and N is not None:
        value = main_theorem_bound(N)
        return BoundInterval(value, None, method="closed-form",
                             certificate={"summands": N, "knot": str(CLOSED_FORM_KNOT)},
                             details={"enumeration": iv.details.get("caps_hit")})
    return iv


def build_report(K: KnotSpec, caps: Caps = Caps(), verbose: bool = False) -> dict:
    inv = knot_invariants(K)
    gb = genus_bound_report(K, inv)
    iv = compute_theta(K, caps, verbose)
    rows = iv.details.get("pairs") if verbose else None
    report = {
        "knot": str(K),
        "h1_cover": list(inv.h1_cover.invariant_factors),
        "signature": inv.signature,
        "determinant": inv.determinant,
        "alexander_degree": inv.alexander_degree,
        "superslice_lower": gb.superslice_lower,
        "superslice_top_upper": gb.superslice_top_upper,
        "double_slice_top_upper": gb.double_slice_top_upper,
        "theta_lower": _theta_entry(iv),
        "theta1_intervals": rows,
        "status": "complete" if iv.complete else "incomplete",
    }
    if report["status"] == "complete" and gb.superslice_lower > gb.superslice_top_upper:
        # the lower bound also holds topologically, so this would be a contradiction
        raise AssertionError("superslice lower bound exceeds the topological upper bound")
    return _json_value(report)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def load_schema() -> dict:
    text = resources.files("dsgenus").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
