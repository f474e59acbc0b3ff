"""Double slice genus bounds: candidate pairs, the theta terms and the explicit character construction."""

from .appendix import (CharacterChoice, SurjectionMatrix, brute_force_max_character,
                       lemma_a2_reduce, main_theorem_bound, prop_a_character)
from .bounds import theta_cap, theta_lower
from .characters import CoverCharacters, theta2_pair, theta3_pair
from .pairs import BoundInterval, Caps, PairCandidate, candidate_pairs, theta1_lower
from .search import AdmissibilityCertificate, theta1_search

__all__ = [
    "AdmissibilityCertificate",
    "BoundInterval",
    "Caps",
    "CharacterChoice",
    "CoverCharacters",
    "PairCandidate",
    "SurjectionMatrix",
    "brute_force_max_character",
    "candidate_pairs",
    "lemma_a2_reduce",
    "main_theorem_bound",
    "prop_a_character",
    "theta1_lower",
    "theta1_search",
    "theta2_pair",
    "theta3_pair",
    "theta_cap",
    "theta_lower",
]
