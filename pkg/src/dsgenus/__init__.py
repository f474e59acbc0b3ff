"""Lower bounds for the double slice genus of knots with lens-space double covers."""

from .abelian import FiniteAbelianGroup, FreeExtension, SearchSpaceTooLarge
from .casson_gordon import Character, LensSpace, LensSpaceSum, cg_lens_sigma, cg_sigma, cg_table
from .knots import KnotSpec, SeifertMatrix, TwoBridgeKnot, knot_invariants

__version__ = "0.1.0"

__all__ = [
    "Character",
    "FiniteAbelianGroup",
    "FreeExtension",
    "KnotSpec",
    "LensSpace",
    "LensSpaceSum",
    "SearchSpaceTooLarge",
    "SeifertMatrix",
    "TwoBridgeKnot",
    "cg_lens_sigma",
    "cg_sigma",
    "cg_table",
    "knot_invariants",
]
