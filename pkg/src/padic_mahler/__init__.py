"""p-adic higher Mahler measures and p-adic zeta Mahler measures."""

from .closedform import main1_rhs, main2_rhs, main3_rhs, rv_rhs
from .extension import UnramifiedField, make_unramified, roots_of_unity
from .hoffman import Word, WordPoly, circled_harmonic, harmonic_product, main1_word
from .laurent import LaurentPoly, NonvanishingError, decompose_unit, substitute_monomials
from .measure import (
    MeasureResult,
    higher_mahler,
    radius_bound,
    shnirelman_average,
    zeta_mahler,
    zeta_mahler_jet,
)
from .padic import DomainError, PadicContext, PadicScalar, agreement, parse_literal
from .series import SJet, double_constrained_sum, hypergeometric, multipolylog

__all__ = [
    "DomainError", "LaurentPoly", "MeasureResult", "NonvanishingError", "PadicContext",
    "PadicScalar", "SJet", "UnramifiedField", "Word", "WordPoly", "agreement",
    "circled_harmonic", "decompose_unit", "double_constrained_sum", "harmonic_product",
    "higher_mahler", "hypergeometric", "main1_rhs", "main1_word", "main2_rhs", "main3_rhs",
    "make_unramified", "multipolylog", "parse_literal", "radius_bound", "roots_of_unity",
    "rv_rhs", "shnirelman_average", "substitute_monomials", "zeta_mahler", "zeta_mahler_jet",
]
