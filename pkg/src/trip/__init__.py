"""Exact arithmetic for the 216 TRIP maps and their S-adic languages."""
from .algebra import Perm3, TripTriple, T, all_triples, farey_matrix, farey_product
from .substitutions import CodingSeq, Substitution, expand, gauss_substitution, trip_substitution
from .language_analysis import (
    ExtensionDiagram,
    LanguageSample,
    complexity_profile,
    enumerate_bispecial,
    expand_language_sample,
    extension_diagram,
    word_complexity,
)

__version__ = "0.1.0"

__all__ = [
    "CodingSeq", "ExtensionDiagram", "LanguageSample", "Perm3", "Substitution", "T", "TripTriple",
    "all_triples", "complexity_profile", "enumerate_bispecial", "expand", "expand_language_sample",
    "extension_diagram", "farey_matrix", "farey_product", "gauss_substitution", "trip_substitution",
    "word_complexity",
]
