"""Exact factor frequencies of fixed points of uniform marked primitive morphisms,
with closed forms for the generalized Thue-Morse words."""

from .closed_form import context as closed_form_context, frequency_set
from .frid import FridContext, decomposition, gtm_context
from .language import LanguageIndex, SpecialClass, build_index, classify
from .morphism import MorphismProfile, profile
from .words import Morphism, apply, fixed_point_prefix, format_word, gtm_morphism, parse_word

__version__ = "0.1.0"

__all__ = [
    "FridContext", "LanguageIndex", "Morphism", "MorphismProfile", "SpecialClass",
    "apply", "build_index", "classify", "closed_form_context", "decomposition",
    "fixed_point_prefix", "format_word", "frequency_set", "gtm_context", "gtm_morphism",
    "parse_word", "profile",
]
