"""Exact numeration in quadratic Pisot bases beta and -beta."""

from .arithmetic import add_neg, mul_neg, normalize_neg, sub_neg
from .dwords import EPWord, Expansion, format_expansion, parse_expansion
from .expander import evaluate, expand_real
from .pbase import TAU, TAU_SQUARED, PisotBase, make_base, parse_base
from .qfield import FieldElement

__version__ = "0.1.0"

__all__ = ["EPWord", "Expansion", "FieldElement", "PisotBase", "TAU", "TAU_SQUARED",
           "add_neg", "evaluate", "expand_real", "format_expansion", "make_base",
           "mul_neg", "normalize_neg", "parse_base", "parse_expansion", "sub_neg"]
