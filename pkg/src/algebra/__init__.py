from src.algebra.context import Context
from src.algebra.division import prem, pquo, pseudo_divide, resultant, sprem, sres, sres_support
from src.algebra.grammar import parse_polynomial
from src.algebra.normalize import mod_p, parametric_content, squarefree_primitive
from src.algebra.polynomial import Polynomial, format_polynomial

__all__ = [
    "Context",
    "Polynomial",
    "format_polynomial",
    "mod_p",
    "parametric_content",
    "parse_polynomial",
    "pquo",
    "prem",
    "pseudo_divide",
    "resultant",
    "sprem",
    "squarefree_primitive",
    "sres",
    "sres_support",
]
