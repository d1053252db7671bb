"""conformal_forge - exact quadratic Lie conformal algebras from Gel'fand-Dorfman data"""

from conformal_forge.conformal import ConformalAlgebra, PolyElement, lambda_bracket
from conformal_forge.families import FamilyParams, make_conformal, make_family, make_gd
from conformal_forge.gd import GDStructure, Window
from conformal_forge.reports import Report

__version__ = "0.1.0"

__all__ = [
    "ConformalAlgebra",
    "FamilyParams",
    "GDStructure",
    "PolyElement",
    "Report",
    "Window",
    "__version__",
    "lambda_bracket",
    "make_conformal",
    "make_family",
    "make_gd",
]
