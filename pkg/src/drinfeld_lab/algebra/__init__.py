from drinfeld_lab.algebra.fields import ExtensionField, FieldContext, make_field_context
from drinfeld_lab.algebra.linalg import FiniteMatrix, matrix_kernel
from drinfeld_lab.algebra.parse import parse_poly, parse_rational
from drinfeld_lab.algebra.places import (
    Place,
    irreducible_test,
    make_place,
    monic_irreducibles,
    places_up_to,
    power_residue_symbol,
    residue_field,
    residue_map,
)
from drinfeld_lab.algebra.poly import FunctionField, Poly, RationalFunction

__all__ = [
    "ExtensionField", "FieldContext", "FiniteMatrix", "FunctionField", "Place", "Poly",
    "RationalFunction", "irreducible_test", "make_field_context", "make_place",
    "matrix_kernel", "monic_irreducibles", "parse_poly", "parse_rational", "places_up_to",
    "power_residue_symbol", "residue_field", "residue_map",
]
