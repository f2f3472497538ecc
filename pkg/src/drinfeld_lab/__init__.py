"""Drinfeld modules over F_q(T): Frobenius data, twists, torsion and experiments."""

from drinfeld_lab.algebra.fields import FieldContext, make_field_context
from drinfeld_lab.algebra.places import Place, make_place, monic_irreducibles
from drinfeld_lab.algebra.poly import Poly, RationalFunction
from drinfeld_lab.drinfeld import DrinfeldModule, make_drinfeld, reduce_at, twist2
from drinfeld_lab.frobenius import FrobCharpoly, charpoly_at, frob_charpoly

__version__ = "0.1.0"

__all__ = [
    "DrinfeldModule",
    "FieldContext",
    "FrobCharpoly",
    "Place",
    "Poly",
    "RationalFunction",
    "charpoly_at",
    "frob_charpoly",
    "make_drinfeld",
    "make_field_context",
    "make_place",
    "monic_irreducibles",
    "reduce_at",
    "twist2",
]
