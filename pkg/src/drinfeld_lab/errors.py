"""Exception hierarchy.

Two families matter to callers: ``ValidationError`` (bad input, CLI exit 1)
and ``AnomalyError`` (an internal result that should never happen on valid
input, CLI exit 2).
"""


class DrinfeldLabError(Exception):
    pass


class ValidationError(DrinfeldLabError, ValueError):
    pass


class AnomalyError(DrinfeldLabError, ArithmeticError):
    pass


# algebra
class NotPrime(ValidationError):
    pass


class ReducibleModulus(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class ZeroPolynomial(ValidationError):
    pass


class DenominatorVanishes(ValidationError, ZeroDivisionError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class MixedContexts(ValidationError, TypeError):
    pass


# drinfeld modules
class ZeroLeadingCoefficient(ValidationError):
    pass


class EmptyRank(ValidationError):
    pass


class BadReduction(ValidationError):
    pass


class TorsionFieldCapExceeded(DrinfeldLabError):
    pass


class BadInput(ValidationError):
    pass


class WrongRank(ValidationError):
    pass


class ZeroGamma(ValidationError):
    pass


class RankMismatch(ValidationError):
    pass


# frobenius
class NoSolution(AnomalyError):
    pass


class AmbiguousSolution(AnomalyError):
    pass


# experiments
class CharacteristicDivision(ValidationError, ZeroDivisionError):
    """Newton recursion needs to divide by k with k = 0 in the field."""

    def __init__(self, k, p):
        super().__init__(f"cannot divide by k={k} in characteristic {p} (need p > n)")
        self.k = k
        self.p = p


class GroupCapExceeded(DrinfeldLabError):
    pass


# cli
class UnknownCommand(ValidationError):
    pass


class ConfigInvalid(ValidationError):
    pass
