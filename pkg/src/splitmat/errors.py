"""Exception hierarchy shared by all modules."""


class SplitmatError(Exception):
    pass


class DomainError(SplitmatError, ValueError):
    """Input outside the mathematical domain of an operation."""


class DimensionError(DomainError):
    pass


class NumericalError(SplitmatError, ArithmeticError):
    """A floating-point tolerance policy could not be met."""


class AccuracyError(NumericalError):
    """Quadrature could not reach the requested error bound."""


class ConsistencyError(NumericalError):
    """An identity that holds exactly came out violated beyond tolerance."""
