"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DivisibilityError(ArithmeticError):
    """Exact division of Laurent polynomials failed.

    ``remainder`` holds the (partial) remainder left by the long division.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class PoleError(ZeroDivisionError):
    """A rational function has a pole where a finite value was requested."""


class IntegralityError(ArithmeticError):
    """A quantity predicted to be integral is not."""
