"""Exception hierarchy shared by every module.

The CLI maps :class:`DomainError` to exit status 3 and
:class:`NumericalError` to exit status 4.
"""


class GibbsPolyError(Exception):
    pass


class DomainError(GibbsPolyError, ValueError):
    """A parameter lies outside the domain of the requested object."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class PoleError(DomainError):
    """Gamma evaluated at zero or a negative integer."""


class NotDivisibleError(GibbsPolyError, ArithmeticError):
    """Exact division by ``x - r`` left a nonzero remainder."""


class NumericalError(GibbsPolyError, ArithmeticError):
    pass


class NoRootFoundError(NumericalError):
    pass


class MultipleRootsError(NumericalError):
    pass


class PrecisionExhaustedError(NumericalError):
    pass


class IllConditionedError(NumericalError):
    pass
