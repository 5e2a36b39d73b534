"""Exception and warning types shared across the package."""


class PricingError(Exception):
    """Base class for every error raised by stpricing."""


class InvalidParameter(PricingError, ValueError):
    pass


class EmptyDistribution(InvalidParameter):
    pass


class ProbabilityMassError(InvalidParameter):
    pass


class NegativePayout(InvalidParameter):
    pass


class IndexOutOfRange(PricingError, IndexError):
    pass


class NoFiniteTruncation(PricingError):
    """No finite cut-off index leaves a tail mass within epsilon.

    Raised when epsilon is zero and the distribution has infinite support,
    i.e. the buyer refuses to ignore any outcome of an unbounded game.
    """


class ConvergenceFailure(PricingError, ArithmeticError):
    pass


class DegenerateBoundsWarning(UserWarning):
    """The integration bounds do not bracket the strike; the price is zero."""
