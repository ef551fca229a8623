"""Exception hierarchy for equidist.

Every error raised on purpose by the library derives from EquidistError so
the CLI and the HTTP routers can map them to exit codes and status codes in
one place.
"""


class EquidistError(Exception):
    """Base class for all library errors."""


class ParseError(EquidistError, ValueError):
    """Text could not be parsed as a number, expression or config entry."""


class DomainError(EquidistError, ValueError):
    """A function was evaluated outside the interval where it is defined."""


class InvalidSpec(EquidistError, ValueError):
    """A sequence specification violates its invariants (beta <= 1, alpha = 0, ...)."""


class ArgumentError(EquidistError, ValueError):
    """An analysis argument is outside its admissible range."""


class EmptyResult(EquidistError, ValueError):
    """An operation would produce an empty sequence."""


class CapacityExceeded(EquidistError, ValueError):
    """A requested size exceeds the configured memory bound."""


class UnknownExperiment(EquidistError, KeyError):
    """No experiment is registered under the requested name."""


class MixedFieldError(EquidistError, ArithmeticError):
    """Exact arithmetic attempted across two different quadratic fields."""


class AmbiguousBoundary(EquidistError):
    """A ball straddles an integer, so its floor cannot be decided.

    Callers are expected to refine the upstream precision and retry.
    """


class PrecisionExhausted(EquidistError):
    """The working precision cap was reached without a certified result."""

    def __init__(self, message: str, bits: int | None = None):
        super().__init__(message)
        self.bits = bits
