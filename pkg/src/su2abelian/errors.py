"""Exception hierarchy.

Two families matter to callers: :class:`ParseError` for malformed text input
and :class:`PreconditionError` for well-formed input that an operation does
not accept. The command-line front end maps them to exit codes 1 and 2.
"""


class SU2Error(Exception):
    pass


class ParseError(SU2Error, ValueError):
    """Malformed presentation or manifold description."""

    def __init__(self, message, text="", position=None):
        self.message = message
        self.text = text
        self.position = position
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} at position {position}")


class PreconditionError(SU2Error, ValueError):
    pass


class UnknownGenerator(PreconditionError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class Inadmissible(PreconditionError):
    pass


class NoWitness(PreconditionError):
    pass


class IsAbelian(PreconditionError):
    pass


class NotHyperbolic(PreconditionError):
    pass


class TraceMinusTwo(PreconditionError):
    pass


class InvalidGluing(PreconditionError):
    pass


class BadDiscriminant(PreconditionError):
    pass


class DiscriminantMismatch(PreconditionError):
    pass


class TraceMismatch(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class InvalidSplice(PreconditionError):
    pass


class InvalidTorusKnot(PreconditionError):
    pass
