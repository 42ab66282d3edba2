"""Exception hierarchy.

Every error carries a ``witness`` naming the offending element, pair, vertex
or cochain.  ``InputError`` subclasses map to CLI exit code 2, everything
else under ``ShaGraphError`` to exit code 1.
"""


class ShaGraphError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(ShaGraphError):
    """Malformed or invariant-violating input."""


class ComputationError(ShaGraphError):
    """A well-formed input that cannot be processed as requested."""


class ParseError(InputError):
    pass


class InvariantViolation(InputError):
    pass


class NotAssociative(InvariantViolation):
    pass


class BadIdentity(InvariantViolation):
    pass


class BadInverse(InvariantViolation):
    pass


class NotHomomorphism(InvariantViolation):
    pass


class NotConnected(InvariantViolation):
    pass


class InvalidAction(InvariantViolation):
    pass


class FieldNotAbove(InvariantViolation):
    pass


class NotARefinement(InvariantViolation):
    pass


class MissingMap(InvariantViolation):
    pass


class NotFunctorial(MissingMap):
    pass


class BadCochain(InvariantViolation):
    pass


class UnknownExample(InputError):
    pass


class StateBoundExceeded(ComputationError):
    pass


class HypothesisViolated(ComputationError):
    pass


class DegenerateExtension(ComputationError):
    pass


class Mismatch(ComputationError):
    pass


InvalidHom = NotHomomorphism
