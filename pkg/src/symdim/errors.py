"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SymDimError(ValueError):
    """Base class for all package errors."""


class InvalidPartition(SymDimError):
    pass


class NotPrime(SymDimError):
    pass


class NotRemovable(SymDimError):
    pass


class NotAddable(SymDimError):
    pass


class FirstPartTooSmall(SymDimError):
    pass


class NotRegular(SymDimError):
    pass


class EmptyPartition(SymDimError):
    pass


class NegativeM(SymDimError):
    pass


class MOutOfRange(SymDimError):
    pass


class BadParams(SymDimError):
    pass


class PreconditionFailed(SymDimError):
    pass


class MissingA(SymDimError):
    pass


class OracleOutOfRange(SymDimError):
    """Raised when a Specht-module computation would exceed the configured caps."""
