"""
Exceptions raised by the vrmat library and its Salt surfaces.

Usage problems derive from :py:class:`salt.exceptions.SaltInvocationError`,
problems with the input data itself (a non-invertible :math:`\\lambda_0`, a
malformed matrix file, an exhausted explicit sequence) derive from
:py:class:`salt.exceptions.CommandExecutionError`.
"""

from salt.exceptions import CommandExecutionError
from salt.exceptions import SaltInvocationError


class VrmatInvocationError(SaltInvocationError):
    """
    A request that is malformed before any computation starts.
    """


class SeqSpecError(VrmatInvocationError):
    """
    A sequence spec that does not follow the grammar.
    """

    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class VrmatDomainError(CommandExecutionError):
    """
    Well-formed input the requested operation is not defined for.
    """


class SequenceExhaustedError(VrmatDomainError):
    """
    An explicit sequence was read past its last term.
    """


class NotInvertibleError(VrmatDomainError):
    """
    No inverse exists over the integers (or modulo the requested prime).
    """


class ShapeError(VrmatDomainError):
    """
    Ragged rows of the wrong length, or orders that do not agree.
    """


class SchemaError(VrmatDomainError):
    """
    A serialized matrix that violates the JSON schema.
    """

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class StrictBuildError(VrmatDomainError):
    """
    A strict vertically-recurrent build was requested with lambda_0 != 1.
    """


class NotPrimeError(VrmatDomainError):
    """
    A modulus that was required to be prime is not.
    """
