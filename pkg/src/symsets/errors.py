"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`ConditionSError` is a
mathematical rejection (1), :class:`InputError` subclasses are bad input (2),
:class:`InternalVerificationError` subclasses mean a bug (3).
"""


class SymsetsError(Exception):
    pass


class InputError(SymsetsError, ValueError):
    pass


class FieldError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class SingularMatrixError(InputError):
    pass


class FormError(InputError):
    """A form fails a required predicate (singular, not symplectic, ...)."""


class ParseError(InputError):
    pass


class ConditionSError(SymsetsError):
    """The plane set fails condition S at ``witness`` (a hyperplane or line).

    ``plane`` is one plane on which the incidence equality breaks, or None
    when no single plane can be named.
    """

    def __init__(self, message, witness=None, plane=None, reason=""):
        super().__init__(message)
        self.witness = witness
        self.plane = plane
        self.reason = reason


class InternalVerificationError(SymsetsError):
    pass


class NotACollineationError(InternalVerificationError):
    pass


class ReconstructionError(InternalVerificationError):
    pass
