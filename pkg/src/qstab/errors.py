"""Exception hierarchy.

Every error raised on bad user input derives from :class:`QstabError`, so
callers (and the CLI) can catch one type.  :class:`ResourceLimit` and
:class:`InternalInconsistency` are not user errors and are kept apart.
"""


class QstabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QstabError, ValueError):
    """The caller supplied something that does not satisfy a precondition."""


class MalformedInput(InputError):
    pass


class CyclicQuiver(InputError):
    pass


class DuplicateVertex(InputError):
    pass


class DisconnectedQuiver(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NegativeEntry(InputError):
    pass


class ZeroDimVector(InputError):
    pass


class NotTame(InputError):
    """Raised when an operation needs a Euclidean quiver."""


class NotARoot(InputError):
    pass


class NotABaseRoot(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class UnknownClass(InputError):
    pass


class NotSupportedDim(InputError):
    """The dimension vector is not one whose generic representation is the module asked about."""


class NotRegularCase(InputError):
    pass


class FieldMismatch(InputError):
    pass


class GenericityNotFound(QstabError):
    def __init__(self, attempts: int):
        super().__init__(f"no certified generic representation after {attempts} draws")
        self.attempts = attempts


class ResourceLimit(QstabError):
    pass


class NonIntegralResult(QstabError, ArithmeticError):
    pass


class InternalInconsistency(QstabError, RuntimeError):
    pass
