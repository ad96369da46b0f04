"""Exception hierarchy shared by every module."""


class ENLError(Exception):
    """Base class for all errors raised by the package."""


class ShapeMismatch(ENLError):
    pass


class SingularMatrix(ENLError):
    pass


class InvalidAlgebra(ENLError):
    pass


class InvalidCobracket(ENLError):
    pass


class NotNijenhuis(ENLError):
    pass


class NotEquivariant(ENLError):
    pass


class NotRotaBaxter(ENLError):
    pass


class MissingT(ENLError):
    pass


class MissingOperator(ENLError):
    pass


class NotMatchedPair(ENLError):
    pass


class NotComplementary(ENLError):
    pass


class NotBialgebra(ENLError):
    pass


class NotENLBialgebra(ENLError):
    pass


class SymmetricPartNotInvariant(ENLError):
    pass


class PrereqFailed(ENLError):
    """A precondition check failed; ``verdict`` holds the failing check."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ParseError(ENLError):
    pass


class ValidationError(ENLError):
    pass


class DimensionCap(ValidationError):
    pass


class UnknownTask(ENLError):
    pass
