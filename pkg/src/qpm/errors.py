"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``SchemaError`` -> 2,
``ValidationError`` -> 3, ``NumericalIntegrityError`` -> 4.
"""


class QpmError(Exception):
    """Base class for all library errors."""


class SchemaError(QpmError, ValueError):
    """Malformed input: bad shapes, non-finite entries, broken JSON layout."""


class DimensionError(SchemaError):
    """Operand shapes are incompatible."""


class ValidationError(QpmError, ValueError):
    """A domain invariant does not hold (non-Hermitian observable, bad density, ...).

    ``clause`` names the violated predicate so callers can branch on it.
    """

    def __init__(self, message: str, clause: str | None = None):
        super().__init__(message)
        self.clause = clause


class NumericalIntegrityError(QpmError, ArithmeticError):
    """A computed quantity drifted outside the tolerance its theory guarantees."""
