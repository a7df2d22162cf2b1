"""Exception types shared across the package."""


class GenpowError(Exception):
    """Base class for package-specific errors."""


class AlgebraFileError(GenpowError):
    """The algebra document is malformed or violates a table invariant."""


class AlgebraSyntaxError(AlgebraFileError):
    """Unparseable algebra document; carries the offending position."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class TableDimensionError(AlgebraFileError):
    """An operation table does not have exactly k**arity entries."""


class ElementRangeError(AlgebraFileError):
    """A table entry lies outside the universe {0, ..., k-1}."""


class PreconditionError(GenpowError):
    """A documented precondition of an operation does not hold."""


class NotIdempotentError(PreconditionError):
    """Raised by deciders that are only applicable to idempotent algebras."""

    def __init__(self, op_name, arity, element, value):
        diag = ", ".join([str(element)] * arity)
        super().__init__(
            f"operation {op_name!r} is not idempotent: "
            f"{op_name}({diag}) = {value}, expected {element}"
        )
        self.op_name = op_name
        self.arity = arity
        self.element = element
        self.value = value


class UniverseMismatchError(PreconditionError):
    """Operands were built over different universes."""


class BudgetExceededError(GenpowError):
    """A configured enumeration or closure budget was exhausted."""
