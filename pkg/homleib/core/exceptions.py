from typing import Any, Optional

# Exit codes of the command-line contract
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


class HomLeibError(Exception):
    """Base exception for all homleib errors."""

    exit_code = EXIT_CHECK_FAILED


class InputError(HomLeibError):
    """Raised when user-supplied input cannot be read or understood."""

    exit_code = EXIT_INPUT_ERROR


class LiteralSyntaxError(InputError):
    """Raised when a coefficient literal does not follow the literal grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownSymbolError(InputError):
    """Raised when a literal or identity refers to an undeclared name."""

    pass


class FieldError(InputError):
    """Raised for malformed field declarations or mixed-field arithmetic."""

    pass


class PresentationError(InputError):
    """Raised when a presentation, action or operator document is malformed."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class IdentitySyntaxError(InputError):
    """Raised when identity source text does not parse."""

    def __init__(self, message: str, line: int, column: int, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class SortError(InputError):
    """Raised when an identity expression is ill-sorted."""

    pass


class CatalogError(InputError):
    """Raised when the identity catalog cannot be loaded or lacks an entry."""

    pass


class ArithmeticFailure(HomLeibError):
    """Base class for exact arithmetic failures."""

    pass


class ZeroDivision(ArithmeticFailure):
    """Raised on division of a scalar by zero."""

    pass


class PoleError(ArithmeticFailure):
    """Raised when a parameter specialization hits a pole."""

    pass


class DimensionError(ArithmeticFailure):
    """Raised when vectors, maps or tensors of incompatible shapes meet."""

    pass


class SingularMatrixError(ArithmeticFailure):
    """Raised when a square matrix has no inverse; carries a kernel vector."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class PreconditionError(HomLeibError):
    """Raised when a construction or check precondition does not hold."""

    def __init__(self, precondition: str, message: str = "", report: Optional[Any] = None):
        self.precondition = precondition
        self.detail = message
        self.report = report
        super().__init__(f"precondition '{precondition}' failed" + (f": {message}" if message else ""))


class VerificationError(HomLeibError):
    """Raised when a constructed object fails its own re-verification."""

    exit_code = EXIT_INTERNAL_ERROR

    def __init__(self, construction: str, report: Optional[Any] = None):
        self.construction = construction
        self.report = report
        super().__init__(f"output of {construction} failed verification")


class GoldenMismatchError(HomLeibError):
    """Raised when a corpus golden report differs from the engine output."""

    def __init__(self, entry_id: str, diff: str):
        self.entry_id = entry_id
        self.diff = diff
        super().__init__(f"golden mismatch for corpus entry {entry_id}:\n{diff}")
