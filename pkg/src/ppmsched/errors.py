"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class NonCommutingError(ValueError):
    """A mutually commuting set was required but not supplied."""


class ParseError(ValueError):
    """Malformed input text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedError(ValueError):
    """Input uses a feature outside the supported subset."""


class ValidationError(ValueError):
    """Well-formed input that violates a declared constraint."""


class SizeLimitError(ValueError):
    """Instance exceeds a hard size cap meant to keep exact methods tractable."""
