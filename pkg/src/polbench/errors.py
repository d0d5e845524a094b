"""Exception hierarchy shared by the library, the bench-file parser and the CLI."""


class PolbenchError(Exception):
    pass


class InvalidInputError(PolbenchError, ValueError):
    """Non-finite angle, zero sample count, malformed argument."""


class RangeError(InvalidInputError):
    """A value lies outside its allowed interval (e.g. interference weight)."""


class InvariantViolation(PolbenchError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class BenchFileError(PolbenchError):
    """Error in a bench description, always tied to a line and a token."""

    def __init__(self, message, line, token):
        self.message = message
        self.line = line
        self.token = token
        super().__init__(f"line {line}: {message} (at {token!r})")


class ParseError(BenchFileError):
    pass


class ValidationError(BenchFileError):
    pass
