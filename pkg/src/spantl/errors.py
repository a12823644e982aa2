"""Exception hierarchy shared by every module of the package."""


class SpanTLError(Exception):
    """Base class for all errors raised by spantl."""


class ParseError(SpanTLError, ValueError):
    """Malformed text in one of the package's file formats."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class TreeSyntaxError(ParseError):
    pass


class MachineSyntaxError(ParseError):
    pass


class NftaSyntaxError(ParseError):
    pass


class MachineValidationError(SpanTLError, ValueError):
    """A machine description violates the model's structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"invalid machine:\n{lines}")


class BoundViolation(SpanTLError):
    """A run exceeded one of the declared resource bounds.

    ``bound`` names the bound (``max_nodes``, ``tape_cap``, ...) and
    ``configuration`` is the offending configuration, when there is one.
    """

    def __init__(self, bound, message, configuration=None):
        self.bound = bound
        self.configuration = configuration
        if configuration is not None:
            message = f"{message} (at {configuration})"
        super().__init__(f"{bound} exceeded: {message}")


class CycleError(BoundViolation):
    """The configuration graph has a cycle, so the machine does not terminate."""

    def __init__(self, message, configuration=None):
        self.bound = "acyclicity"
        self.configuration = configuration
        if configuration is not None:
            message = f"{message} (at {configuration})"
        SpanTLError.__init__(self, f"cycle detected: {message}")


class CapExceeded(BoundViolation):
    """An internal safety cap (enumeration size, determinization states) was hit."""


class IllegalInput(SpanTLError, ValueError):
    """An input string uses a reserved or undeclared symbol."""
