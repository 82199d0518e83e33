"""
Error hierarchy and exit-code classification for the addressing-machine toolchain.

Errors fall into two families:
- InputError: malformed programs, invalid machines, unknown names. Re-running
  with the same input never succeeds, so the CLI reports them and exits 3.
- InternalError: an invariant of the toolchain itself was broken.

Verdict-shaped results (equiv / distinct / unknown) are not errors; they are
classified into exit codes by ``exit_code_for`` alongside the exceptions.
"""

from typing import Optional


class AddrVMError(Exception):
    """Base class for all toolchain errors."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class InputError(AddrVMError):
    """User input that will never be accepted as given."""
    pass


class InternalError(AddrVMError):
    """An internal invariant was violated."""
    pass


class ProgramSyntaxError(InputError):
    """
    Program text does not match the Load* App* Call? grammar.

    Attributes:
        detail: What is wrong, without location
        position: Source column, when parsed from text
        index: Offending instruction index, when known
    """

    def __init__(
        self,
        detail: str,
        position: Optional[int] = None,
        index: Optional[int] = None,
    ):
        self.detail = detail
        self.position = position
        self.index = index
        message = detail
        if index is not None:
            message = f"instruction {index}: {message}"
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class ValidityError(InputError):
    """
    A program reads a register it may not read.

    Attributes:
        index: Position of the offending instruction in the program
        register: The register index that was read
        reason: "uninitialized" or "nonexistent"
    """

    def __init__(self, index: int, register: int, reason: str):
        self.index = index
        self.register = register
        self.reason = reason
        super().__init__(f"instruction {index}: register {register} {reason}")


class DanglingAddress(InputError):
    """An address that the table never issued."""

    def __init__(self, address: object):
        self.address = address
        super().__init__(f"address {address} was never issued")


class TermSyntaxError(InputError):
    """Malformed lambda-term text."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class UnboundVariable(InputError):
    """A variable or name with no binding in scope."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable: {name}")


class SessionError(InputError):
    """Malformed or inconsistent session file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# CLI exit codes
EXIT_OK = 0
EXIT_DISTINCT = 1
EXIT_UNKNOWN = 2
EXIT_INPUT_ERROR = 3


def exit_code_for(exc: BaseException) -> int:
    """
    Classify an exception into a CLI exit code.

    Args:
        exc: The exception raised while running a command

    Returns:
        int: EXIT_INPUT_ERROR for input errors, EXIT_UNKNOWN otherwise
    """
    if isinstance(exc, InputError):
        return EXIT_INPUT_ERROR
    # Anything else means the command could not reach a verdict
    return EXIT_UNKNOWN
