"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class TorusNefError(Exception):
    exit_code = 1
    code = "error"


class SchemaError(TorusNefError, ValueError):
    """Malformed or inconsistent input (bad type label, non-reduced word, ...)."""

    exit_code = 2
    code = "schema"


class GuardError(TorusNefError):
    """An enumeration was refused because it exceeds a size guard."""

    exit_code = 3
    code = "guard"


class ConsistencyError(TorusNefError, ArithmeticError):
    """Two independent computations disagreed. Always a bug, never bad input."""

    exit_code = 4
    code = "math-consistency"


class NotNefError(TorusNefError):
    """Seshadri constant requested for a bundle that is not nef."""

    exit_code = 5
    code = "non-nef-seshadri-request"
