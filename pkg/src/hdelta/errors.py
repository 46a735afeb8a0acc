class InputError(ValueError):
    """Raised when an operation's precondition on its arguments is violated."""


class ResourceGuardError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured guard."""
