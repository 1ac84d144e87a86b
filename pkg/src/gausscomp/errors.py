class ValidationError(ValueError):
    """Bad user input: malformed integers, invalid discriminants, degenerate forms."""


class InvariantError(RuntimeError):
    """An internal consistency check failed. Always a bug."""
