class ValidationError(ValueError):
    """Input violates a documented precondition."""
