class InvariantViolation(AssertionError):
    """An identity that must hold by construction did not; always a bug."""
