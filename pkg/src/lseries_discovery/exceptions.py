class RunError(ValueError):
    """Invalid run parameters (prime, thread count, output format)."""
