class VerificationError(ValueError):
    """A numerical check cannot be carried out with the given inputs."""
