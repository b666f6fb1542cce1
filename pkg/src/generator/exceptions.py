class GeneratorError(ValueError):
    """Base class for generator errors."""


class GeneratorConfigError(GeneratorError):
    """Invalid run configuration; ``line`` points into the config file when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GeneratorConsistencyError(GeneratorError):
    """Incremental and from-scratch R-fractions disagree."""
