class SieveError(ValueError):
    """Base class for holding-basis and composition-matrix errors."""


class IncompleteBasis(SieveError):
    """A polynomial does not factor over the holding basis."""
