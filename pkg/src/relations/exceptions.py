class RelationError(ValueError):
    """Base class for relation construction and rendering errors."""


class CatalogError(RelationError):
    """A relation catalog file is malformed; ``source`` names the file and template."""

    def __init__(self, message, source=None):
        if source:
            message = f"{source}: {message}"
        super().__init__(message)
        self.source = source
