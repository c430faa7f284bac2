"""Error types shared across the package."""


class CapacityError(RuntimeError):
    """Raised when a requested simulation exceeds the configured size limits."""


class ExportError(ValueError):
    """Raised when a circuit contains an operation the QASM emitter cannot express."""
