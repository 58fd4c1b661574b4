"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the operation's valid domain."""


class ConfigError(ValueError):
    """A configuration value is malformed or inconsistent."""


class DimensionError(ValueError):
    """An operation was called on a field of the wrong spatial dimension."""


class DegenerateModeError(ValueError):
    """A momentum-space projector is undefined for the requested parameters."""


class ResourceCapError(RuntimeError):
    """A requested simulation exceeds the configured memory/qubit budget."""


class InsufficientDataError(ValueError):
    """A trajectory is too short for the requested spectral estimate."""
