"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration value or file is invalid.  Message names the field."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class BackoffExceededError(RuntimeError):
    """Mean transmit power exceeds the PAPR backoff limit (strict mode)."""


class BackoffWarning(UserWarning):
    """Mean transmit power exceeds the PAPR backoff limit (lenient mode)."""
