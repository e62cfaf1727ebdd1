"""Exception types shared across the toolkit.

Argument/precondition violations raise plain ``ValueError``; the classes
below cover conditions that depend on the input data or on numerical
behaviour, so callers (and the CLI) can map them to distinct exit codes.
"""


class ToolkitError(Exception):
    """Base class for toolkit-specific failures."""


class DataError(ToolkitError):
    """Malformed input files or domain violations in loaded data."""


class ImputationError(DataError):
    """A feature cannot be imputed (e.g. every cell is missing)."""


class ResampleError(DataError):
    """Oversampling impossible for the requested class (too few samples)."""


class ConvergenceError(ToolkitError):
    """An iterative numerical routine failed to converge."""


class ConfigError(ToolkitError):
    """Invalid configuration file, key, or override value."""
