"""Exception hierarchy shared across the package.

The three concrete classes map onto the CLI exit codes: ConfigError -> 1,
DataError -> 2, RunError -> 3.
"""


class SatdkitError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SatdkitError):
    """Invalid experiment configuration or config-style file."""


class DataError(SatdkitError):
    """Invalid or inconsistent input data (corpora, vocabularies, predictions)."""


class RunError(SatdkitError):
    """Failure while executing a training run or writing its outputs."""
