"""Exception hierarchy shared across the pipeline."""


class VaminerError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(VaminerError):
    """Bad invocation: missing files, invalid flags, unusable options."""


class DataError(VaminerError):
    """Broken input data: unreadable streams, incompatible file formats."""


class UnknownCandidateError(VaminerError):
    """A label or query referenced a candidate id that does not exist."""
