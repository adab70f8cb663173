"""Exception hierarchy shared across the toolkit."""


class CoherexError(Exception):
    """Base class for all toolkit errors."""


class ContractViolation(CoherexError, ValueError):
    """An operation was called with arguments that break its contract."""


class ConfigurationError(CoherexError):
    """Invalid or incomplete configuration (CLI exit code 2)."""


class DataError(CoherexError):
    """Bad input data: unreadable files, missing labels, etc. (CLI exit code 3)."""


class ModelFormatError(DataError):
    """A persisted model or index file is corrupt or has an unsupported version."""
