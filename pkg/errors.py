"""
Exceptions raised by the small-divisor AP toolkit.

Library code raises; only cli.py catches and turns errors into exit codes.
"""


class ApDivError(Exception):
    """Base class for every error raised by this toolkit."""


class InvalidInputError(ApDivError, ValueError):
    """An argument violates the operation's precondition."""


class MemoryBudgetError(ApDivError):
    """A sieve segment or base sieve exceeds the configured memory budget."""


class ClassificationError(ApDivError):
    """Two theorem families claimed the same n."""


class ConfigError(ApDivError):
    """A malformed APDIV_* environment override."""
