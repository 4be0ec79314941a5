"""Shared exception types."""


class ConfigError(ValueError):
    """A configuration value violates one of the documented invariants.

    The message always names the offending field so command line users
    can fix the input without reading source code.
    """
