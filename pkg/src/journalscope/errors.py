"""Exception types shared across the pipeline.

ConfigError covers bad flags, malformed schema/config files and misuse of
an operation (wrong database on an input, threshold out of range).
DataConsistencyError covers inputs that are structurally fine but
arithmetically impossible (negative Venn region, zero world total).
The CLI maps them to exit codes 1 and 2 respectively.
"""

from __future__ import annotations


class ConfigError(Exception):
    """Usage or configuration problem; names the offending file or field."""


class DataConsistencyError(Exception):
    """Input numbers contradict each other; names the offending quantity."""
