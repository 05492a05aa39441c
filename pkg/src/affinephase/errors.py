"""Shared exception types.

ValueError subclasses signal invalid inputs (CLI exit code 2);
InconsistentDataError signals a numerical failure on structurally valid
inputs, e.g. measurements that no signal can explain (CLI exit code 3).
"""


class InadmissibleGeneratorError(ValueError):
    """The generating vector fails an admissibility condition."""


class InconsistentDataError(RuntimeError):
    """Numerically inconsistent data: tolerance exceeded during recovery."""
