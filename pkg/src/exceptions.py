"""Error types raised by the workbench.

All of them derive from ValueError so callers can catch bad input uniformly.
"""


class WorkbenchError(ValueError):
    """Base class for every input or precondition failure"""


class ConfigurationError(WorkbenchError):
    pass


class NotASublattice(WorkbenchError):
    pass


class DegeneratePairing(WorkbenchError):
    pass


class InvalidGroup(WorkbenchError):
    pass


class InvalidLattice(WorkbenchError):
    pass


class NotASubgroup(WorkbenchError):
    pass


class NotNormal(WorkbenchError):
    pass


class NotCyclic(WorkbenchError):
    pass


class InvalidArithmeticData(WorkbenchError):
    pass


class UnknownPreset(WorkbenchError):
    pass


class BadParams(WorkbenchError):
    pass


class BudgetExceeded(WorkbenchError):
    pass


class NotInvariant(WorkbenchError):
    pass


class InvariantViolation(AssertionError):
    """An internal consistency check failed (a bug, not bad input)"""
