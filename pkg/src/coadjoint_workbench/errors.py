"""Exception hierarchy for the workbench."""


class WorkbenchError(Exception):
    """Base class for every error raised by the package."""


class DenominatorDivisibleByP(WorkbenchError, ZeroDivisionError):
    pass


class UnsupportedType(WorkbenchError, ValueError):
    pass


class NonDominantWeight(WorkbenchError, ValueError):
    pass


class DimensionCeilingExceeded(WorkbenchError):
    pass


class MixedAlgebras(WorkbenchError, ValueError):
    pass


class NotClosedUnderBracket(WorkbenchError, ValueError):
    pass


class ParityViolation(WorkbenchError):
    pass


class InconsistentWithDirectIndex(WorkbenchError):
    pass


class SampleBudgetExhausted(WorkbenchError):
    pass


class MissingWeightTags(WorkbenchError, ValueError):
    pass


class BudgetExceeded(WorkbenchError):
    pass


class FingerprintMismatch(WorkbenchError):
    pass
