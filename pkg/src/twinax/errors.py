"""Exception hierarchy for the workbench.

Every error raised on a documented failure path derives from WorkbenchError,
so callers (in particular the CLI) can distinguish contract violations from
bugs.
"""


class WorkbenchError(Exception):
    """Base class for all documented workbench errors."""


# -- field backend -----------------------------------------------------------

class DivisionByZero(WorkbenchError, ZeroDivisionError):
    pass


class NegativeRadicand(WorkbenchError, ValueError):
    pass


class ResourceExceeded(WorkbenchError):
    """Radical nesting depth (or a similar resource guard) was exceeded.

    Raised instead of ever falling back to approximation.
    """


class LiteralParseError(WorkbenchError, ValueError):
    """A field-element literal could not be parsed."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


# -- geometry ----------------------------------------------------------------

class DimensionMismatch(WorkbenchError, ValueError):
    pass


class ZeroDirection(WorkbenchError, ValueError):
    pass


class DegenerateSegment(WorkbenchError, ValueError):
    pass


class MalformedSurface(WorkbenchError, ValueError):
    pass


# -- transformations ---------------------------------------------------------

class FasterThanLight(WorkbenchError, ValueError):
    pass


class NotConePreserving(WorkbenchError, ValueError):
    pass


class DimensionTooLow(WorkbenchError, ValueError):
    pass


class SingularMatrix(WorkbenchError, ValueError):
    pass


# -- models ------------------------------------------------------------------

class NotAnObserver(WorkbenchError, ValueError):
    pass


class UnknownBody(WorkbenchError, ValueError):
    pass


class PresuppositionViolated(WorkbenchError):
    """Event coordinates were requested but are not unique for this model."""


class BadShape(WorkbenchError, ValueError):
    """A model builder's shape parameters fail their validation obligations."""


class UnknownReduction(WorkbenchError):
    """No exact structural reduction applies; rerun the check in sample mode."""


# -- CLI / ingestion ---------------------------------------------------------

class SpecParseError(WorkbenchError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ScenarioParseError(WorkbenchError, ValueError):
    pass


class NotATwinSituation(WorkbenchError, ValueError):
    pass


class UnknownAxiom(WorkbenchError, ValueError):
    pass


class UnknownModel(WorkbenchError, ValueError):
    pass
