"""Exception hierarchy shared by the library and the CLI."""


class EquilibError(Exception):
    """Base class for all library errors."""


class DegenerateInput(EquilibError):
    """Points are affinely dependent (collinear or coplanar)."""


class NotConvex(EquilibError):
    """Polyhedron failed validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ReferenceOutside(EquilibError):
    """Reference point is not strictly interior."""


class DegenerateEquilibria(EquilibError):
    """At least one site carries a degenerate equilibrium."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotMidscribed(EquilibError):
    def __init__(self, message, worst):
        super().__init__(message)
        self.worst = worst


class ClassNotAchieved(EquilibError):
    def __init__(self, message, achieved=None, diagnostics=None):
        super().__init__(message)
        self.achieved = achieved
        self.diagnostics = diagnostics


class BadSite(EquilibError):
    pass


class ConditionViolated(EquilibError):
    def __init__(self, message, condition):
        super().__init__(message)
        self.condition = condition


class UnknownCatalogEntry(EquilibError):
    pass


class NotMonostatic(ClassNotAchieved):
    pass


class ParamsOutOfWindow(EquilibError):
    pass


class NoConvergence(EquilibError):
    pass


class BudgetExhausted(EquilibError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class CounterexampleFound(EquilibError):
    def __init__(self, message, polyhedron=None):
        super().__init__(message)
        self.polyhedron = polyhedron


class Unsupported(EquilibError):
    pass


class ParseError(EquilibError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}" + (f", column {column}" if column else "") + ")" if line else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ReplayMismatch(EquilibError):
    """A replayed recipe did not reproduce the recorded result."""
