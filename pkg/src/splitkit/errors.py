"""Exception hierarchy shared by every splitkit module."""


class SplitkitError(Exception):
    """Base class for all library errors."""


class UniverseTooLarge(SplitkitError):
    def __init__(self, size, limit, what="universe"):
        super().__init__(f"{what} has {size} points, exhaustive limit is {limit}")
        self.size = size
        self.limit = limit


class SearchBudgetExceeded(SplitkitError):
    """A search hit its node limit before reaching a verdict.

    Carries the statistics gathered so far so callers can report them.
    """

    def __init__(self, budget, stats=None, what="search"):
        super().__init__(f"{what} exceeded node budget {budget}")
        self.budget = budget
        self.stats = stats


# the splitting module talks about "budget exceeded" in its own terms
BudgetExceeded = SearchBudgetExceeded


class ShapeMismatch(SplitkitError):
    pass


class Infeasible(SplitkitError):
    """A search proved that no witness exists.

    ``stage`` says which step failed; ``detail`` holds whatever sub-instance
    the failing step was working on, so the verdict can be re-checked.
    """

    def __init__(self, message, stage=None, detail=None):
        super().__init__(message)
        self.stage = stage
        self.detail = detail


class BadParameters(SplitkitError, ValueError):
    pass


class NotSplitting(SplitkitError):
    pass


class ListTooSmall(SplitkitError):
    def __init__(self, position, index, vertex, forbidden):
        super().__init__(
            f"no admissible color for vertex {vertex} "
            f"(enumeration step {position}, set {index}); "
            f"{len(forbidden)} colors forbidden"
        )
        self.position = position
        self.index = index
        self.vertex = vertex
        self.forbidden = forbidden


class ParseError(SplitkitError):
    def __init__(self, message, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class RangeError(ParseError):
    pass
