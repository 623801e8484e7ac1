"""Exception types shared across the package."""


class PivotGraphError(Exception):
    """Base class for all package errors."""


class MalformedGraph6(PivotGraphError):
    """Input line is not valid graph6 (bad characters, truncated body)."""


class Oversize(PivotGraphError):
    """Graph exceeds the size tier an operation supports."""


class InvalidSet(PivotGraphError):
    """Vertex set refers to vertices outside the graph."""


class NotAnEdge(PivotGraphError):
    """Pivot requested on a non-edge."""

    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg)
        self.step = step


class MissingVertex(PivotGraphError):
    """Witness step names a vertex that no longer exists."""

    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg)
        self.step = step


class InvalidPlan(PivotGraphError):
    """Subdivision/fillet plan violates its constraints."""


class BudgetExhausted(PivotGraphError):
    """Search gave up before it could prove presence or absence."""


class PreconditionViolated(PivotGraphError):
    """Structural precondition of a constructive search does not hold."""


class NoProgress(PivotGraphError):
    """A constructive search step found an empty set.

    This is never a nonexistence claim; it only names the first step of
    the construction that could not proceed.
    """

    def __init__(self, step: str):
        super().__init__(f"no progress at step: {step}")
        self.step = step
