"""Exception hierarchy shared across the package."""


class HyperkubeError(Exception):
    """Base class for all package errors."""


class ValidationError(HyperkubeError):
    """A diagram violates one of its defining conditions.

    ``condition`` is a short machine-readable tag naming the first violated
    condition, e.g. ``"DuplicateInRow"``.
    """

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


# grid
class DuplicateInRow(ValidationError):
    def __init__(self, message=""):
        super().__init__("DuplicateInRow", message)


class DuplicateInColumn(ValidationError):
    def __init__(self, message=""):
        super().__init__("DuplicateInColumn", message)


class SharedCell(ValidationError):
    def __init__(self, message=""):
        super().__init__("SharedCell", message)


# cube
class FlatCountViolation(ValidationError):
    def __init__(self, message=""):
        super().__init__("FlatCountViolation", message)


class RightAngleViolation(ValidationError):
    def __init__(self, message=""):
        super().__init__("RightAngleViolation", message)


class VertexLabelViolation(ValidationError):
    def __init__(self, message=""):
        super().__init__("VertexLabelViolation", message)


class ProjectionNotGrid(ValidationError):
    def __init__(self, message=""):
        super().__init__("ProjectionNotGrid", message)


# hypercube
class CubeCountViolation(ValidationError):
    def __init__(self, message=""):
        super().__init__("CubeCountViolation", message)


class UnpairedMarking(ValidationError):
    def __init__(self, message=""):
        super().__init__("UnpairedMarking", message)


class CrossingViolation(ValidationError):
    def __init__(self, plane, pair=None, message=""):
        self.plane = plane
        self.pair = pair
        super().__init__("CrossingViolation", f"plane {plane}: {message}")


class OpenChain(HyperkubeError):
    pass


class MalformedSchematic(HyperkubeError):
    pass


# moves
class InvalidRow(HyperkubeError):
    pass


class IllegalCommutation(HyperkubeError):
    def __init__(self, message="", condition=None):
        self.condition = condition
        super().__init__(message)


class BadIndex(HyperkubeError):
    pass


class NoUnitChain(HyperkubeError):
    pass


class NotBlockForm(HyperkubeError):
    pass


class BadComponentIndex(HyperkubeError):
    pass


# pltorus
class NonManifoldEdge(HyperkubeError):
    pass


class UnclassifiableCircle(HyperkubeError):
    pass


# floer
class SizeBound(HyperkubeError):
    pass


class InexactDivision(HyperkubeError):
    pass


# search
class BudgetExhausted(HyperkubeError):
    def __init__(self, message="", stats=None):
        self.stats = stats
        super().__init__(message)


class NoRepairWithinBudget(HyperkubeError):
    pass


# io
class ParseError(HyperkubeError):
    pass
