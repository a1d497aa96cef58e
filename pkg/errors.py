"""
Exceptions raised by the triangle-distinct search library.
The CLI maps them to exit codes; library code only raises.
"""


class TDSearchError(Exception):
    """Base class for all library errors."""


# ========== INPUT FORMATS ==========

class GraphFormatError(TDSearchError, ValueError):
    """A graph document could not be turned into a simple graph."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class AsymmetricInput(GraphFormatError):
    """An edge is listed from one endpoint only."""


class SelfLoop(GraphFormatError):
    pass


class DuplicateNeighbour(GraphFormatError):
    pass


class LabelOutOfRange(GraphFormatError):
    pass


class MalformedGraph6(GraphFormatError):
    """Bad header, wrong length or a byte outside 63..126."""


# ========== GRAPH OPERATIONS ==========

class NonIntegerResult(TDSearchError, ValueError):
    """The complement identity produced a fraction, so the inputs match no regular graph."""


class InfeasibleSwitching(TDSearchError, ValueError):
    pass


class NoFeasibleSwitching(TDSearchError, RuntimeError):
    pass


class NoSuchRegularGraph(TDSearchError, ValueError):
    pass


class InvalidConfig(TDSearchError, ValueError):
    pass


class UnknownFixture(TDSearchError, KeyError):
    def __str__(self):
        # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ''
