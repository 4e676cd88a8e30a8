"""Exception hierarchy shared by all modules."""


class BBPError(Exception):
    """Base class for every domain error raised by the package."""


class ParseError(BBPError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GraphStructureError(ParseError):
    """Raised for structurally invalid graphs, whether parsed or built in code."""


class DuplicateVertex(GraphStructureError):
    pass


class DuplicateEdge(GraphStructureError):
    pass


class DanglingEdge(GraphStructureError):
    pass


class SelfLoop(GraphStructureError):
    pass


class UnknownLabel(BBPError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BlockTooLarge(BBPError):
    pass


class NotATree(BBPError):
    pass


class NotOuterplanar(BBPError):
    pass


class Disconnected(BBPError):
    pass


class TooLarge(BBPError):
    pass


class IndexOutOfRange(BBPError, IndexError):
    pass


class CorpusTooLarge(BBPError):
    pass
