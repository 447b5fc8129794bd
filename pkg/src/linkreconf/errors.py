"""Exception hierarchy shared by all modules."""

from typing import Any


class ReconfError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(ReconfError):
    pass


# plane graphs


class AsymmetricRotation(ReconfError):
    def __init__(self, u: Any, v: Any):
        super().__init__(f"{v!r} lists {u!r} but {u!r} does not list {v!r}")
        self.u, self.v = u, v


class MultiEdgeOrLoop(ReconfError):
    pass


class NotPlanarEmbedding(ReconfError):
    pass


class TerminalNotInGraph(ReconfError):
    pass


# linkages


class SharedVertex(ReconfError):
    def __init__(self, v: Any, i: int, j: int):
        super().__init__(f"vertex {v!r} is used by paths {i} and {j}")
        self.vertex, self.i, self.j = v, i, j


class WrongEndpoints(ReconfError):
    def __init__(self, i: int):
        super().__init__(f"path {i} does not join its terminals")
        self.i = i


class NotAPath(ReconfError):
    def __init__(self, i: int, reason: str = ""):
        super().__init__(f"path {i} is not a simple path" + (f": {reason}" if reason else ""))
        self.i = i


class InvalidLinkage(ReconfError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"element {index} is not a valid linkage: {cause}")
        self.index, self.cause = index, cause


class NotAdjacent(ReconfError):
    def __init__(self, index: int):
        super().__init__(f"elements {index} and {index + 1} are not adjacent")
        self.index = index


# crossings


class DegenerateAtTerminal(ReconfError):
    pass


class SharedEndpoint(ReconfError):
    pass


class InconsistentMu(ReconfError):
    def __init__(self, matrix: dict):
        super().__init__(f"pairwise intersection numbers differ: {matrix}")
        self.matrix = matrix


class NoDualPath(ReconfError):
    pass


# separators


class NoLinkagePossible(ReconfError):
    pass


class AdjacentTerminals(ReconfError):
    pass


class CutNotK(ReconfError):
    pass


# constructive engines


class MuNonzero(ReconfError):
    pass


class NoImprovingStep(ReconfError):
    pass


class WindowTooSmall(ReconfError):
    pass


class DegreeTooSmall(ReconfError):
    pass


class AdjacentST(ReconfError):
    pass


class TooMany(ReconfError):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} linkages")
        self.limit = limit


# generators


class InvalidNcl(ReconfError):
    pass


class NotPlanarH(ReconfError):
    pass


class MalformedLinkage(ReconfError):
    pass


class TooFewColumns(ReconfError):
    pass
