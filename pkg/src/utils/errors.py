"""Exception hierarchy shared by all packages."""


class FreeWalkError(Exception):
    """Base class for every error raised by the toolkit."""


class IndexOutOfRank(FreeWalkError):
    pass


class RankMismatch(FreeWalkError):
    pass


class NotAnAutomorphism(FreeWalkError):
    pass


class DegenerateEdge(FreeWalkError):
    """An edge image tightened to a point."""

    def __init__(self, edge: int, message: str | None = None):
        self.edge = edge
        super().__init__(message or f"edge {edge} has a degenerate image")


class Reducible(FreeWalkError):
    def __init__(self, witness, message: str | None = None):
        self.witness = witness
        super().__init__(
            message or f"matrix is reducible, invariant edges {witness}")


class NotHomotopyEquivalence(FreeWalkError):
    pass


class NotFoldable(FreeWalkError):
    pass


class DegenerateFold(NotFoldable):
    """The fold would identify two edges with common endpoints."""


class NotTrainTrack(FreeWalkError):
    pass


class PNPFound(FreeWalkError):
    def __init__(self, path, message: str | None = None):
        self.path = path
        super().__init__(message or f"periodic Nielsen path {path} found")


class IdealGraphUndefined(FreeWalkError):
    pass


class WalkTruncated(FreeWalkError):
    def __init__(self, step: int, letters: int):
        self.step = step
        self.letters = letters
        super().__init__(
            f"walk exceeded the letter budget at step {step} "
            f"({letters} letters)")


class ParseError(FreeWalkError):
    exit_code = 2


class ValidationError(FreeWalkError):
    exit_code = 3


class SeedNotFound(FreeWalkError):
    """No certified principal automorphism is available."""

    exit_code = 1
