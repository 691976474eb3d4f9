"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`OrthoError`, so callers (and the CLI) can catch one type.
"""


class OrthoError(Exception):
    """Base class for all validation and construction errors."""


class DegreeExceeded(OrthoError):
    pass


class NonPlanarEmbedding(OrthoError):
    pass


class DanglingRotationEntry(OrthoError):
    pass


class DisconnectedInput(OrthoError):
    pass


class NotSeriesParallel(OrthoError):
    pass


class DegreeOneVertex(OrthoError):
    pass


class Infeasible(OrthoError):
    pass


class UncanonicalFlow(OrthoError):
    pass


class InvalidRep(OrthoError):
    pass


class InconsistentConstraints(OrthoError):
    pass


class InfeasiblePair(OrthoError):
    pass


class NotATree(OrthoError):
    pass


class Lemma4Violation(OrthoError):
    """The SPQ-tree does not have the shape required for upward drawing."""


class NotHamiltonian(OrthoError):
    pass


class EmbeddingConflict(OrthoError):
    pass


class OverlappingInk(OrthoError):
    pass


class TooLarge(OrthoError):
    pass


class FileFormatError(OrthoError):
    pass
