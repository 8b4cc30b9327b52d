"""Exception hierarchy shared across the package."""


class GenposError(Exception):
    """Base class for all errors raised by genpos."""


class SelfLoopError(GenposError):
    """An edge joins a vertex to itself."""


class VertexOutOfRangeError(GenposError):
    """A vertex index falls outside 0..n-1."""


class DisconnectedError(GenposError):
    """The input graph is not connected."""


class NotAnEdgeError(GenposError):
    """A vertex pair is not an edge of the graph."""


class EmptySetError(GenposError):
    """A vertex set argument that must be non-empty is empty."""


class TooLargeError(GenposError):
    """The instance exceeds the size limit of an exact method."""


class InvalidCoverError(GenposError):
    """A claimed isometric cover fails validation."""


class DiameterTooSmallError(GenposError):
    """The graph diameter is below the minimum the bound requires."""


class ParameterError(GenposError):
    """A generator or operation parameter is outside its valid range."""


class FormatError(GenposError):
    """Malformed input text (edge list or graph6)."""


class TimedOutError(GenposError):
    """An exact computation did not finish within its budget."""
