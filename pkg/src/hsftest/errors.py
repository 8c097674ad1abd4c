"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidVertex(GraphError):
    """Vertex id out of range for the host graph."""


class InvalidIndex(GraphError):
    """Neighbor index outside 1..degree(v)."""


class InvalidInput(GraphError):
    """Argument outside the operation's domain."""


class EdgeListFormatError(GraphError):
    """Malformed edge-list file; carries a 1-based line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DiskTooLarge(GraphError):
    """Rooted graph exceeds the canonicalization size cap."""


class TooLarge(GraphError):
    """Brute-force oracle asked to handle an instance beyond its cap."""


class IncompatibleSizes(GraphError):
    """Edit distance requested between graphs of different orders."""


class IncompatibleVectors(GraphError):
    """Frequency vectors with mismatched (d, t) declarations."""


class EmptyProperty(GraphError):
    """Property has no members at the requested size."""


class Diverges(GraphError):
    """Zeta tail does not converge (exponent <= 1)."""


class Unbounded(GraphError):
    """No finite degree bound exists (power-law exponent <= 2)."""


class GenerationFailed(GraphError):
    """Instance generator exhausted its retry budget; carries diagnostics."""

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []
