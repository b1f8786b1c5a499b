"""Exception types raised by the library."""

from __future__ import annotations


class OnePointError(Exception):
    """Base class for all library errors."""


class DimensionError(OnePointError, ValueError):
    """Vectors of incompatible length were combined."""


class RankError(OnePointError, ValueError):
    """A cone or semigroup is rank deficient or exceeds the supported rank."""


class NotPointedError(OnePointError):
    """The operation needs a pointed semigroup (strongly convex cone)."""


class NotInSemigroupError(OnePointError, ValueError):
    """A lattice point that was required to lie in S does not."""


class ClosureError(OnePointError, ValueError):
    """A homogeneous derivation would leave C[S].

    ``generator`` is the Hilbert basis element h with phi(h) != 0 and
    h + e outside S.
    """

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class InconsistentImagesError(OnePointError, ValueError):
    """Generator images admit no additive form for some degree."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class CarrierError(OnePointError, ValueError):
    """Mixing elements of C[S], C[S_inf] or C[S_i] in one operation."""


class ParseError(OnePointError, ValueError):
    """Malformed textual input; ``position`` is a 0-based offset when known."""

    def __init__(self, message, position=None, line=None, column=None):
        super().__init__(message)
        self.position = position
        self.line = line
        self.column = column
