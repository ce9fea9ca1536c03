"""Exception types shared across the package."""


class SupernumError(Exception):
    """Base class for all package errors."""


class IncompatibleOperands(SupernumError):
    """Operands disagree on generator budget, field or shape."""


class NotInvertible(SupernumError):
    """Body is zero (or below tolerance); no inverse exists."""


class OutOfDomain(SupernumError):
    """Input violates a guarded domain (norm radius, log radius, ...)."""


class SeriesDivergence(SupernumError):
    """A matrix power series failed to converge within max_terms."""

    def __init__(self, msg, last_term_norm=None):
        super().__init__(msg)
        self.last_term_norm = last_term_norm


class NumericalFailure(SupernumError):
    """NaN or overflow encountered during integration."""


class NotASubalgebra(SupernumError):
    """A bracket of basis elements left the span of the basis."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class DependentBasis(SupernumError):
    """Proposed basis is linearly dependent over the supernumbers."""


class InvalidStructureConstants(SupernumError):
    """Structure constants violate grading, skew symmetry or Jacobi."""


class HeadroomViolation(SupernumError):
    """Differencing order would exhaust the generator budget."""


class ParseError(SupernumError):
    """Malformed textual or JSON input; carries a position when known."""

    def __init__(self, msg, pos=None):
        super().__init__(msg)
        self.pos = pos
