"""Exception hierarchy shared by all modules."""


class CoherentStateError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpectrum(CoherentStateError, ValueError):
    pass


class IndexBeyondTable(CoherentStateError, IndexError):
    pass


class IndexBeyondComputed(CoherentStateError, IndexError):
    pass


class LimitUnavailable(CoherentStateError):
    pass


class NoClosedFormMeasure(CoherentStateError):
    pass


class QuadratureNotConverged(CoherentStateError, ArithmeticError):
    pass


class OutOfDomain(CoherentStateError, ValueError):
    pass


class CapExceeded(CoherentStateError, ArithmeticError):
    """The series could not be certified within the allowed number of terms."""

    def __init__(self, message, n_terms=None, tail_estimate=None):
        super().__init__(message)
        self.n_terms = n_terms
        self.tail_estimate = tail_estimate


class SpectrumMismatch(CoherentStateError, ValueError):
    pass


class DegeneratePair(CoherentStateError, ValueError):
    pass


class BoundViolated(CoherentStateError, AssertionError):
    """Raised with the offending action value in ``.J``."""

    def __init__(self, message, J=None):
        super().__init__(message)
        self.J = J
