"""Exception types raised across the package."""


class AcyclicChiError(Exception):
    """Base class for package errors."""


class CapExceeded(AcyclicChiError):
    """An enumeration or search went past its configured cap.

    ``partial`` carries whatever was counted before stopping.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExhausted(CapExceeded):
    """A node-expansion budget ran out before the search was decided."""


class DomainError(AcyclicChiError, ValueError):
    """Argument outside the domain where a formula is defined."""


class InsufficientData(AcyclicChiError, ValueError):
    pass


class OddCUnsupported(AcyclicChiError, ValueError):
    pass


class SolverTimeout(AcyclicChiError):
    """Exact solver hit its time limit; ``upper`` is the best palette size found."""

    def __init__(self, message, upper=None, colouring=None):
        super().__init__(message)
        self.upper = upper
        self.colouring = colouring


class ResampleBudgetExhausted(AcyclicChiError):
    """Moser-Tardos resampling did not converge within ``max_resamples``.

    ``colouring`` is the final state and ``violated`` the bad events still
    present in it, each a tuple of vertices.
    """

    def __init__(self, message, colouring=None, violated=()):
        super().__init__(message)
        self.colouring = colouring
        self.violated = list(violated)
