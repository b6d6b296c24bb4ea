"""
Exception hierarchy for the pricing library.
Every error raised on purpose by a pricing module derives from PricingError.
"""


class PricingError(Exception):
    """Base exception for pricing errors"""
    pass


class DomainError(PricingError):
    """Raised when model parameters leave the admissible set"""
    pass


class StripViolation(PricingError):
    """Raised when a complex argument lies outside a strip of analyticity"""
    pass


class BranchError(PricingError):
    """Raised when a principal-branch power would cross its branch cut"""
    pass


class PoleError(PricingError):
    """Raised when log-Gamma is evaluated at a non-positive integer"""
    pass


class NumericalError(PricingError):
    """Raised when a numerical procedure fails its own consistency check"""
    pass


class TransformOverflowError(PricingError, OverflowError):
    """Raised when a payoff transform exponent exceeds the configured cap"""
    pass


class InfeasibleError(PricingError):
    """Raised when no strictly feasible damping vector can be found"""
    pass


class BudgetExceededError(PricingError):
    """Raised when a quadrature estimate would exceed its evaluation cap"""
    pass


class ConfigError(PricingError):
    """Raised when method options are inconsistent"""
    pass


class ExperimentError(PricingError):
    """Raised by the runner; wraps a module error with experiment context"""

    def __init__(self, message: str, experiment: str | None = None):
        super().__init__(message)
        self.experiment = experiment


class NonConvergenceWarning(UserWarning):
    """Issued when an iterative method stops at its iteration cap"""
    pass
