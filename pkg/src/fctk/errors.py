"""Exception types shared across the package."""


class FctkError(Exception):
    """Base class for all computational failures raised by fctk."""


class DomainError(FctkError):
    """An argument lies outside the mathematical domain of the operation."""


class NonConvergence(FctkError):
    """Big-float precision escalation hit the configured cap."""


class ConvergenceFailure(FctkError):
    """An iterative root finder failed to reach its residual target."""


class QuadratureFailure(FctkError):
    """Adaptive quadrature could not certify the requested accuracy."""


class BranchAmbiguity(FctkError):
    """Analytic continuation passed too close to a branch point."""


class NotSquareFree(FctkError):
    """Polynomial shares a factor with its derivative (multiple root)."""


class IsolationFailure(FctkError):
    """Root isolation found a number of positive real roots != degree."""


class GuardExceeded(FctkError):
    """A grid request exceeds the configured size guard."""


class DecompositionFailure(FctkError):
    """A numerical matrix decomposition failed; the seed is recorded."""


class AsymmetryWarning(UserWarning):
    """Imaginary residual of a symmetric quadrature exceeded its bound."""
