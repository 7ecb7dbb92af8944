"""Exception hierarchy shared by every module of the package."""


class Stokes2Error(Exception):
    """Base class for all errors raised by stokes2."""


class InvalidParameter(Stokes2Error, ValueError):
    pass


class OnRealAxis(Stokes2Error, ValueError):
    """A Cauchy integral over the real line was requested on its contour."""


class OnCut(Stokes2Error, ValueError):
    """A point lies on the positive half-line cut of V(z) or X(z)."""


class ZeroArgument(Stokes2Error, ValueError):
    pass


class NonPositiveArgument(Stokes2Error, ValueError):
    pass


class NonNegativeArgument(Stokes2Error, ValueError):
    pass


class ZeroDenominator(Stokes2Error, ArithmeticError):
    pass


class QuadratureDivergence(Stokes2Error, ArithmeticError):
    """Adaptive panel refinement could not reach the requested tolerance."""


class NonFiniteResult(Stokes2Error, ArithmeticError):
    pass


class CriticalFrequency(Stokes2Error, ValueError):
    """omega1 lies inside the guard band where the problem index is undefined."""


class BranchTrackingFailure(Stokes2Error, ArithmeticError):
    pass


class MaximizationFailure(Stokes2Error, ArithmeticError):
    pass


class WrongIndex(Stokes2Error, ValueError):
    pass


class RootPolishFailure(Stokes2Error, ArithmeticError):
    pass


class SpecularLimit(Stokes2Error, ValueError):
    """Accommodation coefficient too small: pure specular reflection is unsupported."""


class DomainOfValidity(Stokes2Error, ValueError):
    """An asymptotic series was requested outside the range where it is used."""


class DomainOfValidityWarning(UserWarning):
    pass


class NoConvergence(Stokes2Error, ArithmeticError):
    pass


class TruncationTooShort(Stokes2Error, ValueError):
    """The kinetic solution has not decayed at the far edge of the slab."""
