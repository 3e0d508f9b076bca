"""Exception hierarchy shared by all gamow_lab modules."""


class GamowLabError(Exception):
    """Base class for all library errors."""


class InvalidArgument(GamowLabError):
    """A precondition on a plain numeric/structural argument was violated."""


class IncompatibleGrids(GamowLabError):
    """Two wave functions do not share the same energy grid."""


class NeedsFullLine(GamowLabError):
    """Operation requires a uniform full-line grid."""


class UndefinedLeakage(GamowLabError):
    """Leakage fraction is undefined (zero function)."""


class ClassMismatch(GamowLabError):
    """Declared or measured Hardy class is incompatible with the request."""


class ClassRequired(GamowLabError):
    """Operation needs a declared Hardy class but got 'unknown'."""


class TooCloseToAxis(GamowLabError):
    """Extension point lies inside the near-axis exclusion zone."""


class PoleNotInLowerHalfPlane(GamowLabError):
    """Resonance pole must satisfy Im z_R < 0."""


class InsufficientGrid(GamowLabError):
    """Grid is too narrow for the requested truncation accuracy."""


class OutsideSemigroup(GamowLabError):
    """Time evolution requested for t < 0 with semigroup enforcement on."""


class DegenerateTest(GamowLabError):
    """Test function has vanishing overlap with the state under test."""


class FitFailed(GamowLabError):
    """Nonlinear fit did not converge; carries the best parameters found."""

    def __init__(self, message, params=None, report=None):
        super().__init__(message)
        self.params = params
        self.report = report


class DecompositionInconsistent(GamowLabError):
    """Pole + background failed to reproduce the direct S-matrix element."""

    def __init__(self, message, direct=None, pole_term=None, background=None,
                 defect=None):
        super().__init__(message)
        self.direct = direct
        self.pole_term = pole_term
        self.background = background
        self.defect = defect
