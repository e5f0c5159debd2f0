"""Exception hierarchy shared by all modules."""


class CodekitError(Exception):
    pass


class ParameterError(CodekitError, ValueError):
    """Invalid construction parameters (non-prime p, divisibility, ...)."""


class BudgetExceeded(CodekitError):
    """A field size or enumeration would exceed the configured budget."""


class NotInSubfield(CodekitError, ValueError):
    pass


class UnsupportedCase(CodekitError):
    """Parameters fall outside the cases with a closed-form answer."""


class RankDeficiency(CodekitError):
    pass


class RepairInfeasible(CodekitError):
    """The explicit locality-2 repair construction has no valid exponent."""


class ExactnessError(CodekitError, ArithmeticError):
    """An exact computation produced a non-integral value."""


class ClosureViolation(CodekitError):
    """A scalar multiple of a defining-set element fell outside the set."""
