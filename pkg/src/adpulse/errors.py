"""Exception types shared across the package."""


class AdpulseError(Exception):
    """Base class for all package-specific errors."""


class DegenerateDeltaError(AdpulseError):
    """Raised when an operation requires delta strictly inside (0, 1)."""


class InfeasibleError(AdpulseError):
    """Raised when an instance admits no valid schedule (ads do not fit)."""


class ClosedFormInfeasibleError(InfeasibleError):
    """Raised when sized ads fit the horizon but the closed-form construction
    would place the first two ads closer than one ad length apart."""


class BracketError(AdpulseError):
    """Raised when the root-finding bracket is inconsistent.

    For an accepted boundary count this cannot happen; seeing it means the
    caller skipped the boundary scan or passed a mismatched count.
    """
