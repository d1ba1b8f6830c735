"""Exception types shared across the package."""


class CvsepError(Exception):
    """Base class for all errors raised by this package."""


class NotFinite(CvsepError):
    """Input contains NaN or infinite entries."""


class NotSymmetric(CvsepError):
    """Matrix asymmetry exceeds the symmetry tolerance."""


class NotPhysical(CvsepError):
    """Correlation matrix violates the uncertainty relation."""


class InvalidLlubo(CvsepError):
    """Local operation blocks are not unit-determinant 2x2 matrices."""


class ZeroCoefficient(CvsepError):
    """EPR pair coefficient a must be nonzero."""


class DegenerateMode(CvsepError):
    """A mode sits at vacuum purity; the squeeze-balance equation is vacuous."""


class NoPositiveRoot(CvsepError):
    """The squeeze-balance quadratic has no admissible positive root."""


class RootNotBracketed(CvsepError):
    """Bracketing of the balance-function root failed (numerical pathology)."""


class DegenerateForm(CvsepError):
    """Standard form II is degenerate; the optimal witness pair is undefined."""


class NotInSeparableRegime(CvsepError):
    """A positive P-representation exists only in the separable regime."""
