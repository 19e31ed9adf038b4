"""Exception taxonomy shared by all modules."""


class LctError(Exception):
    """Base class for all analyzer errors."""


class ParseError(LctError):
    """Syntax or naming error in a polynomial expression."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SmoothGermError(LctError):
    """The germ is smooth (f has a nonzero linear part), so there is no
    singularity to analyze.  Reported distinctly from the nonisolated case."""


class NonIsolatedError(LctError):
    """The singular locus is positive-dimensional (Milnor number infinite)."""


class TruncationError(LctError):
    """A truncated computation did not stabilize within its resource budget."""


class IrrationalExponentError(LctError):
    """The residue of the saturated lattice has a non-rational eigenvalue.

    Exponents of the Gauss-Manin connection of an isolated singularity are
    rational, so this signals insufficient truncation or an internal bug."""


class ConsistencyError(LctError):
    """An internal cross-check failed (for example spectrum multiplicities
    not summing to the Milnor number)."""


class NotInMDeltaError(LctError):
    """A derivation has a coefficient with nonzero constant term, so the
    divisor splits off a smooth factor and linear-part analysis does not
    apply in these coordinates."""
