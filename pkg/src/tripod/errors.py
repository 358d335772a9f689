"""Exception taxonomy shared across the package."""


class TripodError(Exception):
    """Base class for all package errors."""


class InvalidModulusError(TripodError):
    """Modulus of a mod-p polynomial is not prime."""


class RefinementFailedError(TripodError):
    """Certified root isolation failed within the precision budget."""


class UnsupportedSplittingError(TripodError):
    """The p-adic splitting recursion cannot certify a local factor.

    Signals that the (field, prime) pair is outside supported scope, not
    that the input is malformed.
    """


class WildRamificationError(TripodError):
    """A wildly ramified prime was met and no discriminant override applies."""


class PrecisionExhaustedError(TripodError):
    """An exact quantity could not be certified at the maximum precision."""


class UndecidableComparisonError(TripodError):
    """An interval comparison stayed undecided after precision escalation."""


class DegenerateTransformError(TripodError):
    """The power-map transform produced a degenerate sum (A in {0, 1})."""


class DegreeCapError(TripodError):
    """An intermediate polynomial exceeded the configured degree cap."""


class DomainError(TripodError):
    """Evaluation at a pole/indeterminacy, or division by an interval through zero."""


class InternalInvariantError(TripodError):
    """A construction invariant failed; indicates a bug, not bad input."""
