"""Exception types shared across the package."""


class NorburyError(Exception):
    """Base class for all package errors."""


class IdentityMatrix(NorburyError):
    """Fixed points requested for a projectively trivial matrix."""


class BranchJump(NorburyError):
    """Consecutive path samples of a length function differ by more than
    the continuation threshold; the deformation path is sampled too coarsely."""


class NotHyperbolic(NorburyError):
    """Surface data with non-negative Euler characteristic."""


class OutsideChart(NorburyError):
    """Family parameters outside the chart of the Fuchsian family."""


class ValidationFailed(NorburyError):
    """A freshly built representation failed its invariant checks."""


class NotParabolic(NorburyError):
    """Cusp normalization requested for a non-parabolic peripheral image."""


class UnsupportedBendCurve(NorburyError):
    """No complement decomposition is tabulated for this bending curve."""


class RadiusOverflow(NorburyError):
    """Group-element enumeration exceeded its configured size bound."""


class CalibrationFailed(NorburyError):
    """The word-length / geodesic-length calibration could not be established."""


class PoleHit(NorburyError):
    """A summand denominator vanished; the representation is suspect
    (this cannot happen on the Fuchsian locus or inside quasifuchsian space)."""


class DomainError(NorburyError):
    """Function argument outside its real domain."""


class NotConverged(NorburyError):
    """Height-extreme search did not stabilize under refinement."""


class PartitionAmbiguous(NorburyError):
    """A limit-curve extreme could not be bracketed by enumerated directions."""


class InterlaceViolation(NorburyError):
    """The fourteen-direction interlacing pattern failed."""
