"""Exception types shared across the package."""


class LcrpError(Exception):
    """Base class for all package-specific errors."""


class DeterminantError(LcrpError):
    """Transform matrix is not unimodular."""


class ZeroBError(LcrpError):
    """Transform matrix has b = 0 (unsupported delta-kernel branch)."""


class NonFiniteError(LcrpError):
    """A computation produced NaN or infinite samples."""


class DimensionMismatch(LcrpError):
    """Operands have incompatible grid dimensions."""


class DomainError(LcrpError):
    """A parameter lies outside its admissible interval."""


class RangeError(LcrpError):
    """Pixel values lie outside the required range."""


class QuadratureNonConvergence(LcrpError):
    """Adaptive quadrature failed to reach its tolerance within the depth cap."""


class KeyIntegrityError(LcrpError):
    """Key material violates a structural invariant."""


class CRCError(LcrpError):
    """A binary container failed its checksum."""


class FormatError(LcrpError):
    """A file is not in a supported format."""


class SingularSweepPoint(LcrpError):
    """A key sweep hit a degenerate parameter value (skipped, flagged)."""


class OutOfBounds(LcrpError):
    """A requested region exceeds the grid bounds."""
