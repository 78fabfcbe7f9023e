"""Exception hierarchy shared by all geodex modules."""


class GeodexError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeodexError, ValueError):
    """An argument lies outside the domain an operation supports."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class RangeOverflowError(GeodexError, OverflowError):
    """A finite double-precision result cannot represent the value."""


class BranchDegeneracyError(GeodexError, ArithmeticError):
    """A principal-branch expression degenerated (base too close to 0)."""


class TailBudgetError(GeodexError, ArithmeticError):
    """The declared decay is too weak to meet the precision target."""


class NonDecayingIntegrandError(GeodexError, ArithmeticError):
    """Sampled contour magnitudes stopped decreasing beyond the declared height."""


class TruncationInfeasibleError(GeodexError, ArithmeticError):
    """A truncation parameter does not cover a structurally required range."""


class CoverageError(GeodexError, ValueError):
    """The spectral dataset does not cover the requested range."""


class DataFormatError(GeodexError, ValueError):
    """A data file violates the documented spectral file format."""


class ChecksumError(DataFormatError):
    """Body checksum does not match the #checksum header."""


class HeckeRelationError(DataFormatError):
    """Stored Hecke eigenvalues violate the multiplicativity relation."""


class ConfigError(GeodexError, ValueError):
    """A run configuration value is inconsistent or unsupported."""
