"""Exception types raised across the package."""

from __future__ import annotations


class SpinorlabError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionError(SpinorlabError):
    """An object has the wrong ambient dimension or coefficient length."""


class RangeError(SpinorlabError):
    """An index or parameter lies outside its admissible range."""


class ParityError(SpinorlabError):
    """An operation requiring even (or odd) dimension got the other parity."""


class ZeroSpinorError(SpinorlabError):
    """A spinor with (numerically) zero norm where a nonzero one is required."""


class ZeroVectorError(SpinorlabError):
    """A vector with (numerically) zero norm where a nonzero one is required."""


class IllConditionedRankError(SpinorlabError):
    """Singular values near the rank threshold make the rank decision unsafe."""


class EmptyDistributionError(SpinorlabError):
    """The kernel distribution is zero, so no frame can be extracted."""


class ResidualError(SpinorlabError):
    """A residual that should vanish exceeded its tolerance."""


class SpectrumMismatchError(SpinorlabError):
    """Computed eigenstructure disagrees with the predicted one."""


class NoTotallyImpureError(SpinorlabError):
    """Requested a nullity-zero spinor in a dimension where none exists."""


class UnreachableNullityError(SpinorlabError):
    """Requested a (dimension, nullity) pair that cannot be realised."""


class InternalVerificationError(SpinorlabError):
    """A self-check inside a constructor or suite failed."""


class ParseError(SpinorlabError):
    """Malformed serialized data."""


class ConfigError(SpinorlabError):
    """Inconsistent or unsupported configuration values."""
