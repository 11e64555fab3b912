"""Exception hierarchy for maximal-spacing computations.

Two families, split by who is at fault:

- ``InputError`` (also a ``ValueError``): the caller passed something invalid
  (bad parameter, malformed CSV, point outside its region). CLI exit code 2.
- ``GeometryError`` (also a ``RuntimeError``): valid input on which the
  geometry or numerics cannot proceed (collinear sample, uncovered hull).
  CLI exit code 3.
"""

from typing import Optional


class MaxSpacingError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class InputError(MaxSpacingError, ValueError):
    """Invalid input or configuration."""

    exit_code = 2


class GeometryError(MaxSpacingError, RuntimeError):
    """Numerical or geometric failure on otherwise valid input."""

    exit_code = 3


class InvalidDimension(InputError):
    """Dimension d < 1."""


class InvalidParams(InputError):
    """Limit-law parameters outside their admissible ranges."""


class InvalidBandwidth(InputError):
    """Kernel bandwidth h ≤ 0."""


class ZeroSpread(InputError):
    """Sample has no spread, so a scaled bandwidth is undefined."""


class EmptyInput(InputError):
    """An operation that needs at least one point received none."""


class PointOutsideRegion(InputError):
    """A sample point lies outside the closed region it should belong to."""


class InvalidShape(InputError):
    """Shape specification outside its admissible range."""


class InvalidSample(InputError):
    """Sample array with the wrong shape or non-finite coordinates."""


class ConfigError(InputError):
    """Invalid study configuration."""


class InputParseError(InputError):
    """CSV input that cannot be parsed.

    Attributes:
        line: 1-based line number of the offending row, when known
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateInput(GeometryError, ValueError):
    """Fewer than three distinct points, or all points collinear."""


class DensityDomainMismatch(GeometryError):
    """Density estimate not defined on the hull it is paired with."""


class CertificationError(GeometryError):
    """Solver output failed its containment certificate."""
