"""Exception hierarchy for stability_lab.

Every error raised on purpose by this package derives from
:class:`StabilityLabError`, so callers can catch one base class.
"""


class StabilityLabError(Exception):
    """Base class for all stability_lab errors."""


class WordSyntaxError(StabilityLabError, ValueError):
    """A relator word or presentation file failed to parse.

    Attributes
    ----------
    position : int
        0-based character offset of the offending token within the word
        text (or -1 when no position applies).
    line : int or None
        1-based line number when parsing a multi-line file.
    """

    def __init__(self, message, position=-1, line=None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if position >= 0:
            loc.append(f"position {position}")
        suffix = f" ({', '.join(loc)})" if loc else ""
        super().__init__(message + suffix)
        self.message = message
        self.position = position
        self.line = line


class EmptyWordError(StabilityLabError, ValueError):
    """A non-empty word was required (e.g. for the letter-weight L)."""


class MatrixError(StabilityLabError, ValueError):
    """Malformed matrix input: not square, non-finite entries, dimension
    mismatch, or an index referencing a missing generator matrix."""


class DimensionCapError(MatrixError):
    """A requested matrix dimension exceeds the configured cap."""


class NormalityError(StabilityLabError, ValueError):
    """The input matrix is not normal to within the requested tolerance."""


class ConvergenceError(StabilityLabError, ArithmeticError):
    """An iterative kernel (eigensolver / SVD) failed to converge."""


class SingularMatrixError(StabilityLabError, ArithmeticError):
    """An LU pivot fell below the singularity floor; the determinant is
    numerically zero."""


class NonHomogeneousError(StabilityLabError, ValueError):
    """A winding-number operation was asked about a relator whose exponent
    sums do not all vanish; the determinant curve is not closed then and
    no convention is supplied."""


class SingularCurveError(StabilityLabError, ArithmeticError):
    """The determinant curve passes through (or too close to) zero, so its
    winding number is undefined."""


class CurveResolutionError(StabilityLabError, ArithmeticError):
    """Adaptive sampling exceeded its sample budget without resolving the
    argument of the determinant curve."""


class WindingConsistencyError(StabilityLabError, ArithmeticError):
    """The accumulated argument of a closed curve was not close enough to
    an integer multiple of 2*pi, or two winding algorithms disagreed."""


class CosetTableError(StabilityLabError, ValueError):
    """A coset-action table is malformed: a generator's coset map is not a
    permutation, or indices/words are out of range."""


class TableConsistencyError(StabilityLabError, ValueError):
    """The built-in crystallographic table failed one of its internal
    cross-checks; this indicates a transcription error, never corrected
    silently."""
