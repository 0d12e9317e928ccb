"""Error taxonomy shared across modules.

ValueError is used directly for malformed arguments.  The classes here
mark conditions the CLI maps to distinct exit codes.
"""


class NumericFailure(RuntimeError):
    """A computation left its validated regime (overflow, failed quadrature)."""


class UnsupportedProblem(ValueError):
    """The operation does not apply to this problem configuration."""


class ResolutionError(ValueError):
    """Grid cannot resolve the supplied function (spectral tail too heavy)."""
