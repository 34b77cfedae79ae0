"""Exception hierarchy.

Input problems and numerical failures are kept distinct because the CLI
maps them to different exit codes (1 and 2 respectively).
"""


class LapgeoError(Exception):
    """Base class for all package errors."""


class InputError(LapgeoError):
    """Invalid user-supplied data: malformed files, bad parameters, ragged
    or non-finite point clouds, out-of-range indices."""


class NumericalError(LapgeoError):
    """A computation could not produce a usable result: eigensolver
    failure, numerically dependent modes, matrices violating required
    structure."""


class NoAdmissibleQError(NumericalError):
    """No q >= 1 satisfies the truncation inequality 2|lambda_q| + eps <
    |lambda_r|.  The caller must lower eps or raise r."""


class EstimationFailedError(NumericalError):
    """Every optimizer candidate was degenerate (zero gradient sup with a
    nonzero separation), so no distance value can be reported."""
