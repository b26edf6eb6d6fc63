"""Exception hierarchy shared by all conedet modules.

The CLI maps these onto its exit codes: rejected input / parse problems -> 2,
an invalid boundary pair -> 1, a nontrivial kernel -> 3, a degenerate
boundary determinant -> 4, anything numerically unrecoverable -> 5.
"""


class ConedetError(Exception):
    """Base class for all conedet errors."""


class InputError(ConedetError):
    """Rejected input: bad shapes, values outside the supported domain,
    malformed problem files.  Carries an optional machine-readable code."""

    def __init__(self, message: str, code: str = "rejected_input"):
        super().__init__(message)
        self.code = code


class SpectrumRangeError(InputError):
    """A base eigenvalue outside the open interval where extension freedom
    exists.  ``code`` distinguishes the boundary that was hit."""


class InvalidLagrangianError(ConedetError):
    """The matrix pair does not cut out a Lagrangian subspace."""


class KernelError(ConedetError):
    """The boundary operator has a zero mode; closed-form determinant
    formulas do not apply and the contour oracle is refused."""


class DegenerateDeterminantError(ConedetError):
    """The boundary determinant polynomial vanishes identically, so no
    leading term exists."""


class ContourHitError(ConedetError):
    """The integration contour passes too close to a zero of the secular
    function."""


class NumericError(ConedetError):
    """A numeric procedure failed to reach its stated accuracy or range."""
