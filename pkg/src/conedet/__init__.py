"""conedet: determinants and zeta singularity structure for self-adjoint
extensions of cone-type singular operators.

The package computes, for a boundary pair (A, B) over a base spectrum
(q0 halves plus exponents nu_j in (0, 1)):

* validation and construction of the boundary pair (``extension_model``),
* the boundary determinant polynomial p(x, y) and its leading data
  (``expo_poly``),
* the pole / logarithmic-branch structure of the associated zeta function
  (``singularity_analyzer``),
* the secular function F(mu), its zeros (the eigenvalues are mu^2), and a
  contour-integral determinant oracle (``secular``),
* closed-form regularized determinants (``det_engine``),
* a JSON-driven command line, ``conedet`` (``cli``).
"""

__version__ = "0.1.0"

from .errors import (
    ConedetError,
    ContourHitError,
    DegenerateDeterminantError,
    InputError,
    InvalidLagrangianError,
    KernelError,
    NumericError,
    SpectrumRangeError,
)

__all__ = [
    "__version__",
    "ConedetError",
    "ContourHitError",
    "DegenerateDeterminantError",
    "InputError",
    "InvalidLagrangianError",
    "KernelError",
    "NumericError",
    "SpectrumRangeError",
]
