"""Self-contained gamma and Bessel-type primitives.

No external special-function library is used here; everything reduces to

* ``gamma``           -- rational minimax approximation on (1, 2) with
                         argument recurrence on (0, 4) and reflection on
                         (-2, 0),
* ``bessel_j_scaled`` -- the entire, even function z**(-v) * J_v(z) via its
                         defining power series

                             sum_k (-1)^k z^(2k) / (2^(v+2k) k! Gamma(v+k+1)),

                         switching to the standard large-argument (Hankel)
                         asymptotic expansion beyond ``small_z_radius``,
* ``bessel_y0``       -- Y_0 for positive real arguments, through the small-z
                         rearrangement

                             (pi/2) Y_0(z) = (log z - log 2 + g) J_0(z)
                                             - sum_k H_k (-z^2/4)^k / (k!)^2

                         with H_k the harmonic numbers and g Euler's constant,
* ``tilde_j0``        -- (pi/2) Y_0(mu r) - (log mu - log 2 + g) J_0(mu r),
                         computed for small |mu r| in the rearranged form

                             log(r) J_0(mu r) - sum_k H_k (-mu^2 r^2/4)^k/(k!)^2

                         which is entire and even in mu.

The scaled Bessel function is deliberately the primitive: every combination
mu**(+-v) J_{+-v}(mu R) needed by the secular determinant is an explicit
prefactor times ``bessel_j_scaled``, so branch cuts enter only through
explicit principal powers, never through the Bessel evaluation itself.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InputError, NumericError

# Euler-Mascheroni constant, full double precision.  gamma-tilde is derived
# from it, never hardcoded independently.
EULER_GAMMA = 0.5772156649015329
GAMMA_TILDE = math.log(2.0) - EULER_GAMMA


@dataclass(frozen=True)
class SeriesConfig:
    """Accuracy knobs shared by the series evaluations."""

    term_tolerance: float = 1e-17
    max_terms: int = 80
    small_z_radius: float = 12.0

    def __post_init__(self):
        if not self.term_tolerance > 0:
            raise InputError("term_tolerance must be positive")
        if self.max_terms < 10:
            raise InputError("max_terms must be at least 10")
        if not self.small_z_radius > 0:
            raise InputError("small_z_radius must be positive")


DEFAULT_CONFIG = SeriesConfig()


# ----------------------------------------------------------------------
# Gamma function
# ----------------------------------------------------------------------

# Rational minimax coefficients for Gamma on (1, 2) (Cody/Stoltz, accurate to
# well below double rounding).
_GAMMA_NUM = (
    -1.71618513886549492533811e+00,
    2.47656508055759199108314e+01,
    -3.79804256470945635097577e+02,
    6.29331155312818442661052e+02,
    8.66966202790413211295064e+02,
    -3.14512729688483675254357e+04,
    -3.61444134186911729807069e+04,
    6.64561438202405440627855e+04,
)
_GAMMA_DEN = (
    -3.08402300119738975254353e+01,
    3.15350626979604161529144e+02,
    -1.01515636749021914166146e+03,
    -3.10777167157231109440444e+03,
    2.25381184209801510330112e+04,
    4.75584627752788110767815e+03,
    -1.34659959864969306392456e+05,
    -1.15132259675553483497211e+05,
)


def _gamma_rational(x: float) -> float:
    # x in [1, 2]
    z = x - 1.0
    num = 0.0
    den = 1.0
    for p, q in zip(_GAMMA_NUM, _GAMMA_DEN):
        num = (num + p) * z
        den = den * z + q
    return num / den + 1.0


def _sinpi(x: float) -> float:
    # sin(pi*x) with exact argument reduction, accurate near integer x.
    n = math.floor(x)
    f = x - n
    if f > 0.5:
        f = 1.0 - f
    s = math.sin(math.pi * f)
    return -s if int(n) % 2 else s


def gamma(x: float) -> float:
    """Gamma(x) for real x in (-2, 4), excluding the poles at 0 and -1.

    Relative accuracy is better than 1e-13 away from the pole
    neighborhoods (the supported range covers every argument the
    determinant formulas need: 1 +- v with v in (0, 1), and small halves).
    """
    x = float(x)
    if not (-2.0 < x < 4.0):
        raise InputError(f"gamma argument {x} outside (-2, 4)", code="gamma_domain")
    if x <= 0.0 and x == math.floor(x):
        raise InputError(f"gamma pole at {x}", code="gamma_pole")
    if x >= 1.0:
        fac = 1.0
        y = x
        while y > 2.0:
            y -= 1.0
            fac *= y
        return fac * _gamma_rational(y)
    if x > 0.0:
        return _gamma_rational(x + 1.0) / x
    # (-2, 0), non-integer: reflection, 1 - x lands in (1, 3)
    return math.pi / (_sinpi(x) * gamma(1.0 - x))


# ----------------------------------------------------------------------
# Bessel functions
# ----------------------------------------------------------------------


def _j_scaled_series(nu: float, z: complex, cfg: SeriesConfig) -> complex:
    # sum_k (-1)^k z^(2k) / (2^(nu+2k) k! Gamma(nu+k+1)), converges for all z
    w = z * z
    term = 1.0 / (2.0 ** nu * gamma(1.0 + nu))
    total = complex(term)
    for k in range(cfg.max_terms):
        term = term * (-w / 4.0) / ((k + 1.0) * (nu + k + 1.0))
        total += term
        if abs(term) <= cfg.term_tolerance * max(abs(total), 1e-300):
            return total
    raise NumericError(
        f"scaled Bessel series did not converge for nu={nu}, |z|={abs(z):.3g} "
        f"within {cfg.max_terms} terms"
    )


def _asymptotic_pq(nu: float, z: complex, min_terms: int = 8) -> tuple[complex, complex]:
    # Cosine / sine cofactors of the Hankel expansion:
    #   P = sum (-1)^m a_{2m}/z^{2m},  Q = sum (-1)^m a_{2m+1}/z^{2m+1},
    #   a_k = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! 8^k).
    # Divergent series; summed to the smallest term (at least min_terms).
    mu4 = 4.0 * nu * nu
    c = 1.0 + 0.0j  # a_k / z^k
    p_sum = 1.0 + 0.0j
    q_sum = 0.0j
    prev = abs(c)
    for k in range(1, 60):
        c = c * (mu4 - (2.0 * k - 1.0) ** 2) / (8.0 * k * z)
        mag = abs(c)
        if k > min_terms and mag >= prev:
            break
        if k % 2:
            q_sum += ((-1) ** ((k - 1) // 2)) * c
        else:
            p_sum += ((-1) ** (k // 2)) * c
        if mag < 1e-18 * max(abs(p_sum), 1e-300):
            break
        prev = mag
    return p_sum, q_sum


def _j_asymptotic(nu: float, z: complex) -> complex:
    p_sum, q_sum = _asymptotic_pq(nu, z)
    omega = z - (0.5 * nu + 0.25) * math.pi
    amp = cmath.sqrt(2.0 / (math.pi * z))
    return amp * (cmath.cos(omega) * p_sum - cmath.sin(omega) * q_sum)


def _y0_asymptotic(z: complex) -> complex:
    p_sum, q_sum = _asymptotic_pq(0.0, z)
    omega = z - 0.25 * math.pi
    amp = cmath.sqrt(2.0 / (math.pi * z))
    return amp * (cmath.sin(omega) * p_sum + cmath.cos(omega) * q_sum)


def _check_order(nu: float) -> float:
    nu = float(nu)
    if not (-2.0 < nu < 3.0):
        raise InputError(f"Bessel order {nu} outside supported (-2, 3)")
    if nu <= -1.0 and nu == math.floor(nu):
        raise InputError(f"Bessel order {nu} hits a gamma pole")
    return nu


def bessel_j_scaled(nu: float, z: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """The entire function z**(-nu) * J_nu(z); even in z.

    Series evaluation for |z| <= cfg.small_z_radius, Hankel asymptotics
    beyond (valid off the negative real axis; accuracy is 1e-10 or better
    on the tested range).  Primary order range is (-1, 1); adjacent orders
    are accepted so derivative recurrences can be formed.
    """
    nu = _check_order(nu)
    z = complex(z)
    if abs(z) <= cfg.small_z_radius:
        return _j_scaled_series(nu, z, cfg)
    if z.real < 0.0 and z.imag == 0.0:
        raise InputError("large negative real z: asymptotic branch cut", code="cut")
    return cmath.exp(-nu * cmath.log(z)) * _j_asymptotic(nu, z)


def bessel_j(nu: float, z: complex, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """J_nu(z) = z**nu * bessel_j_scaled(nu, z), principal power."""
    nu = _check_order(nu)
    z = complex(z)
    if z == 0:
        if nu == 0.0:
            return 1.0 + 0.0j
        if nu > 0.0:
            return 0.0j
        raise InputError("J_nu(0) diverges for negative order")
    if nu == 0.0:
        return bessel_j_scaled(0.0, z, cfg)
    return cmath.exp(nu * cmath.log(z)) * bessel_j_scaled(nu, z, cfg)


def _harmonic_sum(w: complex, cfg: SeriesConfig) -> complex:
    # sum_{k>=1} H_k w^k / (k!)^2  with H_k = 1 + 1/2 + ... + 1/k
    h = 0.0
    p = 1.0 + 0.0j
    total = 0.0j
    for k in range(1, cfg.max_terms + 1):
        h += 1.0 / k
        p = p * w / (k * k)
        term = h * p
        total += term
        if abs(term) <= cfg.term_tolerance * max(abs(total), 1e-300):
            return total
    raise NumericError("harmonic Bessel sum did not converge")


def bessel_y0(z: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Y_0(z) for real z > 0."""
    z = float(z)
    if not z > 0.0:
        raise InputError("Y_0 requires z > 0")
    if z <= cfg.small_z_radius:
        j0 = _j_scaled_series(0.0, complex(z), cfg).real
        s = _harmonic_sum(complex(-0.25 * z * z), cfg).real
        return (2.0 / math.pi) * ((math.log(z) - math.log(2.0) + EULER_GAMMA) * j0 - s)
    return _y0_asymptotic(complex(z)).real


def tilde_j0(mu: complex, r: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """(pi/2) Y_0(mu r) - (log mu - log 2 + EULER_GAMMA) J_0(mu r).

    Entire and even in mu.  For small |mu r| this is evaluated through the
    rearranged series log(r) J_0(mu r) - sum H_k (-mu^2 r^2/4)^k/(k!)^2,
    which never sees a branch; the direct form with principal log mu is
    used for large arguments and requires mu off the negative real axis.
    """
    mu = complex(mu)
    if not r > 0.0:
        raise InputError("tilde_j0 requires r > 0")
    if mu.imag == 0.0 and mu.real < 0.0:
        raise InputError("mu on the negative real axis (branch cut)", code="cut")
    z = mu * r
    if abs(z) <= cfg.small_z_radius:
        j0 = _j_scaled_series(0.0, z, cfg)
        return math.log(r) * j0 - _harmonic_sum(-0.25 * z * z, cfg)
    y0 = _y0_asymptotic(z)
    j0 = _j_asymptotic(0.0, z)
    return 0.5 * math.pi * y0 - (cmath.log(mu) - math.log(2.0) + EULER_GAMMA) * j0


def tau_from_nu(nu: float) -> float:
    """2^(2 nu) Gamma(1 + nu) / Gamma(1 - nu) for nu in (0, 1)."""
    if not 0.0 < nu < 1.0:
        raise InputError(f"nu = {nu} outside (0, 1)")
    return 2.0 ** (2.0 * nu) * gamma(1.0 + nu) / gamma(1.0 - nu)
