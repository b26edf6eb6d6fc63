"""Secular function, eigenvalues, and the contour-integral determinant oracle.

The secular function of an extension (L, S) is the 2q x 2q determinant

    F(mu) = det [[A, B], [Jp(mu), Jm(mu)]],

with diagonal blocks built from the entire scaled Bessel function
S_v(z) = z^(-v) J_v(z):

    Jp = diag( J_0(mu R) Id_q0,
               2^nu_j Gamma(1+nu_j) R^nu_j   S_{+nu_j}(mu R) ),
    Jm = diag( tilde_J0(mu, R) Id_q0,
               2^-nu_j Gamma(1-nu_j) R^-nu_j S_{-nu_j}(mu R) ).

Every entry is an even entire function of mu, so F is even entire; mu^2 is
an eigenvalue of the extension iff F(mu) = 0, and

    F(0) = det [[A, B], [diag(Id_q0, R^nu), diag(log R Id_q0, R^-nu)]].

On the positive imaginary axis F grows like the envelope

    C x^(|nu| - q/2 - 2 alpha0) e^(q x R) (gt - log x)^(q0 - j0),
    C = a_j0alpha0 (2 pi R)^(-q/2) prod_j 2^(-nu_j) Gamma(1 - nu_j),

with gt = log 2 - Euler's constant; ``asymptotic_ratio`` divides it out and
tends to 1.  For a trivial kernel the regularized determinant equals

    (-1)^(q0-j0) 2^(q0-j0) e^((q0-j0) g) F(t) / C
        * exp( (1/(pi i)) int_{arc} log(mu) F'(mu)/F(mu) dmu )

for any t in the upper cut plane away from zeros of F, the arc running from
t to -t through the right half plane; ``contour_det_oracle`` evaluates this
with central-difference F' and panelled Gauss-Legendre quadrature.

Assumption (recorded): the multiplicity of the eigenvalue mu^2 equals the
order of the zero of F at mu, which ``find_eigenvalues`` measures by
argument-principle winding on a small circle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ContourHitError, InputError, KernelError, NumericError
from .expo_poly import LeadingData, build_p, leading_data
from .extension_model import BaseSpectrum, Lagrangian
from .special_functions import (
    DEFAULT_CONFIG,
    EULER_GAMMA,
    GAMMA_TILDE,
    SeriesConfig,
    bessel_j_scaled,
    gamma,
    tilde_j0,
)

KERNEL_RTOL = 1e-10
ROOT_RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class SecularContext:
    """Immutable bundle: extension, spectrum, series config, leading data of
    the boundary polynomial, and the asymptotic constant C."""

    L: Lagrangian
    S: BaseSpectrum
    cfg: SeriesConfig
    lead: LeadingData
    C_const: complex

    @classmethod
    def create(cls, L: Lagrangian, S: BaseSpectrum,
               cfg: SeriesConfig = DEFAULT_CONFIG) -> "SecularContext":
        lead = leading_data(build_p(L, S), S.q0)
        return cls(L=L, S=S, cfg=cfg, lead=lead,
                   C_const=asymptotic_constant(lead, S))

    @property
    def j0(self) -> int:
        return self.lead.j0


def asymptotic_constant(lead: LeadingData, S: BaseSpectrum) -> complex:
    """a_j0alpha0 (2 pi R)^(-q/2) prod_j 2^(-nu_j) Gamma(1 - nu_j)."""
    c = lead.a_j0alpha0 * (2.0 * math.pi * S.R) ** (-0.5 * S.q)
    for nu in S.nus:
        c *= 2.0 ** (-nu) * gamma(1.0 - nu)
    return c


@dataclass(frozen=True)
class SpectrumSlice:
    positive_mus: tuple[float, ...]
    positive_residuals: tuple[float, ...]
    multiplicities: tuple[int, ...]
    negative_eigenvalues: tuple[float, ...]
    negative_residuals: tuple[float, ...]
    window: tuple[float, float]
    imag_window: tuple[float, float]
    has_kernel: bool
    warnings: tuple[str, ...] = ()


# ----------------------------------------------------------------- F(mu)


def f0_matrix(L: Lagrangian, S: BaseSpectrum) -> np.ndarray:
    """The zero-frequency secular matrix."""
    q, q0 = S.q, S.q0
    mat = np.zeros((2 * q, 2 * q), dtype=complex)
    mat[:q, :q] = L.A
    mat[:q, q:] = L.B
    for k in range(q):
        if k < q0:
            mat[q + k, k] = 1.0
            mat[q + k, q + k] = math.log(S.R)
        else:
            nu = S.nus[k - q0]
            mat[q + k, k] = S.R ** nu
            mat[q + k, q + k] = S.R ** (-nu)
    return mat


def secular_F0_closed(L: Lagrangian, S: BaseSpectrum) -> complex:
    """F(0) in closed form (no Bessel evaluations)."""
    if L.q != S.q or L.q0 != S.q0:
        raise InputError("boundary pair dimensions do not match the spectrum")
    return complex(np.linalg.det(f0_matrix(L, S)))


def kernel_threshold(L: Lagrangian, S: BaseSpectrum) -> float:
    return KERNEL_RTOL * (1.0 + float(np.max(np.abs(f0_matrix(L, S)))))


def secular_matrix(ctx: SecularContext, mu: complex) -> np.ndarray:
    L, S, cfg = ctx.L, ctx.S, ctx.cfg
    q, q0, R = S.q, S.q0, S.R
    mat = np.zeros((2 * q, 2 * q), dtype=complex)
    mat[:q, :q] = L.A
    mat[:q, q:] = L.B
    z = mu * R
    for k in range(q):
        if k < q0:
            mat[q + k, k] = bessel_j_scaled(0.0, z, cfg)
            mat[q + k, q + k] = tilde_j0(mu, R, cfg)
        else:
            nu = S.nus[k - q0]
            mat[q + k, k] = (2.0 ** nu * gamma(1.0 + nu) * R ** nu
                             * bessel_j_scaled(nu, z, cfg))
            mat[q + k, q + k] = (2.0 ** (-nu) * gamma(1.0 - nu) * R ** (-nu)
                                 * bessel_j_scaled(-nu, z, cfg))
    return mat


def _reflect(mu: complex) -> complex:
    # F is even entire; evaluate in the closed right half plane (or the
    # positive imaginary axis) where the large-argument branches are clean
    if mu.real < 0.0 or (mu.real == 0.0 and mu.imag < 0.0):
        return -mu
    return mu


def _logdet(mat: np.ndarray) -> tuple[complex, float]:
    sign, logabs = np.linalg.slogdet(mat)
    return complex(sign), float(logabs)


def secular_F(ctx: SecularContext, mu: complex) -> complex:
    """F(mu) for mu off the negative real axis."""
    mu = complex(mu)
    if mu.imag == 0.0 and mu.real < 0.0:
        raise InputError("mu on the negative real axis (branch cut)", code="cut")
    if mu == 0:
        return secular_F0_closed(ctx.L, ctx.S)
    sign, logabs = _logdet(secular_matrix(ctx, _reflect(mu)))
    if sign == 0:
        return 0j
    if logabs > 705.0:
        raise NumericError("secular determinant overflows double range")
    return sign * math.exp(logabs)


def _f_normalized(ctx: SecularContext, x: float) -> complex:
    # F(i x) / e^(q x R): finite for all reachable x
    mu = 1j * x if x != 0 else 0j
    if x == 0:
        f0 = secular_F0_closed(ctx.L, ctx.S)
        return f0
    sign, logabs = _logdet(secular_matrix(ctx, mu))
    if sign == 0:
        return 0j
    return sign * cmath.exp(logabs - ctx.S.q * x * ctx.S.R)


def asymptotic_ratio(ctx: SecularContext, x: float) -> complex:
    """F(ix) divided by its asymptotic envelope; tends to 1 as x grows."""
    x = float(x)
    if not x >= 10.0:
        raise InputError("asymptotic ratio needs x >= 10")
    S = ctx.S
    if S.q * x * S.R > 690.0 or x * S.R > 690.0:
        raise NumericError("x beyond the overflow-safe range")
    sign, logabs = _logdet(secular_matrix(ctx, 1j * x))
    if sign == 0:
        return 0j
    power = sum(S.nus) - 0.5 * S.q - 2.0 * ctx.lead.alpha0_value
    d = S.q0 - ctx.j0
    base = GAMMA_TILDE - math.log(x)  # negative for the relevant x
    env_log = (math.log(abs(ctx.C_const)) + power * math.log(x)
               + S.q * x * S.R + d * math.log(abs(base)))
    env_phase = cmath.phase(ctx.C_const) + (math.pi * d if base < 0 else 0.0)
    return sign * cmath.exp(logabs - env_log - 1j * env_phase)


# ----------------------------------------------------------------- roots


def _winding(fun, center: complex, radius: float, n: int = 256) -> int:
    """Argument-principle winding of ``fun`` around a circle; the number of
    zeros enclosed, counted with multiplicity."""
    for attempt in range(3):
        total = 0.0
        prev = fun(center + radius)
        ok = True
        for k in range(1, n + 1):
            cur = fun(center + radius * cmath.exp(2j * math.pi * k / n))
            if cur == 0 or prev == 0:
                ok = False
                break
            d = cmath.phase(cur / prev)
            if abs(d) > 2.5:
                ok = False
                break
            total += d
            prev = cur
        if ok:
            w = total / (2.0 * math.pi)
            if abs(w - round(w)) < 0.05:
                return int(round(w))
        n *= 2
    raise NumericError("winding number did not stabilize")


def _scan_zeros(fun, lo: float, hi: float, step: float, rot: complex,
                warnings: list[str]):
    """Zeros of the complex function ``fun`` on [lo, hi]: bracketed sign scan
    of Re(rot * fun) plus |fun| minima recovery for even-order zeros."""
    n = max(8, int(math.ceil((hi - lo) / step)) + 1)
    xs = np.linspace(lo, hi, n)
    vals = [fun(float(x)) for x in xs]
    g = [(rot * v).real for v in vals]
    absf = [abs(v) for v in vals]
    roots: list[tuple[float, float, float]] = []  # (root, residual, scale)

    def real_part(x: float) -> float:
        return (rot * fun(x)).real

    for i in range(n - 1):
        a, b = float(xs[i]), float(xs[i + 1])
        if g[i] == 0.0 and absf[i] <= 1e-12 * (1.0 + max(absf)):
            continue  # node sitting on a zero already handled by minima pass
        if g[i] * g[i + 1] < 0.0:
            r = brentq(real_part, a, b, xtol=1e-13 * (1.0 + b), rtol=1e-13)
            scale = max(absf[i], absf[i + 1], 1e-300)
            roots.append((float(r), abs(fun(float(r))), scale))

    # local |F| minima without a sign change: candidate even-order zeros
    for i in range(1, n - 1):
        if not (absf[i] < absf[i - 1] and absf[i] <= absf[i + 1]):
            continue
        scale = max(absf[i - 1], absf[i + 1], 1e-300)
        if absf[i] > 1e-4 * scale:
            continue
        a, b = float(xs[i - 1]), float(xs[i + 1])
        if any(a < r < b for r, _, _ in roots):
            continue
        xm = _min_abs(fun, a, b)
        resid = abs(fun(xm))
        if resid <= ROOT_RESIDUAL_RTOL * scale:
            roots.append((xm, resid, scale))
        else:
            warnings.append(
                f"|F| dips to {resid:.3e} near {xm:.6g} without a real zero "
                "(possible complex zero off the axis)")
    roots.sort()
    return roots, vals, xs


def _min_abs(fun, a: float, b: float) -> float:
    # golden-section minimization of |fun| on [a, b]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = abs(fun(x1)), abs(fun(x2))
    for _ in range(120):
        if b - a < 1e-14 * (1.0 + abs(b)):
            break
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = abs(fun(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = abs(fun(x2))
    return 0.5 * (a + b)


def find_eigenvalues(ctx: SecularContext, count: int,
                     mu_max: float | None = None,
                     grid_step: float | None = None) -> SpectrumSlice:
    """First ``count`` positive zeros of F (or all below mu_max), plus the
    negative-eigenvalue scan on the imaginary axis up to the point where the
    asymptotic envelope certifies F(ix) != 0."""
    if count < 1:
        raise InputError("count must be >= 1")
    S = ctx.S
    q, R = S.q, S.R
    f0 = secular_F0_closed(ctx.L, ctx.S)
    thresh0 = kernel_threshold(ctx.L, ctx.S)
    has_kernel = abs(f0) <= thresh0
    warnings: list[str] = []
    if has_kernel:
        warnings.append("F(0) = 0 within tolerance: 0 is an eigenvalue "
                        "(kernel); closed-form determinants do not apply")

    spacing = math.pi / (q * R)
    step = grid_step or spacing / 8.0
    lo = step / 2.0 if has_kernel else 0.0
    hi = mu_max if mu_max is not None else lo + (count + 2) * spacing
    cap = mu_max if mu_max is not None else (count + 2) * 60.0 * spacing

    def f_pos(x: float) -> complex:
        return secular_F(ctx, complex(x, 0.0))

    rot = 1.0 + 0j
    probe = f_pos(lo if lo > 0 else step / 3.0)
    if abs(probe) > 0:
        rot = abs(probe) / probe

    found: list[tuple[float, float, float]] = []
    seg_lo = lo
    while True:
        roots, _, _ = _scan_zeros(f_pos, seg_lo, hi, step, rot, warnings)
        for r in roots:
            if not any(abs(r[0] - f[0]) <= 4.0 * step * 1e-6 + 1e-12 for f in found):
                found.append(r)
        found.sort()
        if mu_max is not None or len(found) >= count or hi >= cap:
            break
        seg_lo = hi
        hi = min(cap, hi * 1.6 + spacing)
    if len(found) < count and mu_max is None:
        warnings.append(
            f"only {len(found)} of {count} requested roots found below {hi:.6g}")
    if mu_max is None:
        found = found[:count]
    window = (lo, hi)

    mults = []
    for r, _, _ in found:
        radius = step / 3.0
        for other, _, _ in found:
            if other != r:
                radius = min(radius, abs(other - r) / 3.0)
        try:
            mults.append(_winding(lambda z: secular_F(ctx, z), complex(r), radius))
        except NumericError:
            mults.append(1)
            warnings.append(f"multiplicity winding did not stabilize at {r:.6g}")

    # negative eigenvalues: zeros of F(ix) for x in (0, x_max]
    x_cap = 650.0 / (q * R)
    x_asym = max(10.0, 2.0 / R)
    while x_asym < x_cap:
        try:
            if abs(asymptotic_ratio(ctx, x_asym) - 1.0) < 0.1:
                break
        except NumericError:
            break
        x_asym *= 1.4
    x_max = min(x_asym, x_cap)
    if x_asym >= x_cap:
        warnings.append("asymptotic regime not certified below the overflow "
                        "cap; imaginary-axis scan window may be short")

    def f_imag(x: float) -> complex:
        return _f_normalized(ctx, float(x))

    rot_im = 1.0 + 0j
    probe = f_imag(x_max / 1000.0 if has_kernel else 0.0)
    if abs(probe) > 0:
        rot_im = abs(probe) / probe
    imag_lo = x_max / 1000.0 if has_kernel else 0.0
    im_roots, _, _ = _scan_zeros(f_imag, imag_lo, x_max, x_max / 400.0,
                                 rot_im, warnings)

    return SpectrumSlice(
        positive_mus=tuple(r for r, _, _ in found),
        positive_residuals=tuple(res for _, res, _ in found),
        multiplicities=tuple(mults),
        negative_eigenvalues=tuple(-r * r for r, _, _ in im_roots),
        negative_residuals=tuple(res for _, res, _ in im_roots),
        window=window,
        imag_window=(imag_lo, x_max),
        has_kernel=has_kernel,
        warnings=tuple(warnings),
    )


# ----------------------------------------------------------------- oracle


def _fprime(ctx: SecularContext, mu: complex) -> complex:
    # central differences with one Richardson refinement
    h = 1e-5 * (1.0 + abs(mu))
    d1 = (secular_F(ctx, mu + h) - secular_F(ctx, mu - h)) / (2.0 * h)
    d2 = (secular_F(ctx, mu + h / 2) - secular_F(ctx, mu - h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


def contour_log_integral(ctx: SecularContext, t: complex, n_quad: int = 48) -> complex:
    """(1/(pi i)) int over the arc from t to -t (through the right half
    plane) of log(mu) F'(mu)/F(mu) dmu; tends to 0 as t -> 0 for a trivial
    kernel."""
    t = complex(t)
    if abs(t) == 0.0:
        raise InputError("t must be nonzero")
    if t.imag <= 0.0:
        raise InputError("t must lie in the upper half plane")
    if n_quad < 1:
        raise InputError("n_quad must be >= 1")
    phi = cmath.phase(t)
    radius = abs(t)
    nodes, weights = np.polynomial.legendre.leggauss(10)

    thetas = []
    for p in range(n_quad):
        a = (phi - math.pi) + p * math.pi / n_quad
        b = a + math.pi / n_quad
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        for xk, wk in zip(nodes, weights):
            thetas.append((mid + half * xk, wk * half))

    mus = [radius * cmath.exp(1j * th) for th, _ in thetas]
    fvals = [secular_F(ctx, mu) for mu in mus]
    mags = sorted(abs(v) for v in fvals)
    med = mags[len(mags) // 2]
    if med == 0.0 or mags[0] <= 1e-10 * med:
        raise ContourHitError("contour passes near a zero of F")

    total = 0j
    for (th, w), mu, f in zip(thetas, mus, fvals):
        total += w * cmath.log(mu) * (_fprime(ctx, mu) / f) * mu
    return -total / math.pi


def contour_det_oracle(ctx: SecularContext, t: complex, n_quad: int = 48) -> complex:
    """Regularized determinant via the contour representation; refused when
    the kernel is nontrivial (the arc factor is uncontrolled there)."""
    f0 = secular_F0_closed(ctx.L, ctx.S)
    if abs(f0) <= kernel_threshold(ctx.L, ctx.S):
        raise KernelError(
            "nontrivial kernel: the determinant needs zero-mode subtraction, "
            "which this oracle does not provide")
    d = ctx.S.q0 - ctx.j0
    integral = contour_log_integral(ctx, t, n_quad)
    pref = ((-1.0) ** d) * (2.0 ** d) * math.exp(d * EULER_GAMMA)
    return pref * secular_F(ctx, t) / ctx.C_const * cmath.exp(integral)
