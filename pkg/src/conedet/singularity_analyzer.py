"""Singularity structure of the zeta function attached to a boundary pair.

From the factored boundary polynomial

    p(x, y) = a x^j0 y^(2 alpha0) (1 + z),    z = sum b_kbeta x^k y^(2 beta),

the formal expansion log(1 + z) = sum c_lxi x^l y^(2 xi) determines, for
each exponent value xi,

    p_xi  = min { l <= 0 : c_lxi != 0 }   (pole of order |p_xi| + 1 at -xi),
    l_xi  = min { l >  0 : c_lxi != 0 }   (log branch point of order l_xi),

together with the leading coefficients reported by ``analyze``:

    pole     f(-xi) = (-1)^(|p_xi|+1) c_{p_xi xi} |p_xi|! / 2^|p_xi| * xi,
    log      c_{l0,0} 2^l0 / (l0-1)!                      at xi = 0,
             -c_{l_xi xi} xi 2^l_xi / (l_xi-1)!           at xi > 0,

plus the s log s branch coefficient j0 - q0 at the origin (its exponential
prefactor constant, log 2 minus Euler's constant, is reported as metadata).

The expansion window is (xi <= N, |l| <= M).  The power cutoff makes the
truncation provably complete inside the window: with beta_min the smallest
positive exponent value in z, n1 = ceil(N / beta_min), and k_neg the most
negative x-power among positive-beta terms (0 if none), any product of more
than K_max = n1 * (1 + k_neg) + M factors either leaves xi <= N or leaves
l <= M.  Terms at exponent value zero always carry l >= 1, which the
factored form guarantees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from scipy.integrate import quad

from .errors import InputError
from .expo_poly import LeadingData, alpha_value, build_p, leading_data, merge_tol
from .extension_model import BaseSpectrum, Lagrangian
from .special_functions import EULER_GAMMA, GAMMA_TILDE

SeriesTerms = dict[tuple[int, tuple[int, ...]], complex]

COEFF_ZERO_RTOL = 1e-11
COEFF_FLAG_RTOL = 1e-13


@dataclass(frozen=True)
class LogSeries:
    """Coefficients c_{l xi} keyed by (l, relative multi-index)."""

    terms: SeriesTerms
    truncation: tuple[float, int]
    nus: tuple[float, ...]

    def __post_init__(self):
        for (_, m) in self.terms:
            if alpha_value(m, self.nus) < -1e-9:
                raise InputError("negative exponent value in log series")

    def value(self, m: tuple[int, ...]) -> float:
        return alpha_value(m, self.nus)


class PoleEntry(NamedTuple):
    xi: float
    p_xi: int
    order: int
    f_at_minus_xi: complex


class LogEntry(NamedTuple):
    xi: float
    ell_xi: int
    leading_coeff: complex


@dataclass(frozen=True)
class SingularityReport:
    j0: int
    q0: int
    log_branch_coeff_at_0: int
    poles: tuple[PoleEntry, ...]
    logs: tuple[LogEntry, ...]
    truncation: tuple[float, int]
    gamma_tilde: float = GAMMA_TILDE
    warnings: tuple[str, ...] = ()


# ----------------------------------------------------------------- caps


def _caps(terms: SeriesTerms, nus, N: float, M: int):
    """(beta_min, n1, k_neg, K_max) for the completeness cutoff."""
    tol0 = merge_tol(0.0)
    pos = [(k, alpha_value(m, nus)) for (k, m) in terms if alpha_value(m, nus) > tol0]
    if not pos:
        return None, 0, 0, M
    beta_min = min(v for _, v in pos)
    n1 = math.ceil(N / beta_min)
    k_neg = max(0, -min(k for k, _ in pos))
    return beta_min, n1, k_neg, n1 * (1 + k_neg) + M


def _mul_pruned(za: SeriesTerms, zb: SeriesTerms, nus, N: float, M: int,
                beta_min, k_neg: int) -> SeriesTerms:
    out: SeriesTerms = {}
    n_slack = N + merge_tol(N)
    for (l1, m1), c1 in za.items():
        for (l2, m2), c2 in zb.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = alpha_value(m, nus)
            if v > n_slack:
                continue  # exponent values only grow; dead branch
            ell = l1 + l2
            if beta_min is None:
                if ell > M:
                    continue
            elif ell > M + k_neg * math.ceil(max(0.0, N - v) / beta_min):
                continue  # cannot re-enter l <= M within the xi budget
            key = (ell, m)
            s = out.get(key, 0j) + c1 * c2
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _accumulate_powers(z: SeriesTerms, nus, N: float, M: int,
                       weight: Callable[[int], complex], kmax: int,
                       beta_min, k_neg: int) -> SeriesTerms:
    acc: SeriesTerms = {}
    zp = dict(z)
    for n in range(1, kmax + 1):
        w = weight(n)
        for key, c in zp.items():
            s = acc.get(key, 0j) + w * c
            if s == 0:
                acc.pop(key, None)
            else:
                acc[key] = s
        if n < kmax and zp:
            zp = _mul_pruned(zp, z, nus, N, M, beta_min, k_neg)
    return acc


def _window(terms: SeriesTerms, nus, N: float, M: int) -> SeriesTerms:
    n_slack = N + merge_tol(N)
    return {(l, m): c for (l, m), c in terms.items()
            if -M <= l <= M and alpha_value(m, nus) <= n_slack}


# ----------------------------------------------------------------- ops


def log_expand(lead: LeadingData, N: float, M: int) -> LogSeries:
    """Coefficients of log(1 + sum b_kbeta x^k y^(2 beta)) on the window
    xi <= N, -M <= l <= M; exact there by the completeness cutoff."""
    if not N > 0:
        raise InputError("N must be positive")
    if int(M) != M or M < 1:
        raise InputError("M must be an integer >= 1")
    M = int(M)
    nus = lead.nus
    z: SeriesTerms = {(t.k, t.beta_key): complex(t.b) for t in lead.remainder_terms}
    if not z:
        return LogSeries({}, (float(N), M), nus)
    beta_min, _, k_neg, kmax = _caps(z, nus, N, M)
    acc = _accumulate_powers(z, nus, N, M,
                             lambda n: complex((-1.0) ** (n - 1) / n),
                             kmax, beta_min, k_neg)
    return LogSeries(_window(acc, nus, N, M), (float(N), M), nus)


def exp_truncated(series: LogSeries, N: float, M: int) -> SeriesTerms:
    """Formal exp of a truncated series on the same kind of window,
    including the constant term.  Requires every exponent-value-zero term
    of the input to carry l >= 1 (true for any ``log_expand`` output)."""
    nus = series.nus
    z = dict(series.terms)
    tol0 = merge_tol(0.0)
    for (l, m) in z:
        if alpha_value(m, nus) <= tol0 and l <= 0:
            raise InputError("cannot bound exp truncation: l <= 0 term at value 0")
    out: SeriesTerms = {(0, (0,) * len(nus)): 1.0 + 0j}
    if not z:
        return out
    beta_min, _, k_neg, kmax = _caps(z, nus, N, M)
    factorials = [math.factorial(n) for n in range(kmax + 1)]
    acc = _accumulate_powers(z, nus, N, M,
                             lambda n: complex(1.0 / factorials[n]),
                             kmax, beta_min, k_neg)
    for key, c in acc.items():
        s = out.get(key, 0j) + c
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s
    return _window(out, nus, N, int(M))


def analyze(L: Lagrangian, S: BaseSpectrum, N: float = 5.0, M: int = 10) -> SingularityReport:
    """Full singularity report for the extension (L, S) on the window
    xi <= N.  The l-window is widened internally to the structural lower
    bound so that every pole order with xi <= N is exact; the truncation
    actually used is recorded in the report."""
    p = build_p(L, S)
    lead = leading_data(p, S.q0)
    coeff0 = lead.j0 - S.q0
    if not lead.remainder_terms:
        return SingularityReport(
            j0=lead.j0, q0=S.q0, log_branch_coeff_at_0=coeff0,
            poles=(), logs=(), truncation=(float(N), int(M)))

    z: SeriesTerms = {(t.k, t.beta_key): complex(t.b) for t in lead.remainder_terms}
    _, n1, k_neg, _ = _caps(z, lead.nus, N, M)
    m_eff = max(int(M), k_neg * n1)
    series = log_expand(lead, N, m_eff)

    # merge keys into xi value classes
    items = sorted(((series.value(m), l, c) for (l, m), c in series.terms.items()),
                   key=lambda t: t[0])
    classes: list[list[tuple[float, int, complex]]] = []
    for item in items:
        if classes and item[0] - classes[-1][0][0] <= merge_tol(classes[-1][0][0]):
            classes[-1].append(item)
        else:
            classes.append([item])

    poles: list[PoleEntry] = []
    logs: list[LogEntry] = []
    warnings: list[str] = []
    for cls in classes:
        xi = cls[0][0]
        is_zero_class = abs(xi) <= merge_tol(0.0)
        if is_zero_class:
            xi = 0.0
        by_ell: dict[int, complex] = {}
        for _, l, c in cls:
            by_ell[l] = by_ell.get(l, 0j) + c
        total = sum(abs(c) for c in by_ell.values())
        thr = COEFF_ZERO_RTOL * (1.0 + total)
        flag = COEFF_FLAG_RTOL * (1.0 + total)
        nonzero = sorted(l for l, c in by_ell.items() if abs(c) > thr)
        for l in nonzero:
            if abs(by_ell[l]) <= flag:
                warnings.append(
                    f"coefficient at (l={l}, xi={xi:.6g}) is below the flag "
                    f"threshold but kept: {by_ell[l]!r}")
        neg = [l for l in nonzero if l <= 0]
        pos = [l for l in nonzero if l > 0]
        if neg:
            if is_zero_class:
                warnings.append(
                    "suppressed nonpositive-l coefficient at the zero class "
                    "(structurally impossible; numeric merging artifact)")
            else:
                p_xi = min(neg)
                order = -p_xi + 1
                c = by_ell[p_xi]
                f_val = ((-1.0) ** order) * c * math.factorial(-p_xi) / 2.0 ** (-p_xi) * xi
                poles.append(PoleEntry(xi, p_xi, order, f_val))
        if pos:
            l_xi = min(pos)
            c = by_ell[l_xi]
            if is_zero_class:
                lead_coeff = c * 2.0 ** l_xi / math.factorial(l_xi - 1)
            else:
                lead_coeff = -c * xi * 2.0 ** l_xi / math.factorial(l_xi - 1)
            logs.append(LogEntry(xi, l_xi, lead_coeff))

    return SingularityReport(
        j0=lead.j0, q0=S.q0, log_branch_coeff_at_0=coeff0,
        poles=tuple(poles), logs=tuple(logs),
        truncation=(float(N), m_eff), warnings=tuple(warnings))


def verify_logint(c: float, t_abs: float, s: float) -> tuple[float, float, float]:
    """Numeric check of the scaled-log integral identity

        int_t^inf x^(-2s-1) / (c - log x) dx
            = e^(-2sc) log s + e^(-2sc) (g + log(2 (log t - c))) + O(s),

    with g Euler's constant.  Left side by quadrature (after u = log x - c,
    with an analytic tail bound), right side from the closed form; returns
    (lhs, rhs, |lhs - rhs|), the residual being O(s)."""
    c = float(c)
    t_abs = float(t_abs)
    s = float(s)
    if not 0.0 < s <= 0.05:
        raise InputError("s must lie in (0, 0.05]")
    u0 = math.log(t_abs) - c
    if not u0 > 0.0:
        raise InputError("requires log(t_abs) > c")
    upper = u0 + 25.0 / s
    val, quad_err = quad(lambda u: math.exp(-2.0 * s * u) / u, u0, upper,
                         limit=400, epsabs=1e-12, epsrel=1e-12)
    tail_bound = math.exp(-2.0 * s * upper) / (2.0 * s * upper)
    if tail_bound > 1e-12 * max(abs(val), 1.0) or quad_err > 1e-9:
        raise InputError("quadrature window too small for the requested s")
    lhs = -math.exp(-2.0 * s * c) * val
    rhs = math.exp(-2.0 * s * c) * (math.log(s) + EULER_GAMMA + math.log(2.0 * u0))
    return lhs, rhs, abs(lhs - rhs)
