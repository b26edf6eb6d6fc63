"""Exact sparse polynomials in x and y with y-exponents 2 * (m . nu).

A term is keyed by (j, m): j the integer power of x, m a multi-index of
nonnegative integers over the exponent basis nu_1 .. nu_q1, so the monomial
is x^j * y^(2 * sum_i m_i nu_i).  Exponent arithmetic is exact (integer
tuples); coefficients are complex doubles.  Exact zero coefficients are
never stored; numerically coinciding exponent values are kept distinct here
and merged downstream by value.

``build_p`` produces the boundary determinant polynomial

    p(x, y) = det [[A, B], [D(x, y), Id_q]],
    D = diag(x Id_q0, tau_1 y^(2 nu_1), ..., tau_q1 y^(2 nu_q1)),

through the Schur reduction det(A - B D) (regression-tested against the full
2q x 2q cofactor determinant, available as ``build_p_full``).

``poly_det`` is cofactor expansion with memoization on the remaining column
subset; cost grows exponentially with the matrix size, which is fine for the
intended q <= ~8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateDeterminantError, InputError
from .extension_model import BaseSpectrum, Lagrangian

VALUE_MERGE_RTOL = 1e-12


class ExpoKey(NamedTuple):
    j: int
    m: tuple[int, ...]


class RemainderTerm(NamedTuple):
    k: int
    beta_key: tuple[int, ...]
    b: complex


def alpha_value(m: Sequence[int], nus: Sequence[float]) -> float:
    return float(sum(mi * vi for mi, vi in zip(m, nus)))


def merge_tol(value: float) -> float:
    return VALUE_MERGE_RTOL * (1.0 + abs(value))


@dataclass(frozen=True)
class ExpoPoly:
    terms: dict[ExpoKey, complex]
    spectrum: BaseSpectrum

    def __post_init__(self):
        q1 = self.spectrum.q1
        for key in self.terms:
            if len(key.m) != q1:
                raise InputError("multi-index length does not match spectrum")
            if any(mi < 0 for mi in key.m):
                raise InputError("polynomial multi-indices must be nonnegative")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, spectrum: BaseSpectrum) -> "ExpoPoly":
        return cls({}, spectrum)

    @classmethod
    def constant(cls, c: complex, spectrum: BaseSpectrum) -> "ExpoPoly":
        c = complex(c)
        if c == 0:
            return cls.zero(spectrum)
        return cls({ExpoKey(0, (0,) * spectrum.q1): c}, spectrum)

    @classmethod
    def monomial(cls, c: complex, j: int, m: Sequence[int],
                 spectrum: BaseSpectrum) -> "ExpoPoly":
        c = complex(c)
        if c == 0:
            return cls.zero(spectrum)
        return cls({ExpoKey(int(j), tuple(int(v) for v in m)): c}, spectrum)

    # -- ring operations ---------------------------------------------

    def _check_same(self, other: "ExpoPoly"):
        if self.spectrum != other.spectrum:
            raise InputError("operands built over different spectra")

    def __add__(self, other: "ExpoPoly") -> "ExpoPoly":
        self._check_same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0j) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return ExpoPoly(out, self.spectrum)

    def __neg__(self) -> "ExpoPoly":
        return ExpoPoly({k: -c for k, c in self.terms.items()}, self.spectrum)

    def __sub__(self, other: "ExpoPoly") -> "ExpoPoly":
        return self + (-other)

    def __mul__(self, other: "ExpoPoly") -> "ExpoPoly":
        self._check_same(other)
        out: dict[ExpoKey, complex] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = ExpoKey(k1.j + k2.j,
                              tuple(a + b for a, b in zip(k1.m, k2.m)))
                s = out.get(key, 0j) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return ExpoPoly(out, self.spectrum)

    def scaled(self, c: complex) -> "ExpoPoly":
        c = complex(c)
        if c == 0:
            return ExpoPoly.zero(self.spectrum)
        return ExpoPoly({k: c * v for k, v in self.terms.items()}, self.spectrum)

    # -- queries -----------------------------------------------------

    def alpha(self, key: ExpoKey) -> float:
        return alpha_value(key.m, self.spectrum.nus)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, x: complex, y: float) -> complex:
        """Numeric value at (x, y), y > 0 real."""
        if not y > 0:
            raise InputError("evaluation requires y > 0")
        ly = math.log(y)
        total = 0j
        for key, c in self.terms.items():
            total += c * complex(x) ** key.j * math.exp(2.0 * self.alpha(key) * ly)
        return total


def poly_det(M: Sequence[Sequence[ExpoPoly]]) -> ExpoPoly:
    """Determinant over the ExpoPoly ring (cofactor expansion, memoized on
    the surviving column subset)."""
    n = len(M)
    if n == 0:
        raise InputError("empty matrix")
    for row in M:
        if len(row) != n:
            raise InputError("matrix is not square")
    spectrum = M[0][0].spectrum
    for row in M:
        for ent in row:
            if ent.spectrum != spectrum:
                raise InputError("entries built over different spectra")
    one = ExpoPoly.constant(1.0, spectrum)
    memo: dict[tuple[int, ...], ExpoPoly] = {(): one}

    def minor(cols: tuple[int, ...]) -> ExpoPoly:
        cached = memo.get(cols)
        if cached is not None:
            return cached
        r = n - len(cols)
        acc = ExpoPoly.zero(spectrum)
        for i, c in enumerate(cols):
            ent = M[r][c]
            if ent.is_zero():
                continue
            sub = minor(cols[:i] + cols[i + 1:])
            term = ent * sub
            acc = acc + (term if i % 2 == 0 else -term)
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def _diag_entry(k: int, S: BaseSpectrum) -> ExpoPoly:
    # k-th diagonal entry of D(x, y)
    if k < S.q0:
        return ExpoPoly.monomial(1.0, 1, (0,) * S.q1, S)
    i = k - S.q0
    m = [0] * S.q1
    m[i] = 1
    return ExpoPoly.monomial(S.taus[i], 0, m, S)


def _check_dims(L: Lagrangian, S: BaseSpectrum):
    if L.q != S.q or L.q0 != S.q0:
        raise InputError("boundary pair dimensions do not match the spectrum")


def build_p(L: Lagrangian, S: BaseSpectrum) -> ExpoPoly:
    """The boundary determinant polynomial, via det(A - B D(x, y))."""
    _check_dims(L, S)
    q = S.q
    d = [_diag_entry(k, S) for k in range(q)]
    rows = []
    for i in range(q):
        row = []
        for k in range(q):
            ent = ExpoPoly.constant(L.A[i, k], S)
            if L.B[i, k] != 0:
                ent = ent - d[k].scaled(L.B[i, k])
            row.append(ent)
        rows.append(row)
    return poly_det(rows)


def build_p_full(L: Lagrangian, S: BaseSpectrum) -> ExpoPoly:
    """Same polynomial from the literal 2q x 2q block determinant
    [[A, B], [D, Id]]; exponentially slower, kept as the regression route."""
    _check_dims(L, S)
    q = S.q
    zero = ExpoPoly.zero(S)
    one = ExpoPoly.constant(1.0, S)
    rows = []
    for i in range(q):
        rows.append([ExpoPoly.constant(L.A[i, k], S) for k in range(q)]
                    + [ExpoPoly.constant(L.B[i, k], S) for k in range(q)])
    for i in range(q):
        row = [zero] * (2 * q)
        row[i] = _diag_entry(i, S)
        row[q + i] = one
        rows.append(row)
    return poly_det(rows)


@dataclass(frozen=True)
class LeadingData:
    """Factored form of a nonzero p: the minimal exponent pair (j0, alpha0),
    its coefficient, and the normalized remainder

        p = a_j0alpha0 x^j0 y^(2 alpha0) (1 + sum b_kbeta x^k y^(2 beta)),

    with remainder keys relative to (j0, alpha0); beta multi-indices may have
    negative components but nonnegative numeric value."""

    j0: int
    alpha0_key: tuple[int, ...]
    alpha0_value: float
    a_j0alpha0: complex
    remainder_terms: tuple[RemainderTerm, ...]
    nus: tuple[float, ...]


def leading_data(p: ExpoPoly, q0: int) -> LeadingData:
    """Extract (j0, alpha0, a_j0alpha0) and the remainder from p.

    Ordering is by numeric exponent value: multi-indices whose values agree
    within the merge tolerance count as the same alpha, and their
    coefficients aggregate when selecting the leading term.  Key groups
    whose aggregate cancels to exactly zero contribute nothing at value
    level and are dropped; a p that cancels everywhere is degenerate."""
    if p.is_zero():
        raise DegenerateDeterminantError("p vanishes identically")
    nus = p.spectrum.nus

    items = sorted(((p.alpha(k), k, c) for k, c in p.terms.items()),
                   key=lambda t: (t[0], t[1].j, t[1].m))
    # group by numerically coinciding alpha value (gap to the class start)
    classes: list[list[tuple[float, ExpoKey, complex]]] = []
    for item in items:
        if classes and item[0] - classes[-1][0][0] <= merge_tol(classes[-1][0][0]):
            classes[-1].append(item)
        else:
            classes.append([item])

    def j_groups(cls):
        by_j: dict[int, list[tuple[ExpoKey, complex]]] = {}
        for _, key, c in cls:
            by_j.setdefault(key.j, []).append((key, c))
        return by_j

    lead_idx = None
    j0 = None
    a0 = 0j
    for idx, cls in enumerate(classes):
        nonzero = sorted(j for j, members in j_groups(cls).items()
                         if sum(c for _, c in members) != 0)
        if nonzero:
            lead_idx = idx
            j0 = nonzero[0]
            a0 = sum(c for _, c in j_groups(cls)[j0])
            break
    if lead_idx is None:
        raise DegenerateDeterminantError(
            "all coefficients cancel at value level; no leading term")

    m0 = min(key.m for key, _ in j_groups(classes[lead_idx])[j0])
    alpha0 = alpha_value(m0, nus)

    remainder = []
    for idx, cls in enumerate(classes):
        for j, members in sorted(j_groups(cls).items()):
            if sum(c for _, c in members) == 0:
                continue  # value-level zero: no contribution
            if idx == lead_idx and j == j0:
                continue  # the leading term itself
            for key, c in members:
                beta_key = tuple(a - b for a, b in zip(key.m, m0))
                remainder.append(RemainderTerm(key.j - j0, beta_key, c / a0))
    remainder.sort(key=lambda t: (alpha_value(t.beta_key, nus), t.k, t.beta_key))

    for term in remainder:
        beta = alpha_value(term.beta_key, nus)
        if beta < -merge_tol(alpha0):
            raise DegenerateDeterminantError(
                "negative relative exponent; leading selection inconsistent")
        if abs(beta) <= merge_tol(alpha0) and term.k <= 0:
            raise DegenerateDeterminantError(
                "nonpositive x-power at the leading exponent value")

    return LeadingData(
        j0=int(j0),
        alpha0_key=m0,
        alpha0_value=alpha0,
        a_j0alpha0=a0,
        remainder_terms=tuple(remainder),
        nus=nus,
    )
