"""Exact exponent-polynomial arithmetic, the boundary determinant polynomial,
and leading-data extraction."""

import itertools
import math

import numpy as np
import pytest

from conedet.errors import DegenerateDeterminantError, InputError
from conedet.expo_poly import (
    ExpoKey,
    ExpoPoly,
    RemainderTerm,
    build_p,
    build_p_full,
    leading_data,
    poly_det,
)
from conedet.extension_model import (
    BaseSpectrum,
    Lagrangian,
    make_friedrichs,
    make_neumann,
    make_scale_invariant,
)
from conftest import random_extension


def spectrum(q0=1, nus=(0.5,), R=1.0):
    return BaseSpectrum(R=R, q0=q0, nus=tuple(nus))


def random_poly(rng, S, n_terms=4, jmax=3):
    p = ExpoPoly.zero(S)
    for _ in range(n_terms):
        j = int(rng.integers(0, jmax + 1))
        m = tuple(int(v) for v in rng.integers(0, 3, size=S.q1))
        c = complex(rng.standard_normal(), rng.standard_normal())
        p = p + ExpoPoly.monomial(c, j, m, S)
    return p


# ---------------------------------------------------------------- ring


def test_zero_pruning_and_equality():
    S = spectrum()
    p = ExpoPoly.monomial(2.0, 1, (0,), S)
    q = ExpoPoly.monomial(-2.0, 1, (0,), S)
    assert (p + q).is_zero()
    assert ExpoPoly.constant(0.0, S).is_zero()


def test_ring_laws(rng):
    S = spectrum(q0=1, nus=(0.3, 0.5))
    for _ in range(15):
        p = random_poly(rng, S)
        r = random_poly(rng, S)
        s = random_poly(rng, S)
        left = (p + r) * s
        right = p * s + r * s
        assert left.terms.keys() == right.terms.keys()
        for key in left.terms:
            assert abs(left.terms[key] - right.terms[key]) <= 1e-12 * (
                1.0 + abs(left.terms[key]))
        assert (p * r).terms == (r * p).terms
        assert ((p * r) * s).terms.keys() == (p * (r * s)).terms.keys()


def test_mixed_spectra_rejected(rng):
    p = random_poly(rng, spectrum())
    q = random_poly(rng, spectrum(nus=(0.25,)))
    with pytest.raises(InputError):
        p + q


def test_negative_multi_index_rejected():
    S = spectrum()
    with pytest.raises(InputError):
        ExpoPoly.monomial(1.0, 0, (-1,), S)


# ---------------------------------------------------------------- poly_det


def test_det_base_cases(rng):
    S = spectrum()
    p = random_poly(rng, S)
    assert poly_det([[p]]).terms == p.terms
    p1, p2 = random_poly(rng, S), random_poly(rng, S)
    zero = ExpoPoly.zero(S)
    d = poly_det([[p1, zero], [zero, p2]])
    assert d.terms == (p1 * p2).terms


def test_det_2x2_vs_leibniz(rng):
    S = spectrum(q0=2, nus=(0.5, 0.8))
    for _ in range(10):
        a, b, c, d = (random_poly(rng, S, n_terms=2) for _ in range(4))
        det = poly_det([[a, b], [c, d]])
        leib = a * d - b * c
        assert det.terms.keys() == leib.terms.keys()
        for key in det.terms:
            assert abs(det.terms[key] - leib.terms[key]) <= 1e-12 * (
                1.0 + abs(leib.terms[key]))


def test_det_3x3_vs_leibniz(rng):
    S = spectrum(q0=1, nus=(0.4,))
    M = [[random_poly(rng, S, n_terms=2, jmax=2) for _ in range(3)] for _ in range(3)]
    det = poly_det(M)
    leib = ExpoPoly.zero(S)
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ExpoPoly.constant(sign, S)
        for i in range(3):
            term = term * M[i][perm[i]]
        leib = leib + term
    assert det.terms.keys() == leib.terms.keys()
    for key in det.terms:
        assert abs(det.terms[key] - leib.terms[key]) <= 1e-11 * (
            1.0 + abs(leib.terms[key]))


def test_det_rejects_nonsquare(rng):
    S = spectrum()
    p = random_poly(rng, S)
    with pytest.raises(InputError):
        poly_det([[p, p]])


# ---------------------------------------------------------------- build_p


def test_build_p_neumann():
    for q0, q1 in ((1, 0), (2, 1), (1, 2), (0, 2)):
        S = spectrum(q0=q0, nus=tuple(0.2 + 0.2 * i for i in range(q1)))
        p = build_p(make_neumann(q0, q1), S)
        assert p.terms == {ExpoKey(q0, (0,) * q1): complex((-1.0) ** q0)}


def test_build_p_friedrichs_single_nu():
    S = spectrum(q0=0, nus=(0.3,))
    p = build_p(make_friedrichs(0, 1), S)
    assert set(p.terms) == {ExpoKey(0, (1,))}
    assert abs(p.terms[ExpoKey(0, (1,))] + S.taus[0]) <= 1e-15 * S.taus[0]


def test_build_p_one_dimensional():
    S = spectrum(q0=1, nus=())
    alpha, beta = 0.8, -0.6
    L = Lagrangian(A=np.array([[alpha]]), B=np.array([[beta]]), q0=1)
    p = build_p(L, S)
    assert p.terms == {ExpoKey(0, ()): complex(alpha), ExpoKey(1, ()): complex(-beta)}


def test_schur_vs_full_canonical_and_random(rng):
    cases = []
    for q0, q1 in ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)):
        nus = tuple(float(v) for v in rng.uniform(0.1, 0.9, size=q1))
        S = BaseSpectrum(R=1.3, q0=q0, nus=nus)
        cases.append((make_friedrichs(q0, q1), S))
        cases.append((make_neumann(q0, q1), S))
        cases.append(random_extension(rng, q0, q1))
    for L, S in cases:
        fast = build_p(L, S)
        full = build_p_full(L, S)
        assert fast.terms.keys() == full.terms.keys()
        for key in fast.terms:
            assert abs(fast.terms[key] - full.terms[key]) <= 1e-12 * (
                1.0 + abs(full.terms[key]))


def test_numeric_evaluation_consistency(rng):
    for _ in range(8):
        q0, q1 = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        if q0 + q1 == 0:
            q0 = 1
        L, S = random_extension(rng, q0, q1)
        p = build_p(L, S)
        x0 = complex(rng.standard_normal(), rng.standard_normal())
        y0 = float(rng.uniform(0.2, 2.0))
        q = S.q
        big = np.zeros((2 * q, 2 * q), dtype=complex)
        big[:q, :q] = L.A
        big[:q, q:] = L.B
        big[q:, q:] = np.eye(q)
        for k in range(q):
            big[q + k, k] = x0 if k < q0 else S.taus[k - q0] * y0 ** (2 * S.nus[k - q0])
        ref = np.linalg.det(big)
        val = p.evaluate(x0, y0)
        assert abs(val - ref) <= 1e-10 * (1.0 + abs(ref))


# ---------------------------------------------------------------- leading


def test_leading_neumann_monomial():
    for q0 in (1, 2):
        S = spectrum(q0=q0, nus=())
        p = build_p(make_neumann(q0, 0), S)
        lead = leading_data(p, q0)
        assert lead.j0 == q0
        assert lead.alpha0_value == 0.0
        assert lead.a_j0alpha0 == complex((-1.0) ** q0)
        assert lead.remainder_terms == ()


def test_leading_linear_polynomial():
    S = spectrum(q0=1, nus=())
    alpha, beta = 2.0, 3.0
    L = Lagrangian(A=np.array([[alpha]]), B=np.array([[beta]]), q0=1)
    lead = leading_data(build_p(L, S), 1)
    assert lead.j0 == 0
    assert lead.a_j0alpha0 == complex(alpha)
    assert lead.remainder_terms == (RemainderTerm(1, (), complex(-beta / alpha)),)


def test_leading_single_y_monomial():
    S = spectrum(q0=0, nus=(0.4,))
    p = build_p(make_friedrichs(0, 1), S)
    lead = leading_data(p, 0)
    assert lead.j0 == 0
    assert abs(lead.alpha0_value - 0.4) <= 1e-15
    assert abs(lead.a_j0alpha0 + S.taus[0]) <= 1e-14
    assert lead.remainder_terms == ()


def test_leading_orders_by_value_not_key():
    # two exponent values nu1 < nu2: the remainder key relative to the lead
    # has a negative component but positive numeric value
    S = spectrum(q0=0, nus=(0.3, 0.7))
    p = (ExpoPoly.monomial(2.0, 0, (0, 1), S)
         + ExpoPoly.monomial(4.0, 0, (1, 0), S))
    lead = leading_data(p, 0)
    assert lead.alpha0_key == (1, 0)
    assert abs(lead.alpha0_value - 0.3) <= 1e-15
    assert lead.a_j0alpha0 == 4.0 + 0j
    (term,) = lead.remainder_terms
    assert term.beta_key == (-1, 1)
    assert abs(term.b - 0.5) <= 1e-15


def test_leading_merges_coinciding_values():
    # repeated exponent: distinct keys, same numeric value, coefficients sum
    S = spectrum(q0=0, nus=(0.5, 0.5))
    p = (ExpoPoly.monomial(1.0, 0, (1, 0), S)
         + ExpoPoly.monomial(2.0, 0, (0, 1), S)
         + ExpoPoly.monomial(5.0, 1, (1, 1), S))
    lead = leading_data(p, 0)
    assert lead.j0 == 0
    assert lead.a_j0alpha0 == 3.0 + 0j
    assert abs(lead.alpha0_value - 0.5) <= 1e-15
    assert len(lead.remainder_terms) == 1
    assert lead.remainder_terms[0].k == 1


def test_leading_drops_exactly_canceling_groups():
    S = spectrum(q0=0, nus=(0.5, 0.5))
    p = (ExpoPoly.monomial(1.0, 0, (1, 0), S)
         + ExpoPoly.monomial(-1.0, 0, (0, 1), S)
         + ExpoPoly.monomial(3.0, 0, (1, 1), S))
    lead = leading_data(p, 0)
    # the value class at 0.5 cancels; the lead is the (1,1) term at value 1.0
    assert abs(lead.alpha0_value - 1.0) <= 1e-15
    assert lead.a_j0alpha0 == 3.0 + 0j
    assert lead.remainder_terms == ()


def test_degenerate_polynomial_rejected():
    S = spectrum()
    with pytest.raises(DegenerateDeterminantError):
        leading_data(ExpoPoly.zero(S), 1)
    S2 = spectrum(q0=0, nus=(0.5, 0.5))
    p = (ExpoPoly.monomial(1.0, 0, (1, 0), S2)
         + ExpoPoly.monomial(-1.0, 0, (0, 1), S2))
    with pytest.raises(DegenerateDeterminantError):
        leading_data(p, 0)
