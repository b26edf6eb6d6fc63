"""Boundary-pair validation, canonical constructors, spectrum mapping."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conedet.errors import InputError, InvalidLagrangianError, SpectrumRangeError
from conedet.extension_model import (
    BaseSpectrum,
    Lagrangian,
    make_friedrichs,
    make_neumann,
    make_scale_invariant,
    nu_tau_from_lambda,
    validate_lagrangian,
)
from conftest import random_valid_pair


def test_friedrichs_is_valid():
    rep = validate_lagrangian(np.zeros((3, 3)), np.eye(3), q0=1)
    assert rep.is_lagrangian
    assert rep.rank_defect == 0
    assert rep.hermiticity_residual == 0.0


def test_identity_pair_valid():
    rep = validate_lagrangian(np.eye(2), np.eye(2), q0=0)
    assert rep.is_lagrangian


def test_anti_hermitian_pair_invalid():
    rep = validate_lagrangian(np.eye(2), 1j * np.eye(2), q0=0)
    assert not rep.is_lagrangian
    assert rep.rank_defect == 0
    assert abs(rep.hermiticity_residual - 2.0) <= 1e-14
    assert rep.messages


def test_dimension_mismatch_rejected():
    with pytest.raises(InputError):
        validate_lagrangian(np.eye(2), np.eye(3), q0=0)
    with pytest.raises(InputError):
        validate_lagrangian(np.zeros((2, 3)), np.zeros((2, 3)), q0=0)
    with pytest.raises(InputError):
        validate_lagrangian(np.eye(2), np.eye(2), q0=3)


def test_rank_deficiency_detected():
    rep = validate_lagrangian(np.zeros((2, 2)), np.diag([1.0, 0.0]), q0=0)
    assert not rep.is_lagrangian
    assert rep.rank_defect == 1


def test_make_friedrichs_examples():
    for q0, q1 in ((1, 0), (0, 1)):
        ext = make_friedrichs(q0, q1)
        assert np.array_equal(ext.A, np.zeros((1, 1)))
        assert np.array_equal(ext.B, np.eye(1))
    ext = make_friedrichs(2, 3)
    assert np.array_equal(ext.A, np.zeros((5, 5)))
    assert np.array_equal(ext.B, np.eye(5))
    with pytest.raises(InputError):
        make_friedrichs(0, 0)


def test_make_neumann_examples():
    assert np.array_equal(make_neumann(1, 0).A, np.zeros((1, 1)))
    assert np.array_equal(make_neumann(1, 0).B, np.eye(1))
    assert np.array_equal(make_neumann(0, 1).A, np.eye(1))
    assert np.array_equal(make_neumann(0, 1).B, np.zeros((1, 1)))
    ext = make_neumann(1, 1)
    assert np.array_equal(ext.A, np.diag([0.0, 1.0]))
    assert np.array_equal(ext.B, np.diag([1.0, 0.0]))


def test_make_scale_invariant():
    ext = make_scale_invariant((1, 0), q0=1)
    assert np.array_equal(ext.A, np.diag([0.0, 1.0]))
    assert np.array_equal(ext.B, np.diag([1.0, 0.0]))
    ext = make_scale_invariant((1, 1), q0=1)
    assert np.array_equal(ext.A, np.zeros((2, 2)))
    assert np.array_equal(ext.B, np.eye(2))
    ext = make_scale_invariant((0, 1), q0=0)
    assert np.array_equal(ext.A, np.diag([1.0, 0.0]))
    assert np.array_equal(ext.B, np.diag([0.0, 1.0]))
    with pytest.raises(InputError):
        make_scale_invariant((0, 1), q0=1)


def test_canonical_extensions_all_validate():
    for q0 in range(3):
        for q1 in range(3):
            if q0 + q1 == 0:
                continue
            for ext in (make_friedrichs(q0, q1), make_neumann(q0, q1)):
                rep = validate_lagrangian(ext.A, ext.B, ext.q0)
                assert rep.is_lagrangian


def test_row_space_invariance(rng):
    for _ in range(10):
        q0, q1 = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        if q0 + q1 == 0:
            q1 = 1
        a, b = random_valid_pair(rng, q0, q1)
        q = q0 + q1
        u = rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q))
        u += 3.0 * np.eye(q)
        base = validate_lagrangian(a, b, q0)
        moved = validate_lagrangian(u @ a, u @ b, q0)
        assert base.is_lagrangian
        assert moved.is_lagrangian
        scale = float(np.max(np.abs(u @ a)) * np.max(np.abs(u @ b)))
        assert moved.hermiticity_residual <= 1e-10 * (1.0 + scale)


def test_lagrangian_constructor_enforces_validity():
    with pytest.raises(InvalidLagrangianError):
        Lagrangian(A=np.eye(2), B=1j * np.eye(2), q0=0)
    ext = make_friedrichs(1, 1)
    with pytest.raises(ValueError):
        ext.A[0, 0] = 5.0  # arrays are frozen


def test_nu_tau_from_lambda_examples():
    nu, tau = nu_tau_from_lambda(0.0)
    assert nu == 0.5
    assert abs(tau - 1.0) <= 1e-14
    with pytest.raises(SpectrumRangeError) as e1:
        nu_tau_from_lambda(-0.25)
    assert e1.value.code == "q0_block"
    with pytest.raises(SpectrumRangeError) as e2:
        nu_tau_from_lambda(0.75)
    assert e2.value.code == "limit_point"
    with pytest.raises(SpectrumRangeError) as e3:
        nu_tau_from_lambda(-0.3)
    assert e3.value.code == "below_range"


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-0.2499, max_value=0.7499),
       st.floats(min_value=-0.2499, max_value=0.7499))
def test_nu_monotone_in_lambda(l1, l2):
    lo, hi = sorted((l1, l2))
    nu_lo, _ = nu_tau_from_lambda(lo)
    nu_hi, _ = nu_tau_from_lambda(hi)
    assert nu_lo <= nu_hi
    if hi - lo > 1e-12:
        assert nu_lo < nu_hi


def test_base_spectrum_invariants():
    s = BaseSpectrum(R=1.0, q0=1, nus=(0.5, 0.25))
    assert s.q == 3 and s.q1 == 2
    assert abs(s.taus[0] - 1.0) <= 1e-14
    # stored taus are checked against recomputation
    BaseSpectrum(R=1.0, q0=0, nus=(0.5,), taus=(1.0,))
    with pytest.raises(InputError):
        BaseSpectrum(R=1.0, q0=0, nus=(0.5,), taus=(1.001,))
    with pytest.raises(InputError):
        BaseSpectrum(R=0.0, q0=1, nus=())
    with pytest.raises(InputError):
        BaseSpectrum(R=1.0, q0=0, nus=())
    with pytest.raises(InputError):
        BaseSpectrum(R=1.0, q0=0, nus=(1.0,))
