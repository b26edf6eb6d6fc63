"""Base spectrum and boundary-pair model.

A problem instance is a radius R, a multiplicity q0 of the borderline
half-integer channel, and exponents nu_j in (0, 1) for the remaining q1
channels (q = q0 + q1 >= 1).  A self-adjoint boundary choice is a pair of
q x q complex matrices (A, B) with

* rank [A B] = q, and
* A' B* Hermitian, where A' is A with its first q0 columns negated.

Only the row space of [A B] matters: (U A, U B) cuts out the same subspace
for any invertible U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InvalidLagrangianError, SpectrumRangeError
from .special_functions import tau_from_nu

RANK_RTOL = 1e-10
HERMITICITY_RTOL = 1e-10
TAU_CONSISTENCY_RTOL = 1e-14
LAMBDA_NU_AGREEMENT = 1e-12


@dataclass(frozen=True)
class BaseSpectrum:
    """Everything the cone contributes: R, q0, and the exponent list."""

    R: float
    q0: int
    nus: tuple[float, ...]
    taus: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "R", float(self.R))
        object.__setattr__(self, "nus", tuple(float(v) for v in self.nus))
        if not self.R > 0.0:
            raise InputError("R must be positive")
        if int(self.q0) != self.q0 or self.q0 < 0:
            raise InputError("q0 must be a nonnegative integer")
        object.__setattr__(self, "q0", int(self.q0))
        for v in self.nus:
            if not 0.0 < v < 1.0:
                raise InputError(f"nu = {v} outside (0, 1)")
        if self.q < 1:
            raise InputError("q = q0 + q1 must be at least 1")
        computed = tuple(tau_from_nu(v) for v in self.nus)
        if self.taus:
            given = tuple(float(t) for t in self.taus)
            if len(given) != len(computed):
                raise InputError("taus length does not match nus")
            for g, c in zip(given, computed):
                if abs(g - c) > TAU_CONSISTENCY_RTOL * abs(c):
                    raise InputError(
                        f"stored tau {g!r} disagrees with recomputed {c!r}")
        object.__setattr__(self, "taus", computed)

    @property
    def q1(self) -> int:
        return len(self.nus)

    @property
    def q(self) -> int:
        return self.q0 + len(self.nus)


@dataclass(frozen=True)
class ValidationReport:
    is_lagrangian: bool
    rank_defect: int
    hermiticity_residual: float
    messages: tuple[str, ...] = ()


def validate_lagrangian(A, B, q0: int) -> ValidationReport:
    """Check that (A, B) cuts out a boundary subspace: full numerical rank
    of [A B] and Hermiticity of A' B* (first q0 columns of A negated)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("A must be square")
    if B.shape != A.shape:
        raise InputError("A and B must have identical shape")
    q = A.shape[0]
    if q < 1:
        raise InputError("matrices must be at least 1 x 1")
    if not 0 <= q0 <= q:
        raise InputError(f"q0 = {q0} outside 0..{q}")

    sv = np.linalg.svd(np.hstack([A, B]), compute_uv=False)
    smax = float(sv[0]) if sv.size else 0.0
    if smax == 0.0:
        defect = q
    else:
        defect = int(np.sum(sv <= RANK_RTOL * smax))

    a_prime = A.copy()
    a_prime[:, :q0] *= -1.0
    h = a_prime @ B.conj().T
    residual = float(np.max(np.abs(h - h.conj().T)))
    scale = float(np.max(np.abs(A), initial=0.0) * np.max(np.abs(B), initial=0.0))
    tol = HERMITICITY_RTOL * (1.0 + scale)

    messages = []
    if defect:
        messages.append(f"[A B] is rank deficient by {defect}")
    if residual > tol:
        messages.append(
            f"A'B* deviates from Hermitian by {residual:.3e} (tolerance {tol:.3e})")
    return ValidationReport(
        is_lagrangian=(defect == 0 and residual <= tol),
        rank_defect=defect,
        hermiticity_residual=residual,
        messages=tuple(messages),
    )


@dataclass(frozen=True)
class Lagrangian:
    """A validated boundary pair.  Construction fails unless (A, B) passes
    ``validate_lagrangian``; the stored arrays are read-only."""

    A: np.ndarray
    B: np.ndarray
    q0: int

    def __post_init__(self):
        a = np.array(self.A, dtype=complex)
        b = np.array(self.B, dtype=complex)
        report = validate_lagrangian(a, b, self.q0)
        if not report.is_lagrangian:
            raise InvalidLagrangianError("; ".join(report.messages) or "invalid pair")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "q0", int(self.q0))

    @property
    def q(self) -> int:
        return self.A.shape[0]

    @property
    def q1(self) -> int:
        return self.q - self.q0


def make_friedrichs(q0: int, q1: int) -> Lagrangian:
    """A = 0, B = Id."""
    q = q0 + q1
    if q < 1:
        raise InputError("q0 + q1 must be at least 1")
    return Lagrangian(A=np.zeros((q, q), dtype=complex),
                      B=np.eye(q, dtype=complex), q0=q0)


def make_neumann(q0: int, q1: int) -> Lagrangian:
    """Diagonal pair: A carries ones on the q1 block, B on the q0 block."""
    q = q0 + q1
    if q < 1:
        raise InputError("q0 + q1 must be at least 1")
    a = np.zeros(q)
    a[q0:] = 1.0
    b = np.zeros(q)
    b[:q0] = 1.0
    return Lagrangian(A=np.diag(a).astype(complex),
                      B=np.diag(b).astype(complex), q0=q0)


def make_scale_invariant(mask, q0: int) -> Lagrangian:
    """B = diag(mask), A = Id - B, with the first q0 mask entries forced 1."""
    mask = [int(m) for m in mask]
    q = len(mask)
    if q < 1:
        raise InputError("mask must be nonempty")
    if any(m not in (0, 1) for m in mask):
        raise InputError("mask entries must be 0 or 1")
    if not 0 <= q0 <= q:
        raise InputError(f"q0 = {q0} outside 0..{q}")
    if any(m != 1 for m in mask[:q0]):
        raise InputError("the first q0 mask entries must be 1")
    b = np.diag(np.array(mask, dtype=float)).astype(complex)
    a = np.eye(q, dtype=complex) - b
    return Lagrangian(A=a, B=b, q0=q0)


def nu_tau_from_lambda(lam: float) -> tuple[float, float]:
    """Map a base eigenvalue in (-1/4, 3/4) to (nu, tau)."""
    lam = float(lam)
    if lam == -0.25:
        raise SpectrumRangeError(
            "lambda = -1/4 belongs to the q0 block", code="q0_block")
    if lam < -0.25:
        raise SpectrumRangeError(
            f"lambda = {lam} below -1/4 (operator unbounded)", code="below_range")
    if lam >= 0.75:
        raise SpectrumRangeError(
            f"lambda = {lam} is limit point, no extension freedom", code="limit_point")
    nu = math.sqrt(lam + 0.25)
    return nu, tau_from_nu(nu)
