"""Shared fixtures: seeded RNG, high-precision reference oracle, and
generators for valid boundary pairs."""

import os

import numpy as np
import pytest

from conedet.extension_model import BaseSpectrum, Lagrangian


def _seed() -> int:
    return int(os.environ.get("CONEDET_SEED", "20260810"))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(_seed())


@pytest.fixture(scope="session")
def mp_ref():
    """mpmath in extended precision, the reference oracle for all series
    primitives.  Computed once per session."""
    import mpmath

    mpmath.mp.dps = 40
    return mpmath


def random_valid_pair(rng: np.random.Generator, q0: int, q1: int, *, real: bool = False):
    """A random valid boundary pair: A = D H with H Hermitian and B = Id is
    always valid (D negates the first q0 columns); optionally left-multiplied
    by a random invertible U, which preserves the cut-out subspace."""
    q = q0 + q1
    if real:
        h = rng.standard_normal((q, q))
        h = 0.5 * (h + h.T)
    else:
        h = rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q))
        h = 0.5 * (h + h.conj().T)
    d = np.ones(q)
    d[:q0] = -1.0
    a = d[None, :] * h  # columns scaled: (D H) with D on the column side
    b = np.eye(q, dtype=complex)
    u = rng.standard_normal((q, q)) + (0 if real else 1j * rng.standard_normal((q, q)))
    u += 2.0 * q * np.eye(q)  # keep U well away from singular
    return u @ a, u @ b


def random_spectrum(rng: np.random.Generator, q0: int, q1: int, R: float | None = None) -> BaseSpectrum:
    R = float(R if R is not None else rng.uniform(0.4, 2.5))
    nus = tuple(float(v) for v in rng.uniform(0.08, 0.92, size=q1))
    return BaseSpectrum(R=R, q0=q0, nus=nus)


def random_extension(rng: np.random.Generator, q0: int, q1: int, *, real: bool = False,
                     R: float | None = None) -> tuple[Lagrangian, BaseSpectrum]:
    a, b = random_valid_pair(rng, q0, q1, real=real)
    return Lagrangian(A=a, B=b, q0=q0), random_spectrum(rng, q0, q1, R=R)
