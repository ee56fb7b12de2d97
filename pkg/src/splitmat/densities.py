"""Closed-form eigenvalue statistics of the 2x2 split-Hermitian ensembles.

Every one-level density here is normalised so that the real branch integrates
to the probability of a fully real spectrum and the complex branch over the
plane integrates to its complement. The total density carries a point mass on
the real axis; it is represented by ``DensityValue.branch``, never numerically.

All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf, erfc, erfcx

from .errors import DomainError

GSCE = "GSCE"
GSQE = "GSQE"

REAL_BRANCH = "real-branch"
COMPLEX_BRANCH = "complex-branch"

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2 * math.pi)
SMALL_LAMBDA = 1e-3


@dataclass(frozen=True)
class DensityValue:
    value: float
    branch: str


@dataclass(frozen=True)
class SpacingConstant:
    """Squared mean of the unscaled GSQE spacing; rescales it to unit mean."""

    a: float = ((3 * math.sqrt(2) - math.asinh(1)) / ((2 * math.sqrt(2) - 1) * SQRT_PI)) ** 2


SPACING_A = SpacingConstant().a


def _check_ensemble(ensemble):
    if ensemble not in (GSCE, GSQE):
        raise DomainError(f"unknown ensemble {ensemble!r}")


def real_probability(ensemble: str) -> float:
    """Probability that a 2x2 matrix from the ensemble has two real eigenvalues."""
    _check_ensemble(ensemble)
    if ensemble == GSCE:
        return 1 / math.sqrt(2)
    return 1 - 1 / (2 * math.sqrt(2))


# -- split-complex ensemble ------------------------------------------------------


def jpdf_sc(lam1, lam2):
    """Joint eigenvalue density; inputs both real or complex conjugates."""
    l1 = np.asarray(lam1, dtype=complex)
    l2 = np.asarray(lam2, dtype=complex)
    both_real = (l1.imag == 0) & (l2.imag == 0)
    conjugate = np.isclose(l1, np.conj(l2), rtol=1e-12, atol=1e-14)
    if not np.all(both_real | conjugate):
        raise DomainError("eigenvalues must be both real or a conjugate pair")
    # l1^2 + l2^2 is real on both branches
    s2 = (l1 * l1 + l2 * l2).real
    im = np.abs(l1.imag)
    out = np.exp(-s2) * np.abs(l1 - l2) * erfc(2 * im) / (2 * SQRT_PI)
    return out if out.ndim else float(out)


def r1_real_sc(lam):
    lam = np.asarray(lam, dtype=float)
    out = lam * np.exp(-lam * lam) / 2 * erf(lam) + np.exp(-2 * lam * lam) / (2 * SQRT_PI)
    return out if out.ndim else float(out)


def r1_complex_sc(lam):
    lam = np.asarray(lam, dtype=complex)
    x, y = lam.real, np.abs(lam.imag)
    if np.any(y == 0):
        raise DomainError("complex-branch density needs Im(lambda) != 0")
    # exp(2 y^2) erfc(2 y) = exp(-2 y^2) erfcx(2 y) keeps large |y| finite
    out = 2 * y / SQRT_PI * np.exp(-2 * x * x - 2 * y * y) * erfcx(2 * y)
    return out if out.ndim else float(out)


# -- split-quaternionic ensemble -------------------------------------------------


def jpdf_real_sq(lam1, lam2):
    l1 = np.asarray(lam1, dtype=float)
    l2 = np.asarray(lam2, dtype=float)
    d = np.abs(l1 - l2)
    g = np.exp(-2 * (l1 * l1 + l2 * l2))
    # exp(-4 l1 l2) erfc(sqrt2 d) = g * erfcx(sqrt2 d)
    out = 2 / math.pi * d * d * g + d / SQRT_2PI * g * erfcx(math.sqrt(2) * d)
    return out if out.ndim else float(out)


def r1_real_sq(lam):
    lam = np.asarray(lam, dtype=float)
    x = lam * lam
    small = np.abs(lam) < SMALL_LAMBDA
    xs = np.where(small, 1.0, x)
    # (exp(-4x) - exp(-2x)) / (8x) without cancellation
    ratio = np.where(small, -0.25 + x / 4 - x * x / 6, np.expm1(-2 * xs) / (8 * xs))
    out = np.exp(-2 * x) * (ratio + 2 * x + 1) / SQRT_2PI
    return out if out.ndim else float(out)


def r1_complex_sq(lam):
    lam = np.asarray(lam, dtype=complex)
    x, y = lam.real, np.abs(lam.imag)
    if np.any(y == 0):
        raise DomainError("complex-branch density needs Im(lambda) != 0")
    out = 2 * math.sqrt(2 / math.pi) * y * np.exp(-4 * (x * x + y * y))
    return out if out.ndim else float(out)


# -- dispatch --------------------------------------------------------------------


def r1_real(ensemble, lam):
    _check_ensemble(ensemble)
    return r1_real_sc(lam) if ensemble == GSCE else r1_real_sq(lam)


def r1_complex(ensemble, lam):
    _check_ensemble(ensemble)
    return r1_complex_sc(lam) if ensemble == GSCE else r1_complex_sq(lam)


def total_density(ensemble, lam) -> DensityValue:
    """One-level density at a single point, tagged with its branch."""
    lam = complex(lam)
    if lam.imag == 0:
        return DensityValue(float(r1_real(ensemble, lam.real)), REAL_BRANCH)
    return DensityValue(float(r1_complex(ensemble, lam)), COMPLEX_BRANCH)


# -- level spacings --------------------------------------------------------------


def wigner_surmise(s):
    s = np.asarray(s, dtype=float)
    out = math.pi / 2 * s * np.exp(-math.pi / 4 * s * s)
    return out if out.ndim else float(out)


def _spacing_gsqe(s):
    a = SPACING_A
    out = (
        4
        * math.sqrt(2)
        / (2 * math.sqrt(2) - 1)
        * np.exp(-a * s * s)
        * (a**1.5 * s * s / SQRT_PI + a * s / (2 * math.sqrt(2)) * erfcx(math.sqrt(2 * a) * s))
    )
    return out


def spacing_pdf(ensemble, s):
    """Unit-mean density of the real-spectrum level spacing."""
    _check_ensemble(ensemble)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("spacing must be non-negative")
    out = wigner_surmise(s) if ensemble == GSCE else _spacing_gsqe(s)
    out = np.asarray(out)
    return out if out.ndim else float(out)


def spacing_cdf_gsce(s):
    s = np.asarray(s, dtype=float)
    out = -np.expm1(-math.pi / 4 * s * s)
    return out if out.ndim else float(out)
