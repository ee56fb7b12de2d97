"""PT-symmetry of complex matrices: reality of the characteristic polynomial."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import faddeev_leverrier

FL_MAX_SIZE = 16


@dataclass(frozen=True)
class PTReport:
    is_pt: bool
    max_imag_coeff: float
    coeffs: np.ndarray
    conjugate_closed: bool | None = None
    jacobian_rank: int | None = None


def char_poly_complex(a) -> np.ndarray:
    """Monic characteristic polynomial, highest degree first."""
    a = np.asarray(a, dtype=complex)
    if a.shape[-1] <= FL_MAX_SIZE:
        return faddeev_leverrier(a)
    return np.poly(np.linalg.eigvals(a))


def _relative_imag(a, coeffs):
    s = max(1.0, float(np.linalg.norm(a)))
    scale = s ** np.arange(coeffs.shape[-1])
    return np.max(np.abs(coeffs.imag) / scale, axis=-1)


def _conjugate_closed(eigs, tol):
    eigs = np.asarray(eigs)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    dist = np.abs(eigs[:, None] - np.conj(eigs)[None, :])
    return bool(np.all(np.min(dist, axis=1) <= tol * scale))


def is_pt_symmetric(a, tol=1e-9, with_rank=False) -> PTReport:
    a = np.asarray(a, dtype=complex)
    coeffs = char_poly_complex(a)
    imag = float(_relative_imag(a, coeffs))
    is_pt = imag <= tol
    closed = _conjugate_closed(np.linalg.eigvals(a), 1e-8) if is_pt else None
    rank = pt_jacobian_rank(a) if with_rank else None
    return PTReport(is_pt, imag, coeffs, closed, rank)


def _imag_coeffs(params, n):
    a = params[: n * n].reshape(n, n) + 1j * params[n * n :].reshape(n, n)
    return faddeev_leverrier(a)[1:].imag


def pt_jacobian_rank(a, step=1e-6, rel_cut=1e-6) -> int:
    """Rank of d Im(char-poly coefficients) / d(Re A, Im A) by central differences.

    At a generic point this is n, so the PT-symmetric matrices form a
    manifold of dimension 2 n^2 - n.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    x0 = np.concatenate([a.real.ravel(), a.imag.ravel()])
    jac = np.empty((n, x0.size))
    for p in range(x0.size):
        dx = np.zeros_like(x0)
        dx[p] = step
        jac[:, p] = (_imag_coeffs(x0 + dx, n) - _imag_coeffs(x0 - dx, n)) / (2 * step)
    sv = np.linalg.svd(jac, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_cut * sv[0]))
