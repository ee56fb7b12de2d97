"""Matrices and vectors over the split-quaternions.

A ``SplitMatrix`` stores its entries as an ``(n, n, 4)`` float array of
components over ``(1, i, j, k)``. Spectra are computed from the ``2n x 2n``
complex embedding, whose eigenvalues come in degenerate pairs; one member of
each pair is kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    SplitQuaternion,
    _STRUCT,
    sq_complex_rep_arrays,
    sq_conj_arrays,
    sq_conj_i_arrays,
    sq_from_complex_column,
    sq_norm_sq_arrays,
)
from .errors import DimensionError, DomainError, NumericalError

GENERAL = "general"
SPLIT_COMPLEX = "split-complex"
SPLIT_HERMITIAN = "split-hermitian"
SPLIT_COMPLEX_HERMITIAN = "split-complex-hermitian"
KINDS = (GENERAL, SPLIT_COMPLEX, SPLIT_HERMITIAN, SPLIT_COMPLEX_HERMITIAN)
HERMITIAN_KINDS = (SPLIT_HERMITIAN, SPLIT_COMPLEX_HERMITIAN)

# Faddeev-LeVerrier is used up to this n (embedding size 2n).
FL_MAX_N = 8
IMAG_DROP_TOL = 1e-9
PAIRING_TOL = 1e-6
REAL_CLASS_TOL = 1e-8


def _hermitian_defect(entries):
    adj = sq_conj_arrays(np.swapaxes(entries, -3, -2))
    return float(np.max(np.abs(entries - adj))) if entries.size else 0.0


def classify_kind(entries, tol=0.0):
    entries = np.asarray(entries, dtype=float)
    scale = max(1.0, float(np.max(np.abs(entries)))) if entries.size else 1.0
    is_sc = bool(np.all(np.abs(entries[..., [1, 3]]) <= tol * scale))
    is_herm = _hermitian_defect(entries) <= tol * scale
    if is_herm:
        return SPLIT_COMPLEX_HERMITIAN if is_sc else SPLIT_HERMITIAN
    return SPLIT_COMPLEX if is_sc else GENERAL


class SplitMatrix:
    """Immutable ``n x n`` split-quaternionic matrix.

    ``kind`` is inferred when omitted. An explicit kind is validated against
    the entries at relative tolerance ``tol``.
    """

    def __init__(self, entries, kind=None, tol=1e-12):
        arr = np.array(entries, dtype=float)
        if arr.ndim == 2:
            # plain real matrix
            arr = np.concatenate([arr[..., None], np.zeros(arr.shape + (3,))], axis=-1)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise DimensionError(f"expected (n, n, 4) components, got {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionError("n must be positive")
        if kind is None:
            kind = classify_kind(arr, tol)
        elif kind not in KINDS:
            raise DomainError(f"unknown kind {kind!r}")
        else:
            actual = classify_kind(arr, tol)
            compatible = {
                GENERAL: KINDS,
                SPLIT_COMPLEX: (SPLIT_COMPLEX, SPLIT_COMPLEX_HERMITIAN),
                SPLIT_HERMITIAN: HERMITIAN_KINDS,
                SPLIT_COMPLEX_HERMITIAN: (SPLIT_COMPLEX_HERMITIAN,),
            }[kind]
            if actual not in compatible:
                raise DomainError(f"entries are {actual}, not {kind}")
        arr.flags.writeable = False
        self.entries = arr
        self.kind = kind

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def is_hermitian(self):
        return self.kind in HERMITIAN_KINDS

    def __getitem__(self, idx):
        return SplitQuaternion.from_array(self.entries[idx])

    def __matmul__(self, other):
        if isinstance(other, SplitVector):
            return matvec(self, other)
        return SplitMatrix(matmul_arrays(self.entries, other.entries))

    def __add__(self, other):
        return SplitMatrix(self.entries + other.entries)

    def __sub__(self, other):
        return SplitMatrix(self.entries - other.entries)

    def __repr__(self):
        return f"SplitMatrix(n={self.n}, kind={self.kind!r})"

    @classmethod
    def from_complex(cls, a):
        """Embed a complex matrix as split-quaternions with ``p2 = p3 = 0``."""
        a = np.asarray(a, dtype=complex)
        comps = np.zeros(a.shape + (4,))
        comps[..., 0] = a.real
        comps[..., 1] = a.imag
        return cls(comps)

    @classmethod
    def split_complex(cls, x, y):
        """Build ``X + j Y`` from real matrices."""
        x = np.asarray(x, dtype=float)
        comps = np.zeros(x.shape + (4,))
        comps[..., 0] = x
        comps[..., 2] = y
        return cls(comps)


@dataclass(frozen=True)
class SplitVector:
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.components, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise DimensionError(f"expected (n, 4) components, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "components", arr)

    def __len__(self):
        return self.components.shape[0]

    def __getitem__(self, idx):
        return SplitQuaternion.from_array(self.components[idx])


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a split-Hermitian matrix, one per degenerate pair.

    ``complex_pairs`` holds ``(re, im)`` with ``im > 0``; each entry stands
    for both ``re + i im`` and its conjugate.
    """

    real_eigs: tuple
    complex_pairs: tuple

    @property
    def n(self):
        return len(self.real_eigs) + 2 * len(self.complex_pairs)

    @property
    def all_real(self):
        return not self.complex_pairs

    def eigenvalues(self):
        """Real eigenvalues ascending, then each pair as ``(λ, conj(λ))``."""
        vals = [complex(r, 0.0) for r in sorted(self.real_eigs)]
        for re, im in sorted(self.complex_pairs):
            vals.extend([complex(re, im), complex(re, -im)])
        return np.array(vals, dtype=complex)


# -- products -----------------------------------------------------------------


def matmul_arrays(a, b):
    return np.einsum("...mla,...lkb,abc->...mkc", a, b, _STRUCT)


def matvec(m: SplitMatrix, v: SplitVector) -> SplitVector:
    if len(v) != m.n:
        raise DimensionError(f"matrix is {m.n}x{m.n}, vector has length {len(v)}")
    return SplitVector(np.einsum("mla,lb,abc->mc", m.entries, v.components, _STRUCT))


def right_scale(v: SplitVector, s) -> SplitVector:
    """``v s`` for a scalar split-quaternion (or real) ``s`` acting on the right."""
    s_arr = np.asarray(s.as_array() if isinstance(s, SplitQuaternion) else [s, 0, 0, 0], float)
    return SplitVector(np.einsum("la,b,abc->lc", v.components, s_arr, _STRUCT))


def adjoint(m: SplitMatrix) -> SplitMatrix:
    return SplitMatrix(sq_conj_arrays(np.swapaxes(m.entries, 0, 1)))


def adjoint_i(m: SplitMatrix) -> SplitMatrix:
    return SplitMatrix(sq_conj_i_arrays(np.swapaxes(m.entries, 0, 1)))


def is_split_hermitian(m: SplitMatrix, tol: float = 0.0) -> bool:
    if tol < 0:
        raise DomainError("tol must be non-negative")
    return _hermitian_defect(m.entries) <= tol


def inner_product(u: SplitVector, v: SplitVector) -> SplitQuaternion:
    """``sum_n conj(u_n) v_n``."""
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    prod = np.einsum("la,lb,abc->c", sq_conj_arrays(u.components), v.components, _STRUCT)
    return SplitQuaternion.from_array(prod)


# -- complex embedding and characteristic polynomial -------------------------


def complex_rep_arrays(entries):
    """``(..., n, n, 4)`` entries to ``(..., 2n, 2n)`` block embeddings."""
    blocks = sq_complex_rep_arrays(entries)  # (..., n, n, 2, 2)
    n = blocks.shape[-3]
    out = np.swapaxes(blocks, -3, -2)  # (..., n, 2, n, 2)
    return out.reshape(blocks.shape[:-4] + (2 * n, 2 * n))


def complex_rep(m: SplitMatrix) -> np.ndarray:
    return complex_rep_arrays(m.entries)


def faddeev_leverrier(a):
    """Monic characteristic polynomial coefficients, highest degree first.

    Works on a single ``(n, n)`` matrix or a stack ``(..., n, n)``.
    """
    a = np.asarray(a)
    n = a.shape[-1]
    dtype = np.result_type(a.dtype, float)
    coeffs = np.zeros(a.shape[:-2] + (n + 1,), dtype=dtype)
    coeffs[..., 0] = 1.0
    eye = np.eye(n, dtype=dtype)
    mk = np.zeros_like(a, dtype=dtype)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[..., k - 1, None, None] * eye
        am = a @ mk
        coeffs[..., k] = -np.trace(am, axis1=-2, axis2=-1) / k
    return coeffs


def poly_sqrt(p):
    """Monic ``q`` of degree ``n`` with ``q**2 = p`` by matching leading coefficients.

    Returns ``(q, defect)`` where ``defect`` is the largest mismatch in the
    trailing coefficients that the matching did not use.
    """
    p = np.asarray(p)
    deg = p.shape[-1] - 1
    if deg % 2:
        raise DomainError("odd-degree polynomial has no polynomial square root")
    n = deg // 2
    q = np.zeros(p.shape[:-1] + (n + 1,), dtype=p.dtype)
    q[..., 0] = 1.0
    for k in range(1, n + 1):
        acc = sum(q[..., i] * q[..., k - i] for i in range(1, k))
        q[..., k] = (p[..., k] - acc) / 2.0
    sq = np.zeros_like(p)
    for i in range(n + 1):
        sq[..., i : i + n + 1] += q[..., i, None] * q
    return q, np.max(np.abs(sq - p), axis=-1)


def _coeff_scale(emb):
    s = max(1.0, float(np.linalg.norm(emb)))
    return s ** np.arange(emb.shape[-1] + 1)


def embedding_char_poly(m: SplitMatrix) -> np.ndarray:
    emb = complex_rep(m)
    if m.n <= FL_MAX_N:
        return faddeev_leverrier(emb)
    return np.poly(np.linalg.eigvals(emb))


def reduced_char_poly(m: SplitMatrix) -> np.ndarray:
    """Real monic ``q`` of degree ``n`` whose square is the embedding's characteristic polynomial."""
    if not m.is_hermitian:
        raise DomainError("reduced_char_poly requires a split-Hermitian matrix")
    emb = complex_rep(m)
    p = embedding_char_poly(m)
    scale = _coeff_scale(emb)
    imag_rel = np.abs(p.imag) / scale
    if np.max(imag_rel) > IMAG_DROP_TOL:
        raise NumericalError(f"characteristic polynomial not real: {np.max(imag_rel):.3e}")
    q, defect = poly_sqrt(p.real)
    if defect > 1e-8 * scale[-1]:
        raise NumericalError(f"characteristic polynomial is not a perfect square: {defect:.3e}")
    return q


# -- spectra --------------------------------------------------------------------


def pair_degenerate(eigs, tol=PAIRING_TOL):
    """Greedy nearest-neighbour pairing of a doubly degenerate eigenvalue list.

    Returns ``(representatives, max_pair_distance)``; raises if any pair is
    further apart than ``tol`` times the spectral radius.
    """
    eigs = np.asarray(eigs, dtype=complex)
    order = np.lexsort((eigs.imag, eigs.real))
    remaining = list(eigs[order])
    radius = max(float(np.max(np.abs(eigs))), np.finfo(float).tiny) if eigs.size else 1.0
    reps, worst = [], 0.0
    while remaining:
        first = remaining.pop(0)
        if not remaining:
            raise NumericalError("odd number of eigenvalues, cannot pair")
        dists = np.abs(np.array(remaining) - first)
        j = int(np.argmin(dists))
        partner = remaining.pop(j)
        worst = max(worst, float(dists[j]))
        reps.append((first + partner) / 2)
    if worst > tol * radius:
        raise NumericalError(f"degeneracy pairing failed: distance {worst:.3e}, radius {radius:.3e}")
    return np.array(reps), worst / radius


def pairing_defects(eigs):
    """Relative Kramers-pair splitting for a stack ``(batch, 2n)`` of embedding eigenvalues.

    Adjacent pairs after a lexicographic sort are tried first; rows where that
    looks wrong fall back to the greedy pairing of ``pair_degenerate``.
    """
    eigs = np.asarray(eigs, dtype=complex)
    order = np.lexsort((eigs.imag, eigs.real), axis=-1)
    srt = np.take_along_axis(eigs, order, axis=-1)
    radius = np.maximum(np.max(np.abs(eigs), axis=-1), np.finfo(float).tiny)
    adj = np.max(np.abs(srt[:, 0::2] - srt[:, 1::2]), axis=-1) / radius
    out = adj.copy()
    for i in np.nonzero(adj > 1e-10)[0]:
        try:
            out[i] = min(adj[i], pair_degenerate(eigs[i], tol=np.inf)[1])
        except NumericalError:
            pass
    return out


def classify_roots(roots, tol=REAL_CLASS_TOL) -> Spectrum:
    """Split roots of a real polynomial into real values and conjugate pairs."""
    roots = np.asarray(roots, dtype=complex)
    is_real = np.abs(roots.imag) <= tol * (1.0 + np.abs(roots))
    real = sorted(float(r) for r in roots[is_real].real)
    upper = sorted(roots[~is_real & (roots.imag > 0)], key=lambda z: (z.real, z.imag))
    lower = list(roots[~is_real & (roots.imag < 0)])
    if len(upper) != len(lower):
        raise NumericalError("complex eigenvalues do not close under conjugation")
    pairs = []
    for z in upper:
        j = int(np.argmin([abs(z - w.conjugate()) for w in lower]))
        w = lower.pop(j)
        pairs.append(((z.real + w.real) / 2, (z.imag - w.imag) / 2))
    return Spectrum(tuple(real), tuple(pairs))


def spectrum_2x2(entries):
    """Midpoint and discriminant of the reduced polynomial for ``(..., 2, 2, 4)`` stacks.

    Eigenvalues are ``mid +- sqrt(disc)``; the spectrum is real iff ``disc >= 0``.
    """
    entries = np.asarray(entries)
    a = entries[..., 0, 0, 0]
    b = entries[..., 1, 1, 0]
    h = entries[..., 1, 0, :]
    mid = (a + b) / 2
    disc = ((a - b) / 2) ** 2 + sq_norm_sq_arrays(h)
    return mid, disc


def spectrum(m: SplitMatrix, tol=REAL_CLASS_TOL) -> Spectrum:
    if not m.is_hermitian:
        raise DomainError("spectrum requires a split-Hermitian matrix")
    if m.n == 1:
        return Spectrum((float(m.entries[0, 0, 0]),), ())
    if m.n == 2:
        mid, disc = spectrum_2x2(m.entries)
        mid, disc = float(mid), float(disc)
        if disc >= 0:
            r = math.sqrt(disc)
            return Spectrum((mid - r, mid + r), ())
        return Spectrum((), ((mid, math.sqrt(-disc)),))
    reps, _ = pair_degenerate(np.linalg.eigvals(complex_rep(m)))
    return classify_roots(reps, tol)


def eigenvector_reconstruct(m: SplitMatrix, lam: float, tol=1e-8) -> SplitVector:
    """Split-quaternionic eigenvector for a real eigenvalue ``lam``.

    Taken from the null space of ``rep(M) - lam`` and mapped back through the
    first column of the 2x2 representation. The map commutes with right
    multiplication by real scalars, so ``M u = lam u`` holds exactly in exact
    arithmetic.
    """
    if not m.is_hermitian:
        raise DomainError("eigenvector_reconstruct requires a split-Hermitian matrix")
    emb = complex_rep(m)
    norm = max(float(np.linalg.norm(emb, 2)), np.finfo(float).tiny)
    _, sv, vh = np.linalg.svd(emb - lam * np.eye(2 * m.n))
    if sv[-1] > tol * norm:
        raise DomainError(f"{lam!r} is not an eigenvalue (sigma_min={sv[-1]:.3e})")
    if m.n > 1 and sv[-3] <= tol * norm:
        raise NumericalError(f"eigenvalue {lam!r} is degenerate beyond the Kramers pair")
    w = vh[-1].conj()
    u = SplitVector(sq_from_complex_column(w[0::2], w[1::2]))
    resid = matvec(m, u).components - lam * u.components
    if np.max(np.abs(resid)) > tol * norm:
        raise NumericalError(f"eigenvector residual {np.max(np.abs(resid)):.3e}")
    return u
